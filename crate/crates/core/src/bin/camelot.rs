fn main() {
    std::process::exit(camelot::cli::run());
}
