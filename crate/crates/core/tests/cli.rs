//! The `camelot` binary: outputs, determinism and exit statuses.

mod support;

use support::{cli_fixture, run_cli, CliRun};

fn ok(run: &CliRun) -> &CliRun {
    assert_eq!(run.status, 0, "stdout:\n{}\nstderr:\n{}", run.stdout, run.stderr);
    run
}

#[test]
fn validate_reports_and_sets_status() {
    let dir = cli_fixture();
    let d = dir.path();
    assert!(ok(&run_cli(&["validate", "--net", "net.json"], d, None)).stdout.contains("valid: 0 errors"));
    let bad = run_cli(&["validate", "--net", "self.json"], d, None);
    assert_eq!(bad.status, 1);
    assert!(bad.stdout.contains("self-synapse m -> m"), "{}", bad.stdout);
    let broken = run_cli(&["validate", "--net", "broken.json"], d, None);
    assert_eq!(broken.status, 2);
    assert!(broken.stderr.contains("line 3"), "{}", broken.stderr);
    assert_eq!(run_cli(&["validate", "--net", "missing.json"], d, None).status, 2);
}

#[test]
fn simulate_writes_the_worked_trace() {
    let dir = cli_fixture();
    let d = dir.path();
    let first = ok(&run_cli(&["simulate-mcp", "--scenario", "scenario.json"], d, None)).clone();
    assert_eq!(first.stdout, "t=0 3=1 4=0\n");
    let grid = std::fs::read_to_string(d.join("trace.csv")).unwrap();
    assert_eq!(grid, "t,1,2,a,b,3,4\n-3,0,1,0,0,0,0\n-2,0,0,1,0,0,0\n-1,0,0,0,1,0,0\n0,0,0,0,0,1,0\n");
    assert_eq!(run_cli(&["simulate-mcp", "--scenario", "scenario.json"], d, None), first);
    assert_eq!(std::fs::read_to_string(d.join("trace.csv")).unwrap(), grid);

    let silent = ok(&run_cli(&["simulate-mcp", "--net", "net.json", "--stimulus", "silent.csv", "--horizon", "4"], d, None)).clone();
    assert!(silent.stdout.lines().skip(1).all(|l| l.split(',').skip(1).all(|c| c == "0")));

    let double = ok(&run_cli(&["simulate-mcp", "--net", "net.json", "--stimulus", "double.csv", "--horizon", "4"], d, None)).clone();
    assert!(double.stdout.ends_with("0,0,0,1,0,0,1\n1,0,0,0,1,0,0\n2,0,0,0,0,1,0\n"), "{}", double.stdout);

    assert_eq!(run_cli(&["simulate-mcp", "--net", "net.json", "--stimulus", "nope.csv", "--horizon", "3"], d, None).status, 2);
    assert_eq!(run_cli(&["simulate-mcp", "--net", "self.json", "--stimulus", "single.csv", "--horizon", "3"], d, None).status, 1);
    assert_eq!(run_cli(&["simulate-mcp", "--net", "net.json", "--stimulus", "single.csv"], d, None).status, 2);
}

#[test]
fn export_grid_selects_and_round_trips_stimulus_columns() {
    let dir = cli_fixture();
    let d = dir.path();
    let full = ok(&run_cli(&["export-grid", "--net", "net.json", "--stimulus", "single.csv", "--horizon", "3"], d, None)).clone();
    assert_eq!(full.stdout.lines().count(), 5);
    let receptors = ok(&run_cli(
        &["export-grid", "--net", "net.json", "--stimulus", "double.csv", "--horizon", "1", "--select", "1,2", "--out", "stim.csv"],
        d,
        None,
    ))
    .clone();
    assert!(receptors.stdout.starts_with("t=-1"));
    assert_eq!(std::fs::read_to_string(d.join("stim.csv")).unwrap(), "t,1,2\n-2,0,1\n-1,0,1\n");
    // Feeding the exported columns back in reproduces the run.
    let again = run_cli(&["export-grid", "--net", "net.json", "--stimulus", "stim.csv", "--horizon", "4"], d, None);
    let original = run_cli(&["export-grid", "--net", "net.json", "--stimulus", "double.csv", "--horizon", "4"], d, None);
    assert_eq!(ok(&again).stdout, original.stdout);

    let empty = run_cli(&["export-grid", "--net", "net.json", "--stimulus", "single.csv", "--horizon", "0"], d, None);
    assert_eq!(empty.status, 2);
    assert!(empty.stderr.contains("horizon"));
    assert_eq!(
        run_cli(&["export-grid", "--net", "net.json", "--stimulus", "single.csv", "--horizon", "2", "--select", "zz"], d, None).status,
        2
    );
}

#[test]
fn synthesize_then_verify_and_catch_tampering() {
    let dir = cli_fixture();
    let d = dir.path();
    let expr = "N3(t) = N1(t-1) | N2(t-1)";
    let made = ok(&run_cli(&["synthesize", expr, "--out", "or.json"], d, None)).clone();
    assert_eq!(made.stdout, "neurons=3 relays=0 output_shift=0 output_latency=1\n");
    let verified = run_cli(&["verify", "--net", "or.json", "--expr", expr, "--horizon", "5"], d, None);
    assert!(ok(&verified).stdout.starts_with("equivalent"));

    let text = std::fs::read_to_string(d.join("or.json")).unwrap();
    let tampered = text.replacen("\"weight\": \"1\"", "\"weight\": \"1/2\"", 1);
    assert_ne!(tampered, text);
    std::fs::write(d.join("tampered.json"), tampered).unwrap();
    let refuted = run_cli(&["verify", "--net", "tampered.json", "--expr", expr, "--horizon", "5"], d, None);
    assert_eq!(refuted.status, 1);
    assert!(refuted.stdout.contains("not equivalent: inputs"), "{}", refuted.stdout);

    let bad = run_cli(&["synthesize", "N3(t) = N1(t-1) ."], d, None);
    assert_eq!(bad.status, 2);
    assert!(bad.stderr.contains("cannot parse expression"));
    assert_eq!(run_cli(&["verify", "--net", "net.json", "--expr", expr], d, None).status, 1);
    assert_eq!(run_cli(&["verify", "--net", "or.json", "--expr", "N3(t) = ~N1(t-1)"], d, None).status, 2);
}

#[test]
fn two_factor_prints_nine_significant_digits() {
    let dir = cli_fixture();
    let d = dir.path();
    let run = ok(&run_cli(&["two-factor", "--out", "tf.csv"], d, None)).clone();
    assert!(run.stdout.starts_with("t=1 e=1.26424112 j=0.632120559 output=1\n"), "{}", run.stdout);
    let csv = std::fs::read_to_string(d.join("tf.csv")).unwrap();
    assert!(csv.starts_with("t,e,j,output\n0,0,0,0\n"));
    assert_eq!(csv.lines().count(), 1002);

    let pulses = ok(&run_cli(&["two-factor", "--amplitude", "1", "--width", "0.1", "--interval", "0.5", "--count", "5", "--out", "p.csv"], d, None)).clone();
    assert_eq!(pulses.stdout.lines().filter(|l| l.starts_with("pulse ")).count(), 5);
    let cross = ok(&run_cli(&["two-factor", "--cross-couple", "--until", "2", "--out", "x.csv"], d, None)).clone();
    assert_eq!(cross.stdout.lines().count(), 4);
    assert!(std::fs::read_to_string(d.join("x.csv")).unwrap().starts_with("t,e_1,j_1,output_1,e_2"));

    assert_eq!(run_cli(&["two-factor", "--inh-decay", "-1"], d, None).status, 2);
    assert_eq!(run_cli(&["two-factor", "--amplitude", "1"], d, None).status, 2);
    assert_eq!(run_cli(&["two-factor", "--amplitude", "1", "--width", "1", "--interval", "0.5", "--count", "2"], d, None).status, 2);
}

#[test]
fn pitts_emits_the_matrix_grid() {
    let dir = cli_fixture();
    let d = dir.path();
    let run = ok(&run_cli(&["pitts", "--sigma", "1,1", "--activity", "1/2,1/2", "--initial", "1,0", "--columns", "4"], d, None)).clone();
    assert_eq!(run.stdout, "synapse,1,2,3,4\n1,1,1,1.75,1.75\n2,0,1.5,1.5,1.875\n");
    let long = ok(&run_cli(&["pitts", "--sigma", "1,1", "--activity", "0.5,0.5", "--initial", "1,0", "--columns", "80", "--out", "e.csv"], d, None)).clone();
    assert!(long.stdout.contains("steady-state from interval"), "{}", long.stdout);
    assert!(long.stdout.contains("row 1 limit=2\n"));
    let t = ok(&run_cli(&["pitts", "--sigma", "1,1", "--activity", "1/2,1/2", "--initial", "1,0", "--columns", "2", "--transpose"], d, None)).clone();
    assert_eq!(t.stdout, "interval,s1,s2\n1,1,0\n2,1,1.5\n");
    assert_eq!(run_cli(&["pitts", "--sigma", "1", "--activity", "1"], d, None).status, 2);
    assert_eq!(run_cli(&["pitts", "--sigma", "1,x", "--activity", "1,1"], d, None).status, 2);
}

#[test]
fn analyze_and_prob_outputs() {
    let dir = cli_fixture();
    let d = dir.path();
    assert_eq!(ok(&run_cli(&["analyze", "(1/2,1/2)"], d, None)).stdout, "gamma=1/4 unique=true complete=impossible\n");
    assert_eq!(ok(&run_cli(&["analyze", "(-2,3)"], d, None)).stdout, "gamma=-6 unique=true complete=impossible\n");
    assert_eq!(run_cli(&["analyze", "(0,1)"], d, None).status, 2);

    let args = ["prob", "--expr", "N3(t) = N1(t-1) | N2(t-1)", "--p", "N1=1/2,N2=0.5", "--trials", "20000"];
    let a = ok(&run_cli(&args, d, Some("7"))).clone();
    assert!(a.stdout.contains("paper-sum: min(1, p(N1) + p(N2)) = 1\n"));
    assert!(a.stdout.contains("independent: (1 - (1 - p(N1)) * (1 - p(N2))) = 0.75\n"));
    assert!(a.stdout.contains("seed 7"));
    assert_eq!(run_cli(&args, d, Some("7")), a);
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "7"]);
    assert_eq!(run_cli(&seeded, d, None), a);
    assert!(run_cli(&args, d, None).stdout.contains("seed 1943"));
    assert_eq!(run_cli(&["prob", "--expr", "N3(t) = N1(t-1)", "--p", "N1=2"], d, None).status, 2);
    assert_eq!(run_cli(&["prob", "--expr", "N3(t) = N1(t-1)", "--p", "N9=0.5"], d, None).status, 2);
}
