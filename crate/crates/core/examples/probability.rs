//! Logical expressions turned into firing probabilities under both readings
//! of the disjunction, compared with a seeded Monte-Carlo simulation.
//!
//! Run with `cargo run --release --example probability`.

use std::collections::BTreeMap;

use camelot::analysis::{monte_carlo_firing_rate, to_probability_formula, DisjunctionMode};
use camelot::numfmt::format_sig;
use camelot::parse_expression;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: BTreeMap<String, f64> = [("N1", 0.5), ("N2", 0.5)].into_iter().map(|(n, v)| (n.to_string(), v)).collect();
    for text in [
        "N3(t) = N1(t-1) . N2(t-1)",
        "N3(t) = N1(t-1) . ~N2(t-1)",
        "N3(t) = N1(t-1) | N2(t-1)",
        "N3(t) = N1(t-1) | N2(t-3) . ~N2(t-2)",
    ] {
        let expr = parse_expression(text)?;
        println!("{expr}");
        for mode in [DisjunctionMode::PaperSum, DisjunctionMode::Independent] {
            let f = to_probability_formula(&expr, mode);
            println!("  {mode:<11} {f} = {}", format_sig(f.eval(&p)?));
        }
        println!("  simulated   {}", monte_carlo_firing_rate(&expr, &p, 100_000, 1943)?);
    }
    Ok(())
}
