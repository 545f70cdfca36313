//! Circuit-parameter predicates for circuits of excitatory and inhibitory
//! fibers: uniqueness of the steady state, whether complete activity is
//! possible, and the multi-pattern condition for circuits sharing a synapse.
//!
//! Run with `cargo run --example circuit_predicates`.

use camelot::analysis::{
    circuit_parameter, complete_activity_class, rosette_multi_pattern_possible, uniqueness_guaranteed, FiberCircuit,
};
use camelot::numfmt::rational_string;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["(1/2, 1/2)", "(-2, 3)", "(-2, -3)", "(2, 3)", "(1/4)", "(2, 1/2)"] {
        let c = FiberCircuit::parse(text)?;
        println!(
            "{c:<12} gamma={:<5} inhibitory fibers={} unique={:<5} complete={}",
            rational_string(&circuit_parameter(&c)),
            c.inhibitory_count(),
            uniqueness_guaranteed(&c),
            complete_activity_class(&c)
        );
    }

    for group in [vec!["(3/2)"], vec!["(0.4)", "(0.3)"], vec!["(0.6)", "(0.5)"], vec!["(-2)", "(1/2)", "(1/2)"]] {
        let circuits = group.iter().map(|t| FiberCircuit::parse(t)).collect::<Result<Vec<_>, _>>()?;
        println!("rosette {:<20} several patterns possible: {}", group.join(" "), rosette_multi_pattern_possible(&circuits)?);
    }
    Ok(())
}
