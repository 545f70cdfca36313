//! Compiling a compound expression with unequal delays, writing the net
//! file, and catching a tampered synapse with a counterexample.
//!
//! Run with `cargo run --example expression_compiler`.

use camelot::tpe::Equivalence;
use camelot::{parse_expression, synthesize_net, verify_equivalence, Weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let expr = parse_expression("N3(t) = N1(t-1) | N2(t-3) . ~N2(t-2)")?;
    let s = synthesize_net(&expr)?;
    println!("{expr}");
    println!(
        "{} neurons, {} relays, output shift {}, latency {}",
        s.net.neurons.len(),
        s.relay_count,
        s.output_shift,
        s.output_latency
    );
    print!("{}", s.net.to_json());
    println!("faithful net: {:?}", verify_equivalence(&s.net, &expr, 6)?);

    let mut tampered = s.net.clone();
    // Halving the direct N1 -> N3 synapse leaves N1 alone below threshold.
    let syn = tampered.synapses.iter_mut().find(|x| x.from == "N1" && x.to == "N3").expect("direct synapse");
    syn.weight = Weight::new(1, 2);
    match verify_equivalence(&tampered, &expr, 6)? {
        Equivalence::Holds => println!("tampered net still equivalent"),
        Equivalence::Refuted(cx) => println!("tampered net: {cx}"),
    }

    for bad in ["N3(t) = ~N1(t-1)", "N3(t) = N1(t)", "N3(t) = N1(t-1) |"] {
        println!("{bad:<22} -> {}", parse_expression(bad).unwrap_err());
    }
    Ok(())
}
