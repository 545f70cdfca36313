//! The four fundamental elements (delay, disjunction, conjunction and
//! conjoined negation) compiled from expressions, shown as weights and as
//! truth tables, and verified exhaustively.
//!
//! Run with `cargo run --example fundamental_elements`.

use std::collections::BTreeMap;

use camelot::tpe::{evaluate_expression, History};
use camelot::{parse_expression, synthesize_net, verify_equivalence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in [
        "N2(t) = N1(t-1)",
        "N3(t) = N1(t-1) | N2(t-1)",
        "N3(t) = N1(t-1) . N2(t-1)",
        "N3(t) = N1(t-1) . ~N2(t-1)",
    ] {
        let expr = parse_expression(text)?;
        let s = synthesize_net(&expr)?;
        println!("{expr}");
        for syn in &s.net.synapses {
            println!("  {} -> {}  weight {}", syn.from, syn.to, syn.weight);
        }
        let inputs = expr.inputs();
        for code in 0u32..1 << inputs.len() {
            let histories: BTreeMap<String, History> = inputs
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), History { start: 0, bits: vec![code >> i & 1 == 1] }))
                .collect();
            let fires = evaluate_expression(&expr, &histories, 1)?;
            let row: Vec<String> = inputs.iter().enumerate().map(|(i, n)| format!("{n}={}", code >> i & 1)).collect();
            println!("  {} -> {}={}", row.join(" "), expr.target, fires as u8);
        }
        let verdict = verify_equivalence(&s.net, &expr, 5)?;
        println!("  exhaustive check over 5 steps: {}", if verdict.holds() { "equivalent" } else { "REFUTED" });
    }
    Ok(())
}
