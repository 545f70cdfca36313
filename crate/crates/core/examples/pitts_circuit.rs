//! The excitation matrix of a two-synapse circuit: the first columns, the
//! steady state, the per-row limits, and the independence of diagonals.
//!
//! Run with `cargo run --example pitts_circuit`.

use camelot::grid::excitation_csv;
use camelot::numfmt::format_sig;
use camelot::pitts::{
    detect_steady_state, diagonal_fixed_point, diagonal_from_seed, extract_diagonal, run_excitation, SimpleCircuit,
    DEFAULT_TOLERANCE,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let circuit = SimpleCircuit::new(vec![1.0, 1.0], vec![0.5, 0.5])?;
    let e = run_excitation(&circuit, &[1.0, 0.0], 80)?;
    println!("first six columns:");
    print!("{}", excitation_csv(&run_excitation(&circuit, &[1.0, 0.0], 6)?, false));

    match detect_steady_state(&e, DEFAULT_TOLERANCE) {
        Some(s) => println!("columns repeat with period 2 from interval {s}"),
        None => println!("no steady state within {} columns", e.column_count()),
    }
    for row in 1..=circuit.len() {
        let limit = diagonal_fixed_point(&circuit, row).expect("|a1 a2| < 1");
        println!("row {row}: last entry {}, limit {}", format_sig(e.get(row, 80)), format_sig(limit));
    }

    for start in 1..=circuit.len() {
        let from_matrix = extract_diagonal(&e, start)?;
        let alone = diagonal_from_seed(&circuit, start, e.get(start, 1), from_matrix.len())?;
        println!(
            "diagonal from row {start}: {} ... recomputed alone: {}",
            from_matrix.iter().take(4).map(|v| format_sig(*v)).collect::<Vec<_>>().join(", "),
            if alone == from_matrix { "identical" } else { "DIFFERENT" }
        );
    }

    let divergent = SimpleCircuit::new(vec![1.0, 1.0], vec![1.0, 1.0])?;
    let e = run_excitation(&divergent, &[1.0, 1.0], 200)?;
    println!(
        "with a1 a2 = 1 entries grow to {} and the steady state is {:?}",
        format_sig(e.get(1, 200)),
        detect_steady_state(&e, DEFAULT_TOLERANCE)
    );
    Ok(())
}
