//! The six-neuron worked example: three stimulus scenarios run through the
//! matrix recursion, printed state by state, then checked against the split
//! internal/effector recursion.
//!
//! Run with `cargo run --example worked_example`.

use camelot::net::worked_example_net;
use camelot::{build_structure_matrix, partition_blocks, run, run_split, StimulusSequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = worked_example_net();
    let f = build_structure_matrix(&net)?;
    println!("neurons in matrix order: {:?}", f.names());
    println!("structure matrix:");
    for (name, row) in f.names().iter().zip(0..f.n()) {
        let cells: Vec<String> = f.row(row).iter().map(|w| format!("{w:>4}")).collect();
        println!("  {name:>2} | {}", cells.join(" "));
    }
    let blocks = partition_blocks(&f);
    println!(
        "blocks: receptor->internal {}x{}, internal->internal {}x{}",
        blocks.receptor_internal.rows.len(),
        blocks.receptor_internal.cols.len(),
        blocks.internal_internal.rows.len(),
        blocks.internal_internal.cols.len()
    );

    let scenarios = [
        ("neuron 2 fires once at t=-3", StimulusSequence::new(-3, vec![vec![false, true]])?, 3),
        ("neuron 1 fires once at t=-1", StimulusSequence::new(-1, vec![vec![true, false]])?, 1),
        ("neuron 2 fires at t=-2 and t=-1", StimulusSequence::new(-2, vec![vec![false, true], vec![false, true]])?, 4),
    ];
    for (label, stim, horizon) in scenarios {
        println!("\n{label}");
        let trace = run(&net, &stim, &[false, false], horizon)?;
        for (t, a) in trace.times().zip(&trace.states) {
            println!("  a({t:>2}) = {a}");
        }
        let split = run_split(&net, &stim, &[false, false], horizon)?;
        assert_eq!(split.internal, trace.internal_trace());
        assert_eq!(split.effector, trace.effector_trace());
        println!("  split recursion agrees on every internal and effector bit");
    }
    Ok(())
}
