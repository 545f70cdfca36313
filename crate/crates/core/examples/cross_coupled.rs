//! Four two-factor units wired so that each input unit excites its own
//! output unit and inhibits the other one. Units couple through their
//! binary outputs with a one-step lag.
//!
//! Run with `cargo run --example cross_coupled`.

use camelot::numfmt::format_sig;
use camelot::two_factor::{cross_couple_weights, simulate_two_factor_net, ExternalInput, TwoFactorParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let unit = TwoFactorParams::new(2.0, 1.0, 1.0, 1.0, 0.5)?;
    let weights = cross_couple_weights(1.0, 1.0);
    for (d1, d2) in [(1.0, 1.0), (1.0, 0.0), (1.0, 0.6)] {
        let external: Vec<ExternalInput> =
            vec![Box::new(move |_| d1), Box::new(move |_| d2), Box::new(|_| 0.0), Box::new(|_| 0.0)];
        let traces = simulate_two_factor_net(&[unit; 4], &weights, &external, 1e-3, 5.0)?;
        println!("drive ({d1}, {d2}):");
        for (name, tr) in ["input 1", "input 2", "output 1", "output 2"].iter().zip(&traces) {
            let s = tr.last();
            let first = tr.samples.iter().find(|s| s.fires).map(|s| format_sig(s.t));
            println!(
                "  {name:<8} e={:<11} j={:<11} output={} first firing at {}",
                format_sig(s.excitation),
                format_sig(s.inhibition),
                s.fires as u8,
                first.unwrap_or_else(|| "never".into())
            );
        }
    }
    Ok(())
}
