//! The two-factor neuron: a constant input against the closed form, then a
//! train of pulses in two regimes, printing the peak of `e - j` per pulse.
//!
//! Run with `cargo run --example two_factor_pulses`.

use camelot::numfmt::format_sig;
use camelot::two_factor::{closed_form_constant_input, integrate, pulse_train_response, PulseTrain, TwoFactorParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = TwoFactorParams::new(2.0, 1.0, 1.0, 1.0, 0.5)?;
    let trace = integrate(&params, |_| 1.0, 1e-3, 3.0)?;
    println!("constant input 1, dt=1e-3");
    for s in trace.samples.iter().step_by(500) {
        let exact = closed_form_constant_input(&params, 1.0, s.t);
        println!(
            "  t={:<4} e={:<12} j={:<12} output={}  |e-exact|={:.1e}",
            format_sig(s.t),
            format_sig(s.excitation),
            format_sig(s.inhibition),
            s.fires as u8,
            (s.excitation - exact.excitation).abs()
        );
    }

    let train = PulseTrain::new(1.0, 0.1, 0.5, 5)?;
    let peaks = pulse_train_response(&params, &train, 1e-3)?;
    println!("\npulses with equal decay rates: {:?}", peaks.iter().map(|p| format_sig(*p)).collect::<Vec<_>>());

    // Slow-decaying, strong inhibition builds up across pulses.
    let sustained = TwoFactorParams::new(2.0, 2.0, 1.5, 0.5, 0.0)?;
    let peaks = pulse_train_response(&sustained, &train, 1e-3)?;
    println!("pulses with lingering inhibition: {:?}", peaks.iter().map(|p| format_sig(*p)).collect::<Vec<_>>());
    Ok(())
}
