//! The continuous two-factor neuron.
//!
//! An input `I(t)` drives an excitation factor `e` and an inhibition factor
//! `j` through two linear equations,
//!
//! ```text
//! de/dt = A·I(t) - a·e
//! dj/dt = B·I(t) - b·j
//! ```
//!
//! and the neuron fires while `e - j` exceeds the threshold `θ` (strictly).
//! Integration is classical fourth-order Runge-Kutta on a fixed grid; the
//! input is held constant across each step at its value at the step's start,
//! so piecewise-constant inputs with edges on the grid are integrated without
//! any sampling error.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwoFactorError {
    #[error("{0} must be finite")]
    NonFinite(&'static str),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("{0} must be non-negative")]
    Negative(&'static str),
    #[error("input is not finite at t={0}")]
    NonFiniteInput(f64),
    #[error("{what}: expected {expected}, found {found}")]
    Dimension { what: &'static str, expected: usize, found: usize },
    #[error("self-coupling on unit {0}")]
    SelfCoupling(usize),
    #[error("pulse width must be shorter than the inter-pulse interval")]
    PulseOverlap,
}

/// Coefficients of one two-factor unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoFactorParams {
    /// Excitation gained per unit input per unit time.
    pub excitation_gain: f64,
    /// Decay rate of excitation (per unit time).
    pub excitation_decay: f64,
    pub inhibition_gain: f64,
    pub inhibition_decay: f64,
    pub threshold: f64,
}

impl TwoFactorParams {
    pub fn new(
        excitation_gain: f64,
        excitation_decay: f64,
        inhibition_gain: f64,
        inhibition_decay: f64,
        threshold: f64,
    ) -> Result<Self, TwoFactorError> {
        let p = Self { excitation_gain, excitation_decay, inhibition_gain, inhibition_decay, threshold };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), TwoFactorError> {
        let fields = [
            ("excitation gain", self.excitation_gain),
            ("excitation decay", self.excitation_decay),
            ("inhibition gain", self.inhibition_gain),
            ("inhibition decay", self.inhibition_decay),
            ("threshold", self.threshold),
        ];
        if let Some((name, _)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(TwoFactorError::NonFinite(name));
        }
        if self.excitation_decay <= 0.0 {
            return Err(TwoFactorError::NonPositive("excitation decay"));
        }
        if self.inhibition_decay <= 0.0 {
            return Err(TwoFactorError::NonPositive("inhibition decay"));
        }
        if self.excitation_gain < 0.0 {
            return Err(TwoFactorError::Negative("excitation gain"));
        }
        if self.inhibition_gain < 0.0 {
            return Err(TwoFactorError::Negative("inhibition gain"));
        }
        Ok(())
    }

    /// Heaviside output: fires iff `e - j - θ > 0`.
    pub fn fires(&self, state: TwoFactorState) -> bool {
        state.excitation - state.inhibition - self.threshold > 0.0
    }

    fn derivative(&self, state: TwoFactorState, input: f64) -> TwoFactorState {
        TwoFactorState {
            excitation: self.excitation_gain * input - self.excitation_decay * state.excitation,
            inhibition: self.inhibition_gain * input - self.inhibition_decay * state.inhibition,
        }
    }

    /// One RK4 step of length `dt` with the input held at `input`.
    pub fn rk4_step(&self, state: TwoFactorState, input: f64, dt: f64) -> TwoFactorState {
        let k1 = self.derivative(state, input);
        let k2 = self.derivative(state.offset(k1, dt / 2.0), input);
        let k3 = self.derivative(state.offset(k2, dt / 2.0), input);
        let k4 = self.derivative(state.offset(k3, dt), input);
        TwoFactorState {
            excitation: state.excitation
                + dt / 6.0 * (k1.excitation + 2.0 * k2.excitation + 2.0 * k3.excitation + k4.excitation),
            inhibition: state.inhibition
                + dt / 6.0 * (k1.inhibition + 2.0 * k2.inhibition + 2.0 * k3.inhibition + k4.inhibition),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TwoFactorState {
    pub excitation: f64,
    pub inhibition: f64,
}

impl TwoFactorState {
    pub const REST: TwoFactorState = TwoFactorState { excitation: 0.0, inhibition: 0.0 };

    fn offset(self, slope: TwoFactorState, h: f64) -> Self {
        Self { excitation: self.excitation + h * slope.excitation, inhibition: self.inhibition + h * slope.inhibition }
    }

    pub fn net(&self) -> f64 {
        self.excitation - self.inhibition
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub excitation: f64,
    pub inhibition: f64,
    pub fires: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoFactorTrace {
    pub dt: f64,
    pub samples: Vec<Sample>,
}

impl TwoFactorTrace {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("traces hold at least the initial sample")
    }
}

fn step_count(dt: f64, t_end: f64) -> Result<usize, TwoFactorError> {
    if !dt.is_finite() || !t_end.is_finite() {
        return Err(TwoFactorError::NonFinite(if dt.is_finite() { "end time" } else { "dt" }));
    }
    if dt <= 0.0 {
        return Err(TwoFactorError::NonPositive("dt"));
    }
    if t_end <= 0.0 {
        return Err(TwoFactorError::NonPositive("end time"));
    }
    Ok((t_end / dt).round().max(1.0) as usize)
}

fn sample(params: &TwoFactorParams, t: f64, state: TwoFactorState) -> Sample {
    Sample { t, excitation: state.excitation, inhibition: state.inhibition, fires: params.fires(state) }
}

/// Integrates one unit from rest over `[0, t_end]`.
pub fn integrate(
    params: &TwoFactorParams,
    input: impl Fn(f64) -> f64,
    dt: f64,
    t_end: f64,
) -> Result<TwoFactorTrace, TwoFactorError> {
    integrate_from(params, TwoFactorState::REST, input, dt, t_end)
}

/// As [`integrate`], from an arbitrary initial state.
pub fn integrate_from(
    params: &TwoFactorParams,
    initial: TwoFactorState,
    input: impl Fn(f64) -> f64,
    dt: f64,
    t_end: f64,
) -> Result<TwoFactorTrace, TwoFactorError> {
    params.validate()?;
    if !initial.excitation.is_finite() || !initial.inhibition.is_finite() {
        return Err(TwoFactorError::NonFinite("initial state"));
    }
    let steps = step_count(dt, t_end)?;
    let mut state = initial;
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(sample(params, 0.0, state));
    for n in 0..steps {
        let t = n as f64 * dt;
        let i = input(t);
        if !i.is_finite() {
            return Err(TwoFactorError::NonFiniteInput(t));
        }
        state = params.rk4_step(state, i, dt);
        samples.push(sample(params, (n + 1) as f64 * dt, state));
    }
    Ok(TwoFactorTrace { dt, samples })
}

/// Exact solution from rest under a constant input.
pub fn closed_form_constant_input(params: &TwoFactorParams, input: f64, t: f64) -> TwoFactorState {
    let approach = |gain: f64, decay: f64| gain * input / decay * (1.0 - (-decay * t).exp());
    TwoFactorState {
        excitation: approach(params.excitation_gain, params.excitation_decay),
        inhibition: approach(params.inhibition_gain, params.inhibition_decay),
    }
}

/// Whether the unit fires at equilibrium under a constant input.
pub fn steady_state_fires(params: &TwoFactorParams, input: f64) -> bool {
    let e = params.excitation_gain * input / params.excitation_decay;
    let j = params.inhibition_gain * input / params.inhibition_decay;
    e - j > params.threshold
}

/// External drive of each unit in a network.
pub type ExternalInput<'a> = Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>;

/// Integrates a network of units coupled through their binary outputs.
///
/// `weights[j][k]` is the coupling from unit `j` to unit `k`. During the step
/// from `t` to `t + dt`, unit `k` receives
/// `external_k(t) + Σ_j weights[j][k]·output_j(t)`, so each coupling acts
/// with a one-step lag.
pub fn simulate_two_factor_net(
    units: &[TwoFactorParams],
    weights: &[Vec<f64>],
    external: &[ExternalInput<'_>],
    dt: f64,
    t_end: f64,
) -> Result<Vec<TwoFactorTrace>, TwoFactorError> {
    simulate_two_factor_net_from(units, &vec![TwoFactorState::REST; units.len()], weights, external, dt, t_end)
}

pub fn simulate_two_factor_net_from(
    units: &[TwoFactorParams],
    initial: &[TwoFactorState],
    weights: &[Vec<f64>],
    external: &[ExternalInput<'_>],
    dt: f64,
    t_end: f64,
) -> Result<Vec<TwoFactorTrace>, TwoFactorError> {
    let n = units.len();
    let dim = |what, found| if found == n { Ok(()) } else { Err(TwoFactorError::Dimension { what, expected: n, found }) };
    dim("weight rows", weights.len())?;
    dim("external inputs", external.len())?;
    dim("initial states", initial.len())?;
    for (j, row) in weights.iter().enumerate() {
        dim("weight row length", row.len())?;
        if row[j] != 0.0 {
            return Err(TwoFactorError::SelfCoupling(j));
        }
        if row.iter().any(|w| !w.is_finite()) {
            return Err(TwoFactorError::NonFinite("coupling weight"));
        }
    }
    units.iter().try_for_each(TwoFactorParams::validate)?;
    let steps = step_count(dt, t_end)?;

    let mut states = initial.to_vec();
    let mut traces: Vec<TwoFactorTrace> = units
        .iter()
        .zip(&states)
        .map(|(p, s)| TwoFactorTrace { dt, samples: vec![sample(p, 0.0, *s)] })
        .collect();
    for step in 0..steps {
        let t = step as f64 * dt;
        let outputs: Vec<bool> = traces.iter().map(|tr| tr.last().fires).collect();
        for k in 0..n {
            let coupled: f64 = (0..n).filter(|&j| outputs[j]).map(|j| weights[j][k]).sum();
            let drive = external[k](t) + coupled;
            if !drive.is_finite() {
                return Err(TwoFactorError::NonFiniteInput(t));
            }
            states[k] = units[k].rk4_step(states[k], drive, dt);
        }
        let t_next = (step + 1) as f64 * dt;
        for (k, trace) in traces.iter_mut().enumerate() {
            trace.samples.push(sample(&units[k], t_next, states[k]));
        }
    }
    Ok(traces)
}

/// Four-unit cross-coupled net: two input units, each exciting its own
/// output unit and inhibiting the opposite one.
///
/// Unit order is `[input 1, input 2, output 1, output 2]`. Returns the
/// coupling matrix for the given excitatory and inhibitory strengths.
pub fn cross_couple_weights(excitatory: f64, inhibitory: f64) -> Vec<Vec<f64>> {
    let mut w = vec![vec![0.0; 4]; 4];
    w[0][2] = excitatory;
    w[1][3] = excitatory;
    w[0][3] = -inhibitory;
    w[1][2] = -inhibitory;
    w
}

/// A train of rectangular input pulses starting at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseTrain {
    pub amplitude: f64,
    pub width: f64,
    /// Onset-to-onset spacing.
    pub interval: f64,
    pub count: usize,
}

impl PulseTrain {
    pub fn new(amplitude: f64, width: f64, interval: f64, count: usize) -> Result<Self, TwoFactorError> {
        let train = Self { amplitude, width, interval, count };
        train.validate()?;
        Ok(train)
    }

    pub fn validate(&self) -> Result<(), TwoFactorError> {
        for (name, v) in [("pulse amplitude", self.amplitude), ("pulse width", self.width), ("pulse interval", self.interval)] {
            if !v.is_finite() {
                return Err(TwoFactorError::NonFinite(name));
            }
            if v <= 0.0 {
                return Err(TwoFactorError::NonPositive(name));
            }
        }
        if self.count == 0 {
            return Err(TwoFactorError::NonPositive("pulse count"));
        }
        if self.width >= self.interval {
            return Err(TwoFactorError::PulseOverlap);
        }
        Ok(())
    }

    pub fn duration(&self) -> f64 {
        self.count as f64 * self.interval
    }

    /// The train snapped to a grid of step `dt`: per-step input values over
    /// the whole duration.
    pub fn sampled(&self, dt: f64) -> Vec<f64> {
        let steps = (self.duration() / dt).round() as usize;
        let width = ((self.width / dt).round() as usize).max(1);
        let mut values = vec![0.0; steps];
        for p in 0..self.count {
            let onset = (p as f64 * self.interval / dt).round() as usize;
            for v in values.iter_mut().skip(onset).take(width) {
                *v = self.amplitude;
            }
        }
        values
    }

    /// Grid index at which pulse `p`'s window begins.
    pub fn window_start(&self, p: usize, dt: f64) -> usize {
        (p as f64 * self.interval / dt).round() as usize
    }
}

/// Integrates a pulse train and returns, for each pulse, the largest `e - j`
/// reached between its onset and the next onset (the end of the train for
/// the last pulse).
pub fn pulse_train_response(params: &TwoFactorParams, train: &PulseTrain, dt: f64) -> Result<Vec<f64>, TwoFactorError> {
    train.validate()?;
    let trace = pulse_train_trace(params, train, dt)?;
    let steps = trace.samples.len() - 1;
    Ok((0..train.count)
        .map(|p| {
            let start = train.window_start(p, dt);
            let end = if p + 1 == train.count { steps } else { train.window_start(p + 1, dt) };
            trace.samples[start..=end.min(steps)]
                .iter()
                .map(|s| s.excitation - s.inhibition)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect())
}

pub fn pulse_train_trace(params: &TwoFactorParams, train: &PulseTrain, dt: f64) -> Result<TwoFactorTrace, TwoFactorError> {
    train.validate()?;
    let values = train.sampled(dt);
    integrate(params, |t| values.get((t / dt).round() as usize).copied().unwrap_or(0.0), dt, train.duration())
}
