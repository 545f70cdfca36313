//! Discrete-time simulation of nets by the matrix recursion
//! `a(t) = G[r(t) + a(t-1)·F]`.
//!
//! Receptor components of every state are the stimulus itself; every other
//! neuron lags its inputs by one synaptic delay. The split form advances the
//! internal and effector parts separately from the four blocks of `F`.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::net::{
    build_structure_matrix, heaviside_normalize, partition_blocks, ActivityVector, DimensionError, ExcitationVector,
    Layout, NetDefinition, NetError, StructureMatrix, Weight,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error("horizon must be at least 1")]
    EmptyHorizon,
    #[error("stimulus has no frames")]
    EmptyStimulus,
}

/// Receptor bits per time step, starting at `start_time`. Zero outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StimulusSequence {
    start_time: i64,
    width: usize,
    frames: Vec<Vec<bool>>,
}

impl StimulusSequence {
    pub fn new(start_time: i64, frames: Vec<Vec<bool>>) -> Result<Self, EngineError> {
        let width = frames.first().ok_or(EngineError::EmptyStimulus)?.len();
        if let Some(bad) = frames.iter().find(|f| f.len() != width) {
            return Err(DimensionError { what: "stimulus frame", expected: width, found: bad.len() }.into());
        }
        Ok(Self { start_time, width, frames })
    }

    /// Builds a stimulus from `(time, frame)` pairs; gaps are zero.
    pub fn from_events(width: usize, events: &[(i64, Vec<bool>)]) -> Result<Self, EngineError> {
        let start = events.iter().map(|e| e.0).min().ok_or(EngineError::EmptyStimulus)?;
        let end = events.iter().map(|e| e.0).max().unwrap_or(start);
        let mut frames = vec![vec![false; width]; (end - start + 1) as usize];
        for (t, frame) in events {
            if frame.len() != width {
                return Err(DimensionError { what: "stimulus frame", expected: width, found: frame.len() }.into());
            }
            frames[(t - start) as usize] = frame.clone();
        }
        Self::new(start, frames)
    }

    pub fn start_time(&self) -> i64 {
        self.start_time
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn frames(&self) -> &[Vec<bool>] {
        &self.frames
    }

    pub fn end_time(&self) -> i64 {
        self.start_time + self.frames.len() as i64 - 1
    }

    pub fn at(&self, t: i64) -> Vec<bool> {
        let idx = t - self.start_time;
        if idx >= 0 && (idx as usize) < self.frames.len() {
            self.frames[idx as usize].clone()
        } else {
            vec![false; self.width]
        }
    }

    pub fn shifted(&self, delta: i64) -> Self {
        Self { start_time: self.start_time + delta, ..self.clone() }
    }
}

/// States `a(start), a(start+1), ...` in canonical neuron order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityTrace {
    pub start_time: i64,
    pub names: Vec<String>,
    pub states: Vec<ActivityVector>,
}

impl ActivityTrace {
    pub fn end_time(&self) -> i64 {
        self.start_time + self.states.len() as i64 - 1
    }

    pub fn at(&self, t: i64) -> Option<&ActivityVector> {
        let idx = t - self.start_time;
        (idx >= 0).then(|| self.states.get(idx as usize)).flatten()
    }

    pub fn times(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.states.len() as i64).map(move |i| self.start_time + i)
    }

    /// The efferent pattern: effector bits per time step.
    pub fn effector_trace(&self) -> Vec<Vec<bool>> {
        self.states.iter().map(|a| a.effectors().to_vec()).collect()
    }

    pub fn internal_trace(&self) -> Vec<Vec<bool>> {
        self.states.iter().map(|a| a.internals().to_vec()).collect()
    }

    pub fn receptor_trace(&self) -> Vec<Vec<bool>> {
        self.states.iter().map(|a| a.receptors().to_vec()).collect()
    }
}

pub fn effector_trace(trace: &ActivityTrace) -> Vec<Vec<bool>> {
    trace.effector_trace()
}

/// `v(t) = r(t) + a(t-1)·F`, receptor components taken from the stimulus.
pub fn excitation(f: &StructureMatrix, prev: &ActivityVector, stimulus: &[bool]) -> Result<ExcitationVector, EngineError> {
    let layout = f.layout();
    if prev.bits().len() != layout.len() {
        return Err(DimensionError { what: "previous activity", expected: layout.len(), found: prev.bits().len() }.into());
    }
    if stimulus.len() != layout.receptors {
        return Err(DimensionError { what: "stimulus frame", expected: layout.receptors, found: stimulus.len() }.into());
    }
    let mut values = f.propagate(prev.bits());
    for (v, &r) in values.iter_mut().zip(stimulus) {
        *v = if r { Weight::one() } else { Weight::zero() };
    }
    Ok(ExcitationVector { values, layout })
}

/// One synaptic delay: `a(t) = G[r(t) + a(t-1)·F]`.
pub fn step(f: &StructureMatrix, prev: &ActivityVector, stimulus: &[bool]) -> Result<ActivityVector, EngineError> {
    Ok(heaviside_normalize(&excitation(f, prev, stimulus)?))
}

fn initial_state(layout: Layout, stimulus: &[bool], internals: &[bool]) -> Result<ActivityVector, EngineError> {
    if internals.len() != layout.internals {
        return Err(DimensionError { what: "initial internal state", expected: layout.internals, found: internals.len() }.into());
    }
    if stimulus.len() != layout.receptors {
        return Err(DimensionError { what: "stimulus frame", expected: layout.receptors, found: stimulus.len() }.into());
    }
    Ok(ActivityVector::from_parts(stimulus, internals, &vec![false; layout.effectors]))
}

/// Runs a net from `stim.start_time()` for `horizon` steps.
///
/// The initial state takes the first stimulus frame, `initial_internals`,
/// and a silent effector layer. The trace holds `horizon + 1` states.
pub fn run(
    net: &NetDefinition,
    stim: &StimulusSequence,
    initial_internals: &[bool],
    horizon: usize,
) -> Result<ActivityTrace, EngineError> {
    let f = build_structure_matrix(net)?;
    run_matrix(&f, stim, initial_internals, horizon)
}

pub fn run_matrix(
    f: &StructureMatrix,
    stim: &StimulusSequence,
    initial_internals: &[bool],
    horizon: usize,
) -> Result<ActivityTrace, EngineError> {
    if horizon == 0 {
        return Err(EngineError::EmptyHorizon);
    }
    let start = stim.start_time();
    let mut state = initial_state(f.layout(), &stim.at(start), initial_internals)?;
    let mut states = Vec::with_capacity(horizon + 1);
    states.push(state.clone());
    for t in start + 1..=start + horizon as i64 {
        state = step(f, &state, &stim.at(t))?;
        states.push(state.clone());
    }
    Ok(ActivityTrace { start_time: start, names: f.names().to_vec(), states })
}

/// Internal and effector patterns produced by the split recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTrace {
    pub start_time: i64,
    pub internal: Vec<Vec<bool>>,
    pub effector: Vec<Vec<bool>>,
}

/// `i(t) = G[r(t-1)·R + i(t-1)·I]` and `e(t) = G[r(t-1)·X + i(t-1)·E]`.
pub fn run_split(
    net: &NetDefinition,
    stim: &StimulusSequence,
    initial_internals: &[bool],
    horizon: usize,
) -> Result<SplitTrace, EngineError> {
    let f = build_structure_matrix(net)?;
    run_split_matrix(&f, stim, initial_internals, horizon)
}

pub fn run_split_matrix(
    f: &StructureMatrix,
    stim: &StimulusSequence,
    initial_internals: &[bool],
    horizon: usize,
) -> Result<SplitTrace, EngineError> {
    if horizon == 0 {
        return Err(EngineError::EmptyHorizon);
    }
    let layout = f.layout();
    let n = layout.len();
    let start = stim.start_time();
    let state = initial_state(layout, &stim.at(start), initial_internals)?;
    let blocks = partition_blocks(f);
    let one = Weight::one();

    let mut internal = vec![state.internals().to_vec()];
    let mut effector = vec![state.effectors().to_vec()];
    for t in start + 1..=start + horizon as i64 {
        // Full-length r(t-1) and i(t-1); each block only reads its own rows.
        let prev = ActivityVector::from_parts(&stim.at(t - 1), internal.last().expect("seeded"), &vec![false; layout.effectors]);
        let sum = |a: Vec<Weight>, b: Vec<Weight>| -> Vec<Weight> { a.into_iter().zip(b).map(|(x, y)| x + y).collect() };
        let v_int = sum(
            blocks.receptor_internal.propagate(prev.bits(), n),
            blocks.internal_internal.propagate(prev.bits(), n),
        );
        let v_eff = sum(
            blocks.receptor_effector.propagate(prev.bits(), n),
            blocks.internal_effector.propagate(prev.bits(), n),
        );
        internal.push(layout.internal_range().map(|k| v_int[k] >= one).collect());
        effector.push(layout.effector_range().map(|k| v_eff[k] >= one).collect());
    }
    Ok(SplitTrace { start_time: start, internal, effector })
}

/// The structure matrix rescaled to integers by the common denominator, so
/// brute-force enumeration runs on `i64` arithmetic with the exact same
/// threshold decisions.
#[derive(Debug, Clone)]
pub struct ScaledKernel {
    n: usize,
    receptors: usize,
    scale: i64,
    /// Per neuron, the nonzero outgoing `(target, scaled weight)` pairs.
    fanout: Vec<Vec<(usize, i64)>>,
}

impl ScaledKernel {
    pub fn new(f: &StructureMatrix) -> Self {
        let scale = f.entries().iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
        let n = f.n();
        let fanout = (0..n)
            .map(|j| {
                f.row(j)
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(k, w)| (k, w.numer() * (scale / w.denom())))
                    .collect()
            })
            .collect();
        Self { n, receptors: f.layout().receptors, scale, fanout }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Writes `a(t)` into `next` given `a(t-1)` and `r(t)`.
    pub fn step_into(&self, prev: &[bool], stimulus: &[bool], acc: &mut Vec<i64>, next: &mut Vec<bool>) {
        acc.clear();
        acc.resize(self.n, 0);
        for (j, _) in prev.iter().enumerate().filter(|(_, &b)| b) {
            for &(k, w) in &self.fanout[j] {
                acc[k] += w;
            }
        }
        next.clear();
        next.extend(stimulus.iter().copied());
        next.extend(acc[self.receptors..].iter().map(|&v| v >= self.scale));
    }
}
