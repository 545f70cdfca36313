//! Exhaustive behavioural comparison between a net and an expression.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use super::{output_shift, Expr, TemporalExpr};
use crate::engine::ScaledKernel;
use crate::net::{build_structure_matrix, NetDefinition, NetError};

/// Upper bound on `receptors * horizon`, i.e. on log2 of the sequence count.
pub const MAX_ENUMERATION_BITS: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("net has {0} effectors; equivalence needs exactly one")]
    EffectorCount(usize),
    #[error("expression input `{0}` is not a receptor of the net")]
    MissingInput(String),
    #[error("horizon {horizon} is shorter than the expression's output latency {latency}")]
    HorizonTooSmall { horizon: usize, latency: u32 },
    #[error("{receptors} receptors over horizon {horizon} is too many sequences to enumerate")]
    TooLarge { receptors: usize, horizon: usize },
}

/// An input sequence on which the net and the expression disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Receptor name and its bits for `t = 0 .. horizon`.
    pub inputs: Vec<(String, Vec<bool>)>,
    pub time: i64,
    pub expected: bool,
    pub actual: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let series: Vec<String> = self
            .inputs
            .iter()
            .map(|(n, bits)| format!("{n}={}", bits.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()))
            .collect();
        write!(
            f,
            "inputs {} (from t=0): at t={} the expression gives {} but the net gives {}",
            series.join(" "),
            self.time,
            self.expected as u8,
            self.actual as u8
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Holds,
    Refuted(Counterexample),
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        matches!(self, Equivalence::Holds)
    }
}

/// Expression with references resolved to receptor indices.
enum Indexed {
    Ref(usize, i64),
    And(Vec<Indexed>),
    Or(Vec<Indexed>),
    AndNot(Box<Indexed>, Box<Indexed>),
}

impl Indexed {
    fn new(e: &Expr, index: &HashMap<&str, usize>) -> Self {
        match e {
            Expr::Ref { neuron, delay } => Indexed::Ref(index[neuron.as_str()], *delay as i64),
            Expr::And(cs) => Indexed::And(cs.iter().map(|c| Indexed::new(c, index)).collect()),
            Expr::Or(cs) => Indexed::Or(cs.iter().map(|c| Indexed::new(c, index)).collect()),
            Expr::AndNot { positive, negated } => {
                Indexed::AndNot(Box::new(Indexed::new(positive, index)), Box::new(Indexed::new(negated, index)))
            }
        }
    }

    /// Value at time `t`; `frames[s][r]` is receptor `r` at time `s`.
    fn eval(&self, frames: &[Vec<bool>], t: i64) -> bool {
        match self {
            Indexed::Ref(r, d) => {
                let s = t - d;
                s >= 0 && frames.get(s as usize).is_some_and(|f| f[*r])
            }
            Indexed::And(cs) => cs.iter().all(|c| c.eval(frames, t)),
            Indexed::Or(cs) => cs.iter().any(|c| c.eval(frames, t)),
            Indexed::AndNot(p, n) => p.eval(frames, t) && !n.eval(frames, t),
        }
    }
}

struct Search<'a> {
    kernel: &'a ScaledKernel,
    expr: Indexed,
    receptors: usize,
    effector: usize,
    horizon: usize,
    end: usize,
    shift: i64,
}

impl Search<'_> {
    /// Depth-first over input frames; `frames` holds times `0..time`, `time >= 1`.
    fn explore(&self, frames: &mut Vec<Vec<bool>>, state: &[bool]) -> Option<(Vec<Vec<bool>>, i64, bool, bool)> {
        let time = frames.len();
        if time == self.end {
            return None;
        }
        let patterns: Vec<Vec<bool>> = if time < self.horizon {
            (0u64..1 << self.receptors).map(|code| (0..self.receptors).map(|r| code >> r & 1 == 1).collect()).collect()
        } else {
            vec![vec![false; self.receptors]]
        };
        let (mut acc, mut next) = (Vec::new(), Vec::new());
        for pattern in patterns {
            self.kernel.step_into(state, &pattern, &mut acc, &mut next);
            frames.push(pattern);
            let expected = self.expr.eval(frames, time as i64 - self.shift);
            let actual = next[self.effector];
            if expected != actual {
                return Some((frames.clone(), time as i64, expected, actual));
            }
            let snapshot = next.clone();
            if let Some(found) = self.explore(frames, &snapshot) {
                return Some(found);
            }
            frames.pop();
        }
        None
    }
}

/// Enumerates every receptor input sequence over `t = 0 .. horizon` from
/// rest and compares the effector at each time with the expression shifted
/// by its output shift, continuing until the last inputs have propagated.
///
/// The first disagreement in enumeration order is returned.
pub fn verify_equivalence(net: &NetDefinition, expr: &TemporalExpr, horizon: usize) -> Result<Equivalence, VerifyError> {
    let f = build_structure_matrix(net)?;
    let layout = f.layout();
    if layout.effectors != 1 {
        return Err(VerifyError::EffectorCount(layout.effectors));
    }
    let receptor_names: Vec<&str> = f.names()[layout.receptor_range()].iter().map(String::as_str).collect();
    let index: HashMap<&str, usize> = receptor_names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    if let Some(missing) = expr.inputs().into_iter().find(|n| !index.contains_key(n.as_str())) {
        return Err(VerifyError::MissingInput(missing));
    }
    let shift = output_shift(expr);
    let latency = shift + expr.max_delay();
    if horizon < latency as usize || horizon == 0 {
        return Err(VerifyError::HorizonTooSmall { horizon, latency });
    }
    if layout.receptors * horizon > MAX_ENUMERATION_BITS {
        return Err(VerifyError::TooLarge { receptors: layout.receptors, horizon });
    }

    let kernel = ScaledKernel::new(&f);
    let search = Search {
        kernel: &kernel,
        expr: Indexed::new(&expr.body, &index),
        receptors: layout.receptors,
        effector: layout.effector_range().start,
        horizon,
        end: horizon + latency as usize + 1,
        shift: shift as i64,
    };

    // Partition on the first frame; keep the earliest counterexample in order.
    let first_frames: Vec<Vec<bool>> =
        (0u64..1 << layout.receptors).map(|code| (0..layout.receptors).map(|r| code >> r & 1 == 1).collect()).collect();
    let found = first_frames
        .into_par_iter()
        .map(|first| {
            let mut state = first.clone();
            state.extend(std::iter::repeat_n(false, layout.internals + 1));
            let expected = search.expr.eval(std::slice::from_ref(&first), -search.shift);
            if expected != state[search.effector] {
                return Some((vec![first], 0, expected, state[search.effector]));
            }
            let mut frames = vec![first];
            search.explore(&mut frames, &state)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();

    Ok(match found {
        None => Equivalence::Holds,
        Some((mut frames, time, expected, actual)) => {
            frames.resize(horizon, vec![false; layout.receptors]);
            let inputs = receptor_names
                .iter()
                .enumerate()
                .map(|(r, name)| (name.to_string(), frames.iter().map(|f| f[r]).collect()))
                .collect();
            Equivalence::Refuted(Counterexample { inputs, time, expected, actual })
        }
    })
}
