//! Steady-state predicates for circuits of fibers, and the translation of
//! logical expressions into firing-probability formulas.
//!
//! Activity parameters are exact rationals, so boundary cases such as a
//! circuit parameter of exactly 1 are decided without rounding. Decimal
//! input like `0.4` is read as the rational `2/5`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::numfmt::{format_sig, parse_exact, rational_string, NumberError};
use crate::tpe::{Expr, TemporalExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("a circuit needs at least one fiber")]
    EmptyCircuit,
    #[error("activity parameters must be nonzero (fiber {0})")]
    ZeroParameter(usize),
    #[error("no circuits given")]
    NoCircuits,
    #[error(transparent)]
    Number(#[from] NumberError),
    #[error("malformed circuit `{0}`; write it like (1/2, -3)")]
    Malformed(String),
}

/// Activity parameters of the fibers of one simple circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCircuit {
    activity: Vec<BigRational>,
}

impl FiberCircuit {
    pub fn new(activity: Vec<BigRational>) -> Result<Self, AnalysisError> {
        if activity.is_empty() {
            return Err(AnalysisError::EmptyCircuit);
        }
        if let Some(i) = activity.iter().position(Zero::is_zero) {
            return Err(AnalysisError::ZeroParameter(i + 1));
        }
        Ok(Self { activity })
    }

    /// Convenience for integer ratios: `&[(1, 2), (-3, 1)]`.
    pub fn from_ratios(ratios: &[(i64, i64)]) -> Result<Self, AnalysisError> {
        Self::new(ratios.iter().map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect())
    }

    /// Parses `(1/2, 0.5, -3)`; the parentheses are optional.
    pub fn parse(text: &str) -> Result<Self, AnalysisError> {
        let body = text.trim();
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        if body.trim().is_empty() {
            return Err(AnalysisError::Malformed(text.to_string()));
        }
        let values = body.split(',').map(parse_exact).collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }

    pub fn activity(&self) -> &[BigRational] {
        &self.activity
    }

    pub fn inhibitory_count(&self) -> usize {
        self.activity.iter().filter(|a| a.is_negative()).count()
    }

    /// Fibers of `self` followed by those of `other`.
    pub fn concat(&self, other: &FiberCircuit) -> FiberCircuit {
        FiberCircuit { activity: self.activity.iter().chain(&other.activity).cloned().collect() }
    }
}

impl fmt::Display for FiberCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.activity.iter().map(rational_string).collect();
        f.pad(&format!("({})", parts.join(", ")))
    }
}

/// Product of the activity parameters.
pub fn circuit_parameter(c: &FiberCircuit) -> BigRational {
    c.activity.iter().fold(BigRational::one(), |acc, a| acc * a)
}

/// Whether the stimulus pattern always fixes the steady-state activity: an
/// odd number of inhibitory fibers, none at all, or a circuit parameter
/// below 1.
pub fn uniqueness_guaranteed(c: &FiberCircuit) -> bool {
    let inhibitory = c.inhibitory_count();
    inhibitory % 2 == 1 || inhibitory == 0 || circuit_parameter(c) < BigRational::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompleteActivityClass {
    /// Circuit parameter at most 1: no steady state with every fiber active.
    CompleteImpossible,
    /// Circuit parameter above 1: a stimulus consistent with complete
    /// activity is inconsistent with any partial activity.
    CompleteExcludesPartial,
}

impl fmt::Display for CompleteActivityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompleteActivityClass::CompleteImpossible => "impossible",
            CompleteActivityClass::CompleteExcludesPartial => "excludes-partial",
        })
    }
}

pub fn complete_activity_class(c: &FiberCircuit) -> CompleteActivityClass {
    if circuit_parameter(c) <= BigRational::one() {
        CompleteActivityClass::CompleteImpossible
    } else {
        CompleteActivityClass::CompleteExcludesPartial
    }
}

/// For circuits joined at one synapse: whether some nonempty subset of
/// circuit parameters sums to at least 1.
pub fn rosette_multi_pattern_possible(circuits: &[FiberCircuit]) -> Result<bool, AnalysisError> {
    if circuits.is_empty() {
        return Err(AnalysisError::NoCircuits);
    }
    let params: Vec<BigRational> = circuits.iter().map(circuit_parameter).collect();
    // The best subset takes every positive parameter, or the largest one if none is positive.
    let positive: BigRational = params.iter().filter(|p| p.is_positive()).cloned().sum();
    let best = if positive.is_positive() { positive } else { params.into_iter().max().expect("nonempty") };
    Ok(best >= BigRational::one())
}

/// How a disjunction becomes a probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DisjunctionMode {
    /// Probabilities add, clamped at 1.
    PaperSum,
    /// Inclusion-exclusion for independent events: `1 - Π(1 - p)`.
    Independent,
}

impl fmt::Display for DisjunctionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DisjunctionMode::PaperSum => "paper-sum",
            DisjunctionMode::Independent => "independent",
        })
    }
}

/// A firing-probability formula over input neurons.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbExpr {
    Input(String),
    Complement(Box<ProbExpr>),
    Product(Vec<ProbExpr>),
    /// `min(1, Σ p)`.
    ClampedSum(Vec<ProbExpr>),
    /// `1 - Π(1 - p)`.
    Union(Vec<ProbExpr>),
}

/// Substitutes the probabilistic operators into an expression. Delays drop
/// out: inputs fire at stationary rates.
pub fn to_probability_formula(expr: &TemporalExpr, mode: DisjunctionMode) -> ProbExpr {
    fn convert(e: &Expr, mode: DisjunctionMode) -> ProbExpr {
        match e {
            Expr::Ref { neuron, .. } => ProbExpr::Input(neuron.clone()),
            Expr::And(cs) => ProbExpr::Product(cs.iter().map(|c| convert(c, mode)).collect()),
            Expr::Or(cs) => {
                let parts = cs.iter().map(|c| convert(c, mode)).collect();
                match mode {
                    DisjunctionMode::PaperSum => ProbExpr::ClampedSum(parts),
                    DisjunctionMode::Independent => ProbExpr::Union(parts),
                }
            }
            Expr::AndNot { positive, negated } => ProbExpr::Product(vec![
                convert(positive, mode),
                ProbExpr::Complement(Box::new(convert(negated, mode))),
            ]),
        }
    }
    convert(&expr.body, mode)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("no probability given for input `{0}`")]
    Unassigned(String),
    #[error("probability for `{0}` must lie in [0, 1], got {1}")]
    OutOfRange(String, f64),
    #[error("trial count must be at least 1")]
    NoTrials,
}

fn check_probabilities(inputs: &BTreeMap<String, f64>) -> Result<(), ProbError> {
    match inputs.iter().find(|(_, p)| !(0.0..=1.0).contains(*p)) {
        Some((name, p)) => Err(ProbError::OutOfRange(name.clone(), *p)),
        None => Ok(()),
    }
}

impl ProbExpr {
    pub fn eval(&self, inputs: &BTreeMap<String, f64>) -> Result<f64, ProbError> {
        check_probabilities(inputs)?;
        self.eval_unchecked(inputs).map(|p| p.clamp(0.0, 1.0))
    }

    fn eval_unchecked(&self, inputs: &BTreeMap<String, f64>) -> Result<f64, ProbError> {
        let all = |cs: &[ProbExpr]| cs.iter().map(|c| c.eval_unchecked(inputs)).collect::<Result<Vec<f64>, _>>();
        Ok(match self {
            ProbExpr::Input(name) => *inputs.get(name).ok_or_else(|| ProbError::Unassigned(name.clone()))?,
            ProbExpr::Complement(inner) => 1.0 - inner.eval_unchecked(inputs)?,
            ProbExpr::Product(cs) => all(cs)?.iter().product(),
            ProbExpr::ClampedSum(cs) => all(cs)?.iter().sum::<f64>().min(1.0),
            ProbExpr::Union(cs) => 1.0 - all(cs)?.iter().map(|p| 1.0 - p).product::<f64>(),
        })
    }
}

pub fn eval_probability(p: &ProbExpr, inputs: &BTreeMap<String, f64>) -> Result<f64, ProbError> {
    p.eval(inputs)
}

impl fmt::Display for ProbExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |cs: &[ProbExpr], sep: &str| cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(sep);
        match self {
            ProbExpr::Input(name) => write!(f, "p({name})"),
            ProbExpr::Complement(inner) => write!(f, "(1 - {inner})"),
            ProbExpr::Product(cs) => write!(f, "{}", join(cs, " * ")),
            ProbExpr::ClampedSum(cs) => write!(f, "min(1, {})", join(cs, " + ")),
            ProbExpr::Union(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| format!("(1 - {c})")).collect();
                write!(f, "(1 - {})", parts.join(" * "))
            }
        }
    }
}

/// Monte-Carlo firing frequency and its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub rate: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {} ({} trials)", format_sig(self.rate), format_sig(self.std_error), self.trials)
    }
}

const BATCH: u64 = 4096;

/// Estimates how often the target fires when each input fires independently
/// at every time step with its given probability.
///
/// Trials run in fixed batches, batch `b` drawing from ChaCha stream `b` of
/// `seed`, so the estimate does not depend on thread scheduling.
pub fn monte_carlo_firing_rate(
    expr: &TemporalExpr,
    inputs: &BTreeMap<String, f64>,
    trials: u64,
    seed: u64,
) -> Result<Estimate, ProbError> {
    if trials == 0 {
        return Err(ProbError::NoTrials);
    }
    check_probabilities(inputs)?;
    // One independent bit per distinct (input, delay) the expression reads.
    let slots: Vec<(String, u32)> =
        expr.body.references().into_iter().map(|(n, d)| (n.to_string(), d)).collect::<BTreeSet<_>>().into_iter().collect();
    let probs = slots
        .iter()
        .map(|(n, _)| inputs.get(n).copied().ok_or_else(|| ProbError::Unassigned(n.clone())))
        .collect::<Result<Vec<f64>, _>>()?;

    let batches = trials.div_ceil(BATCH);
    let fired: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BATCH.min(trials - b * BATCH);
            let mut bits = vec![false; slots.len()];
            let mut hits = 0u64;
            for _ in 0..count {
                for (bit, p) in bits.iter_mut().zip(&probs) {
                    *bit = rng.gen::<f64>() < *p;
                }
                let fires = expr.body.eval_with(&mut |n, d| {
                    let idx = slots.binary_search_by(|(sn, sd)| (sn.as_str(), *sd).cmp(&(n, d))).expect("slot");
                    bits[idx]
                });
                hits += fires as u64;
            }
            hits
        })
        .sum();
    let rate = fired as f64 / trials as f64;
    Ok(Estimate { rate, std_error: (rate * (1.0 - rate) / trials as f64).sqrt(), trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpe::parse_expression;

    fn circuit(ratios: &[(i64, i64)]) -> FiberCircuit {
        FiberCircuit::from_ratios(ratios).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn probs(entries: &[(&str, f64)]) -> BTreeMap<String, f64> {
        entries.iter().map(|(n, p)| (n.to_string(), *p)).collect()
    }

    #[test]
    fn circuit_parameters() {
        assert_eq!(circuit_parameter(&circuit(&[(1, 2), (1, 2)])), q(1, 4));
        assert_eq!(circuit_parameter(&circuit(&[(-2, 1), (3, 1)])), q(-6, 1));
        assert_eq!(circuit_parameter(&circuit(&[(7, 3)])), q(7, 3));
    }

    #[test]
    fn uniqueness_verdicts() {
        assert!(uniqueness_guaranteed(&circuit(&[(1, 2), (1, 2)])));
        assert!(uniqueness_guaranteed(&circuit(&[(-2, 1), (3, 1)])));
        assert!(!uniqueness_guaranteed(&circuit(&[(-2, 1), (-3, 1)])));
        // Two inhibitory fibers but a small product.
        assert!(uniqueness_guaranteed(&circuit(&[(-1, 2), (-1, 3)])));
    }

    #[test]
    fn complete_activity_verdicts() {
        use CompleteActivityClass::*;
        assert_eq!(complete_activity_class(&circuit(&[(2, 1), (3, 1)])), CompleteExcludesPartial);
        assert_eq!(complete_activity_class(&circuit(&[(1, 2), (1, 2)])), CompleteImpossible);
        assert_eq!(complete_activity_class(&circuit(&[(2, 1), (1, 2)])), CompleteImpossible);
    }

    #[test]
    fn rosette_condition() {
        assert!(rosette_multi_pattern_possible(&[circuit(&[(3, 2)])]).unwrap());
        let tenths = [FiberCircuit::parse("(0.4)").unwrap(), FiberCircuit::parse("(0.3)").unwrap()];
        assert!(!rosette_multi_pattern_possible(&tenths).unwrap());
        assert!(!rosette_multi_pattern_possible(&[circuit(&[(-2, 1)]), circuit(&[(-5, 1)])]).unwrap());
        assert!(rosette_multi_pattern_possible(&[circuit(&[(3, 5)]), circuit(&[(-9, 1)]), circuit(&[(2, 5)])]).unwrap());
        assert_eq!(rosette_multi_pattern_possible(&[]), Err(AnalysisError::NoCircuits));
    }

    #[test]
    fn circuit_parsing() {
        assert_eq!(FiberCircuit::parse("(1/2, 1/2)").unwrap(), circuit(&[(1, 2), (1, 2)]));
        assert_eq!(FiberCircuit::parse("-2,3").unwrap(), circuit(&[(-2, 1), (3, 1)]));
        assert_eq!(FiberCircuit::parse("(0.5, 0)"), Err(AnalysisError::ZeroParameter(2)));
        assert!(FiberCircuit::parse("()").is_err());
        assert!(FiberCircuit::parse("(a)").is_err());
        assert_eq!(circuit(&[(1, 2), (-3, 1)]).to_string(), "(1/2, -3)");
    }

    #[test]
    fn substitution_examples() {
        let and_not = parse_expression("N3(t) = N1(t-1) . ~N2(t-1)").unwrap();
        let f = to_probability_formula(&and_not, DisjunctionMode::Independent);
        assert_eq!(f.to_string(), "p(N1) * (1 - p(N2))");
        assert_eq!(f.eval(&probs(&[("N1", 0.5), ("N2", 0.5)])).unwrap(), 0.25);
        let not = ProbExpr::Complement(Box::new(ProbExpr::Input("N1".into())));
        assert!((not.eval(&probs(&[("N1", 0.3)])).unwrap() - 0.7).abs() < 1e-15);

        let and = parse_expression("N3(t) = N1(t-1) . N2(t-1)").unwrap();
        let f = to_probability_formula(&and, DisjunctionMode::PaperSum);
        assert_eq!(f.eval(&probs(&[("N1", 0.5), ("N2", 0.5)])).unwrap(), 0.25);
        assert_eq!(f.eval(&probs(&[("N1", 1.0), ("N2", 1.0)])).unwrap(), 1.0);
        assert_eq!(f.eval(&probs(&[("N1", 0.0), ("N2", 0.7)])).unwrap(), 0.0);

        let or = parse_expression("N3(t) = N1(t-1) | N2(t-1)").unwrap();
        let half = probs(&[("N1", 0.5), ("N2", 0.5)]);
        assert_eq!(to_probability_formula(&or, DisjunctionMode::PaperSum).eval(&half).unwrap(), 1.0);
        assert_eq!(to_probability_formula(&or, DisjunctionMode::Independent).eval(&half).unwrap(), 0.75);
        assert_eq!(to_probability_formula(&or, DisjunctionMode::PaperSum).to_string(), "min(1, p(N1) + p(N2))");
    }

    #[test]
    fn probability_errors() {
        let or = parse_expression("N3(t) = N1(t-1) | N2(t-1)").unwrap();
        let f = to_probability_formula(&or, DisjunctionMode::Independent);
        assert_eq!(f.eval(&probs(&[("N1", 0.5)])), Err(ProbError::Unassigned("N2".into())));
        assert!(matches!(f.eval(&probs(&[("N1", 1.5), ("N2", 0.5)])), Err(ProbError::OutOfRange(..))));
        assert_eq!(monte_carlo_firing_rate(&or, &probs(&[("N1", 0.5), ("N2", 0.5)]), 0, 1), Err(ProbError::NoTrials));
    }

    #[test]
    fn monte_carlo_conjunction() {
        let and = parse_expression("N3(t) = N1(t-1) . N2(t-1)").unwrap();
        let est = monte_carlo_firing_rate(&and, &probs(&[("N1", 0.5), ("N2", 0.5)]), 100_000, 7).unwrap();
        assert!((est.rate - 0.25).abs() <= 3.0 * (0.25f64 * 0.75 / 1e5).sqrt(), "{est}");
        let certain = monte_carlo_firing_rate(&and, &probs(&[("N1", 1.0), ("N2", 1.0)]), 1000, 7).unwrap();
        assert_eq!(certain.rate, 1.0);
        assert_eq!(certain.std_error, 0.0);
    }

    #[test]
    fn monte_carlo_is_reproducible_per_seed() {
        let e = parse_expression("N3(t) = N1(t-1) . ~N2(t-1)").unwrap();
        let p = probs(&[("N1", 0.5), ("N2", 0.5)]);
        let a = monte_carlo_firing_rate(&e, &p, 50_000, 42).unwrap();
        let b = monte_carlo_firing_rate(&e, &p, 50_000, 42).unwrap();
        let c = monte_carlo_firing_rate(&e, &p, 50_000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.rate, c.rate);
    }
}
