//! Temporal propositional expressions over delayed neuron references.
//!
//! The concrete syntax is `N3(t) = N1(t-1) . ~N2(t-1)`: `.` is conjunction,
//! `|` disjunction (binding looser than `.`), and `~` negation, which is only
//! legal as a conjunct next to at least one positive term. A reference
//! `Nj(t-d)` needs `d >= 1`, one synaptic delay being the shortest lag a
//! neuron can see.
//!
//! Expressions compile to nets built from the four elementary pieces
//! (relay, disjunction, conjunction, conjoined negation) and can be checked
//! against any single-effector net by exhaustive enumeration of input
//! sequences.

mod parse;
mod synth;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use parse::{parse_expression, ParseError, ParseErrorKind};
pub use synth::{output_shift, synthesize_net, SynthesisResult};
pub use verify::{verify_equivalence, Counterexample, Equivalence, VerifyError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// `neuron(t - delay)`.
    Ref { neuron: String, delay: u32 },
    And(Vec<Expr>),
    Or(Vec<Expr>),
    /// `positive . ~negated`; `negated` is a reference or a conjunction of references.
    AndNot { positive: Box<Expr>, negated: Box<Expr> },
}

impl Expr {
    pub fn reference(neuron: impl Into<String>, delay: u32) -> Self {
        Expr::Ref { neuron: neuron.into(), delay }
    }

    pub fn and_not(positive: Expr, negated: Expr) -> Self {
        Expr::AndNot { positive: Box::new(positive), negated: Box::new(negated) }
    }

    pub fn max_delay(&self) -> u32 {
        match self {
            Expr::Ref { delay, .. } => *delay,
            Expr::And(cs) | Expr::Or(cs) => cs.iter().map(Expr::max_delay).max().unwrap_or(0),
            Expr::AndNot { positive, negated } => positive.max_delay().max(negated.max_delay()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Ref { .. } => 0,
            Expr::And(cs) | Expr::Or(cs) => 1 + cs.iter().map(Expr::depth).max().unwrap_or(0),
            Expr::AndNot { positive, negated } => 1 + positive.depth().max(negated.depth()),
        }
    }

    /// Every `(neuron, delay)` reference, left to right.
    pub fn references(&self) -> Vec<(&str, u32)> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs<'a>(&'a self, out: &mut Vec<(&'a str, u32)>) {
        match self {
            Expr::Ref { neuron, delay } => out.push((neuron, *delay)),
            Expr::And(cs) | Expr::Or(cs) => cs.iter().for_each(|c| c.collect_refs(out)),
            Expr::AndNot { positive, negated } => {
                positive.collect_refs(out);
                negated.collect_refs(out);
            }
        }
    }

    /// Input neurons in order of first appearance.
    pub fn inputs(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (name, _) in self.references() {
            if !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        }
        out
    }

    /// Boolean value, with `lookup(neuron, delay)` supplying each reference.
    pub fn eval_with<F: FnMut(&str, u32) -> bool>(&self, lookup: &mut F) -> bool {
        match self {
            Expr::Ref { neuron, delay } => lookup(neuron, *delay),
            Expr::And(cs) => cs.iter().all(|c| c.eval_with(lookup)),
            Expr::Or(cs) => cs.iter().any(|c| c.eval_with(lookup)),
            Expr::AndNot { positive, negated } => positive.eval_with(lookup) && !negated.eval_with(lookup),
        }
    }

    fn check(&self) -> Result<(), ExprError> {
        match self {
            Expr::Ref { neuron, delay } => {
                if *delay == 0 {
                    return Err(ExprError::ZeroDelay(neuron.clone()));
                }
                Ok(())
            }
            Expr::And(cs) | Expr::Or(cs) => {
                if cs.len() < 2 {
                    return Err(ExprError::TooFewOperands);
                }
                cs.iter().try_for_each(Expr::check)
            }
            Expr::AndNot { positive, negated } => {
                let plain = match negated.as_ref() {
                    Expr::Ref { .. } => true,
                    Expr::And(cs) => cs.iter().all(|c| matches!(c, Expr::Ref { .. })),
                    _ => false,
                };
                if !plain {
                    return Err(ExprError::ComplexNegation);
                }
                positive.check()?;
                negated.check()
            }
        }
    }
}

/// `target(t) = body`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalExpr {
    pub target: String,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("reference to `{0}` needs a delay of at least 1")]
    ZeroDelay(String),
    #[error("conjunction and disjunction need at least two operands")]
    TooFewOperands,
    #[error("negation applies only to a reference or a conjunction of references")]
    ComplexNegation,
    #[error("`{0}` refers to itself; nets without circles only")]
    SelfReference(String),
}

impl TemporalExpr {
    pub fn new(target: impl Into<String>, body: Expr) -> Result<Self, ExprError> {
        let e = Self { target: target.into(), body };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<(), ExprError> {
        self.body.check()?;
        if self.body.references().iter().any(|(n, _)| *n == self.target) {
            return Err(ExprError::SelfReference(self.target.clone()));
        }
        Ok(())
    }

    pub fn inputs(&self) -> Vec<String> {
        self.body.inputs()
    }

    pub fn max_delay(&self) -> u32 {
        self.body.max_delay()
    }
}

pub fn format_expression(expr: &TemporalExpr) -> String {
    expr.to_string()
}

impl fmt::Display for TemporalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(t) = {}", self.target, self.body)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&disjunction_text(self))
    }
}

fn reference_text(neuron: &str, delay: u32) -> String {
    format!("{neuron}(t-{delay})")
}

fn disjunction_text(e: &Expr) -> String {
    match e {
        Expr::Or(cs) => cs
            .iter()
            .map(|c| match c {
                Expr::Or(_) => format!("({})", disjunction_text(c)),
                _ => conjunction_text(c),
            })
            .collect::<Vec<_>>()
            .join(" | "),
        _ => conjunction_text(e),
    }
}

// Parenthesization mirrors how the parser folds a conjunction chain: all
// positive terms first (as one `And`), then each negation wraps the result.
fn conjunction_text(e: &Expr) -> String {
    match e {
        Expr::Ref { neuron, delay } => reference_text(neuron, *delay),
        Expr::And(cs) => cs
            .iter()
            .map(|c| match c {
                Expr::Ref { neuron, delay } => reference_text(neuron, *delay),
                _ => format!("({})", disjunction_text(c)),
            })
            .collect::<Vec<_>>()
            .join(" . "),
        Expr::AndNot { positive, negated } => {
            let pos = match positive.as_ref() {
                Expr::Or(_) => format!("({})", disjunction_text(positive)),
                p => conjunction_text(p),
            };
            let neg = match negated.as_ref() {
                Expr::Ref { neuron, delay } => reference_text(neuron, *delay),
                other => format!("({})", disjunction_text(other)),
            };
            format!("{pos} . ~{neg}")
        }
        Expr::Or(_) => format!("({})", disjunction_text(e)),
    }
}

/// A neuron's firing record from `start` on; silent outside the record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct History {
    pub start: i64,
    pub bits: Vec<bool>,
}

impl History {
    pub fn new(start: i64, bits: Vec<bool>) -> Self {
        Self { start, bits }
    }

    pub fn at(&self, t: i64) -> bool {
        let idx = t - self.start;
        idx >= 0 && self.bits.get(idx as usize).copied().unwrap_or(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no history for neuron `{0}`")]
pub struct UnknownNeuron(pub String);

/// Value of the expression's target at time `t`.
pub fn evaluate_expression(expr: &TemporalExpr, histories: &BTreeMap<String, History>, t: i64) -> Result<bool, UnknownNeuron> {
    if let Some((missing, _)) = expr.body.references().into_iter().find(|(n, _)| !histories.contains_key(*n)) {
        return Err(UnknownNeuron(missing.to_string()));
    }
    Ok(expr.body.eval_with(&mut |neuron, delay| histories[neuron].at(t - delay as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn histories(entries: &[(&str, i64, &[u8])]) -> BTreeMap<String, History> {
        entries.iter().map(|(n, s, b)| (n.to_string(), History::new(*s, b.iter().map(|&x| x == 1).collect()))).collect()
    }

    #[test]
    fn conjunction_element_fires_on_both() {
        let e = parse_expression("N3(t) = N1(t-1) . N2(t-1)").unwrap();
        let h = histories(&[("N1", 0, &[1]), ("N2", 0, &[1])]);
        assert!(evaluate_expression(&e, &h, 1).unwrap());
        let h = histories(&[("N1", 0, &[1]), ("N2", 0, &[0])]);
        assert!(!evaluate_expression(&e, &h, 1).unwrap());
    }

    #[test]
    fn disjunction_of_silent_inputs() {
        let e = parse_expression("N3(t) = N1(t-1) | N2(t-1)").unwrap();
        let h = histories(&[("N1", 0, &[0, 0]), ("N2", 0, &[0, 0])]);
        assert!(!evaluate_expression(&e, &h, 1).unwrap());
    }

    #[test]
    fn worked_example_neuron_three() {
        let e = parse_expression("N3(t) = N1(t-1) | N2(t-3) . ~N2(t-2)").unwrap();
        // N2 fires at t-3 only, with t = 0.
        let h = histories(&[("N1", -3, &[0, 0, 0]), ("N2", -3, &[1, 0, 0])]);
        assert!(evaluate_expression(&e, &h, 0).unwrap());
        let h = histories(&[("N1", -3, &[0, 0, 0]), ("N2", -3, &[1, 1, 0])]);
        assert!(!evaluate_expression(&e, &h, 0).unwrap());
        let h = histories(&[("N1", -3, &[0, 0, 1]), ("N2", -3, &[1, 1, 0])]);
        assert!(evaluate_expression(&e, &h, 0).unwrap());
    }

    #[test]
    fn lookups_before_the_record_are_silent() {
        let e = parse_expression("N2(t) = N1(t-3)").unwrap();
        let h = histories(&[("N1", 5, &[1])]);
        assert!(!evaluate_expression(&e, &h, 6).unwrap());
        assert!(evaluate_expression(&e, &h, 8).unwrap());
    }

    #[test]
    fn unknown_neuron_is_reported() {
        let e = parse_expression("N3(t) = N1(t-1) | N2(t-1)").unwrap();
        let h = histories(&[("N1", 0, &[1])]);
        assert_eq!(evaluate_expression(&e, &h, 1), Err(UnknownNeuron("N2".into())));
    }

    #[test]
    fn format_examples() {
        let e = TemporalExpr::new("N3", Expr::and_not(Expr::reference("N1", 1), Expr::reference("N2", 1))).unwrap();
        assert_eq!(format_expression(&e), "N3(t) = N1(t-1) . ~N2(t-1)");
        let e = TemporalExpr::new("N3", Expr::Or(vec![Expr::reference("N1", 1), Expr::reference("N2", 1)])).unwrap();
        assert_eq!(format_expression(&e), "N3(t) = N1(t-1) | N2(t-1)");
        let nested = Expr::And(vec![
            Expr::Or(vec![Expr::reference("A", 1), Expr::reference("B", 2)]),
            Expr::reference("C", 1),
        ]);
        let e = TemporalExpr::new("Z", nested).unwrap();
        assert_eq!(format_expression(&e), "Z(t) = (A(t-1) | B(t-2)) . C(t-1)");
        assert_eq!(parse_expression(&format_expression(&e)).unwrap(), e);
    }

    #[test]
    fn validation_rules() {
        assert_eq!(TemporalExpr::new("X", Expr::reference("A", 0)), Err(ExprError::ZeroDelay("A".into())));
        assert_eq!(TemporalExpr::new("X", Expr::Or(vec![Expr::reference("A", 1)])), Err(ExprError::TooFewOperands));
        let bad = Expr::and_not(
            Expr::reference("A", 1),
            Expr::Or(vec![Expr::reference("B", 1), Expr::reference("C", 1)]),
        );
        assert_eq!(TemporalExpr::new("X", bad), Err(ExprError::ComplexNegation));
        assert_eq!(TemporalExpr::new("A", Expr::reference("A", 1)), Err(ExprError::SelfReference("A".into())));
    }

    #[test]
    fn inputs_in_first_appearance_order() {
        let e = parse_expression("N3(t) = N2(t-3) . ~N1(t-2) | N2(t-1)").unwrap();
        assert_eq!(e.inputs(), vec!["N2", "N1"]);
        assert_eq!(e.max_delay(), 3);
        assert_eq!(e.body.depth(), 2);
    }
}
