//! Compilation of expressions into nets.
//!
//! Each operator node becomes one neuron: a disjunction takes weight 1 from
//! every operand, a conjunction of `m` operands takes `1/m` from each, and a
//! conjoined negation takes 1 from its positive side and -1 from its negated
//! side. A reference `X(t-d)` is the receptor `X` itself, delayed through a
//! relay chain where timing requires it.
//!
//! Timing: every compiled node has a lag `k` such that its neuron fires at
//! time `s` iff the node's subexpression holds at `s - k`. A bare reference
//! has `k = -d`; an operator has one more than the largest lag among its
//! operands, and shallower operands are padded with relays to match. The
//! root is lifted to `k >= 0` so the net never answers before the inputs it
//! depends on have arrived.

use std::collections::HashMap;

use num_traits::One;

use super::{ExprError, Expr, TemporalExpr};
use crate::net::{merge_synapses, NetDefinition, Neuron, Role, Synapse, Weight};

/// A compiled net and its timing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisResult {
    pub net: NetDefinition,
    /// The effector fires at `t` iff the expression holds at `t - output_shift`.
    pub output_shift: u32,
    /// Synaptic steps from the oldest referenced input to the output:
    /// `output_shift + max delay`.
    pub output_latency: u32,
    pub relay_count: usize,
}

/// The lag of the root node, always `>= 0`. Depends on the expression only.
pub fn output_shift(expr: &TemporalExpr) -> u32 {
    fn lag(e: &Expr, root: bool) -> i64 {
        match e {
            Expr::Ref { delay, .. } => {
                if root {
                    0
                } else {
                    -(*delay as i64)
                }
            }
            Expr::And(cs) | Expr::Or(cs) => operator_lag(cs.iter().map(|c| lag(c, false)), root),
            Expr::AndNot { positive, negated } => {
                operator_lag([lag(positive, false), lag(negated, false)].into_iter(), root)
            }
        }
    }
    lag(&expr.body, true) as u32
}

fn operator_lag(children: impl Iterator<Item = i64>, root: bool) -> i64 {
    let k = children.max().expect("operators have operands");
    if root {
        k.max(-1) + 1
    } else {
        k + 1
    }
}

struct Builder {
    internals: Vec<String>,
    synapses: Vec<Synapse>,
    /// `(source, steps)` to the relay that repeats `source` after `steps` delays.
    relays: HashMap<(String, u32), String>,
    relay_count: usize,
    next_id: usize,
}

impl Builder {
    fn fresh(&mut self, kind: &str) -> String {
        self.next_id += 1;
        // `#` cannot occur in an expression identifier, so no clash with inputs.
        format!("{kind}#{}", self.next_id)
    }

    fn connect(&mut self, from: &str, to: &str, weight: Weight) {
        self.synapses.push(Synapse { from: from.to_string(), to: to.to_string(), weight });
    }

    /// The neuron that repeats `source` after `steps` extra delays.
    fn delayed(&mut self, source: &str, steps: u32) -> String {
        let mut current = source.to_string();
        for step in 1..=steps {
            let key = (source.to_string(), step);
            current = match self.relays.get(&key) {
                Some(name) => name.clone(),
                None => {
                    let name = self.fresh("relay");
                    self.internals.push(name.clone());
                    self.connect(&current, &name, Weight::one());
                    self.relay_count += 1;
                    self.relays.insert(key, name.clone());
                    name
                }
            };
        }
        current
    }

    /// Returns the node's neuron and its lag. `root` names the effector.
    fn compile(&mut self, e: &Expr, root: Option<&str>) -> (String, i64) {
        match e {
            Expr::Ref { neuron, delay } => match root {
                None => (neuron.clone(), -(*delay as i64)),
                Some(target) => {
                    let before = self.delayed(neuron, delay - 1);
                    self.connect(&before, target, Weight::one());
                    (target.to_string(), 0)
                }
            },
            Expr::Or(cs) => {
                let ops: Vec<_> = cs.iter().map(|c| (c, Weight::one())).collect();
                self.operator("or", &ops, root)
            }
            Expr::And(cs) => {
                let share = Weight::new(1, cs.len() as i64);
                let ops: Vec<_> = cs.iter().map(|c| (c, share)).collect();
                self.operator("and", &ops, root)
            }
            Expr::AndNot { positive, negated } => {
                self.operator("andnot", &[(positive.as_ref(), Weight::one()), (negated.as_ref(), -Weight::one())], root)
            }
        }
    }

    fn operator(&mut self, kind: &str, operands: &[(&Expr, Weight)], root: Option<&str>) -> (String, i64) {
        let compiled: Vec<(String, i64, Weight)> = operands
            .iter()
            .map(|(c, w)| {
                let (name, k) = self.compile(c, None);
                (name, k, *w)
            })
            .collect();
        let k = operator_lag(compiled.iter().map(|c| c.1), root.is_some()) - 1;
        let name = match root {
            Some(target) => target.to_string(),
            None => {
                let name = self.fresh(kind);
                self.internals.push(name.clone());
                name
            }
        };
        for (source, lag, weight) in compiled {
            let padded = self.delayed(&source, (k - lag) as u32);
            self.connect(&padded, &name, weight);
        }
        (name, k + 1)
    }
}

/// Compiles an expression into a net whose single effector is the target.
pub fn synthesize_net(expr: &TemporalExpr) -> Result<SynthesisResult, ExprError> {
    expr.validate()?;
    let mut b = Builder { internals: Vec::new(), synapses: Vec::new(), relays: HashMap::new(), relay_count: 0, next_id: 0 };
    let (_, shift) = b.compile(&expr.body, Some(&expr.target));
    debug_assert_eq!(shift, output_shift(expr) as i64);

    let mut neurons: Vec<Neuron> = expr.inputs().into_iter().map(|name| Neuron { name, role: Role::Receptor }).collect();
    neurons.extend(b.internals.into_iter().map(|name| Neuron { name, role: Role::Internal }));
    neurons.push(Neuron { name: expr.target.clone(), role: Role::Effector });

    let shift = shift as u32;
    Ok(SynthesisResult {
        net: NetDefinition { neurons, synapses: merge_synapses(b.synapses) },
        output_shift: shift,
        output_latency: shift + expr.max_delay(),
        relay_count: b.relay_count,
    })
}
