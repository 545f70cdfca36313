//! Simulator and analysis toolkit for the founding models of neural networks.
//!
//! The crate covers five model families, each in its own module:
//!
//! - [`net`] and [`engine`]: discrete McCulloch-Pitts nets described by a
//!   structure matrix of exact rational weights, advanced one synaptic delay
//!   at a time by thresholding `r(t) + a(t-1)·F` at 1.
//! - [`tpe`]: temporal propositional expressions (`N3(t) = N1(t-1) . ~N2(t-1)`),
//!   compiled to nets and checked against them by exhaustive enumeration.
//! - [`two_factor`]: the continuous excitation/inhibition neuron with a
//!   Heaviside output, integrated by fixed-step Runge-Kutta.
//! - [`pitts`]: the excitation-matrix recursion for a simple circuit of
//!   synapses, with steady-state detection.
//! - [`analysis`]: circuit-parameter predicates and the conversion of logical
//!   expressions into firing-probability formulas.
//!
//! [`cli`] wraps all of it behind the `camelot` binary, and [`grid`] writes
//! the CSV grids it exports.

pub mod analysis;
pub mod cli;
pub mod engine;
pub mod grid;
pub mod net;
pub mod numfmt;
pub mod pitts;
pub mod tpe;
pub mod two_factor;

pub use engine::{run, run_split, step, ActivityTrace, SplitTrace, StimulusSequence};
pub use net::{
    build_structure_matrix, heaviside_normalize, partition_blocks, validate_net, ActivityVector,
    ExcitationVector, Layout, NetDefinition, Role, StructureMatrix, ValidationReport, Weight,
};
pub use tpe::{
    format_expression, parse_expression, synthesize_net, verify_equivalence, Expr, TemporalExpr,
};
