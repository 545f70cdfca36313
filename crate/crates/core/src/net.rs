//! Discrete nets: definitions, validation, and the structure matrix.
//!
//! A net is a list of neurons, each a receptor (afferent), internal neuron,
//! or effector (efferent), plus weighted synapses between them. Weights are
//! exact rationals so that two `1/2` inputs reach the firing threshold of 1
//! exactly.
//!
//! All vectors and matrices use the canonical ordering: receptors, then
//! internals, then effectors, each group in declaration order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::Range;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numfmt::{parse_rational, rational_string, NumberError};

/// Synaptic weight. Exact so that threshold comparisons never round.
pub type Weight = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Receptor,
    Internal,
    Effector,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Receptor => "receptor",
            Role::Internal => "internal",
            Role::Effector => "effector",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neuron {
    pub name: String,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synapse {
    pub from: String,
    pub to: String,
    pub weight: Weight,
}

/// Declarative description of a net, as read from a net document.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NetDefinition {
    pub neurons: Vec<Neuron>,
    pub synapses: Vec<Synapse>,
}

impl NetDefinition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn neuron(mut self, name: impl Into<String>, role: Role) -> Self {
        self.neurons.push(Neuron { name: name.into(), role });
        self
    }

    pub fn synapse(mut self, from: impl Into<String>, to: impl Into<String>, weight: Weight) -> Self {
        self.synapses.push(Synapse { from: from.into(), to: to.into(), weight });
        self
    }

    /// Neuron indices in canonical order (receptors, internals, effectors).
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.neurons.len()).collect();
        order.sort_by_key(|&i| (self.neurons[i].role, i));
        order
    }

    pub fn names_with_role(&self, role: Role) -> Vec<&str> {
        self.neurons.iter().filter(|n| n.role == role).map(|n| n.name.as_str()).collect()
    }

    pub fn layout(&self) -> Layout {
        let count = |role| self.neurons.iter().filter(|n| n.role == role).count();
        Layout::new(count(Role::Receptor), count(Role::Internal), count(Role::Effector))
    }

    /// Parses the JSON net document.
    pub fn from_json(text: &str) -> Result<Self, NetFileError> {
        let doc: NetDocument = serde_json::from_str(text).map_err(|e| NetFileError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        doc.try_into()
    }

    /// Serializes to the JSON net document; weights print as `p/q` strings.
    pub fn to_json(&self) -> String {
        let doc = NetDocument::from(self);
        serde_json::to_string_pretty(&doc).expect("net document serializes") + "\n"
    }
}

/// Receptor/internal/effector counts, which fix the index ranges of each group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Layout {
    pub receptors: usize,
    pub internals: usize,
    pub effectors: usize,
}

impl Layout {
    pub fn new(receptors: usize, internals: usize, effectors: usize) -> Self {
        Self { receptors, internals, effectors }
    }

    pub fn len(&self) -> usize {
        self.receptors + self.internals + self.effectors
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn receptor_range(&self) -> Range<usize> {
        0..self.receptors
    }

    pub fn internal_range(&self) -> Range<usize> {
        self.receptors..self.receptors + self.internals
    }

    pub fn effector_range(&self) -> Range<usize> {
        self.receptors + self.internals..self.len()
    }
}

/// Binary activity of every neuron during one interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActivityVector {
    bits: Vec<bool>,
    layout: Layout,
}

impl ActivityVector {
    pub fn new(bits: Vec<bool>, layout: Layout) -> Result<Self, DimensionError> {
        if bits.len() != layout.len() {
            return Err(DimensionError { what: "activity vector", expected: layout.len(), found: bits.len() });
        }
        Ok(Self { bits, layout })
    }

    pub fn zeros(layout: Layout) -> Self {
        Self { bits: vec![false; layout.len()], layout }
    }

    /// Assembles a vector from its receptor, internal, and effector parts.
    pub fn from_parts(receptors: &[bool], internals: &[bool], effectors: &[bool]) -> Self {
        let layout = Layout::new(receptors.len(), internals.len(), effectors.len());
        let bits = receptors.iter().chain(internals).chain(effectors).copied().collect();
        Self { bits, layout }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn get(&self, k: usize) -> bool {
        self.bits[k]
    }

    pub fn receptors(&self) -> &[bool] {
        &self.bits[self.layout.receptor_range()]
    }

    pub fn internals(&self) -> &[bool] {
        &self.bits[self.layout.internal_range()]
    }

    pub fn effectors(&self) -> &[bool] {
        &self.bits[self.layout.effector_range()]
    }

    /// Full-length vector keeping only the components in `role`'s range.
    pub fn component(&self, role: Role) -> ActivityVector {
        let range = match role {
            Role::Receptor => self.layout.receptor_range(),
            Role::Internal => self.layout.internal_range(),
            Role::Effector => self.layout.effector_range(),
        };
        let bits = self.bits.iter().enumerate().map(|(k, &b)| b && range.contains(&k)).collect();
        ActivityVector { bits, layout: self.layout }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }
}

impl fmt::Display for ActivityVector {
    /// `(0, 1; 1, 0; 0, 0)`: groups separated by semicolons.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let group = |bits: &[bool]| bits.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(", ");
        write!(f, "({}; {}; {})", group(self.receptors()), group(self.internals()), group(self.effectors()))
    }
}

/// Net excitation per neuron before thresholding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcitationVector {
    pub values: Vec<Weight>,
    pub layout: Layout,
}

/// The normalizing operator: a neuron fires iff its net excitation is at least 1.
pub fn heaviside_normalize(v: &ExcitationVector) -> ActivityVector {
    let one = Weight::one();
    ActivityVector { bits: v.values.iter().map(|x| *x >= one).collect(), layout: v.layout }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what} has length {found}, expected {expected}")]
pub struct DimensionError {
    pub what: &'static str,
    pub expected: usize,
    pub found: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    DuplicateNeuron(String),
    UnknownNeuron { synapse: (String, String), name: String },
    SelfSynapse(String),
    IntoReceptor { from: String, to: String },
    OutOfEffector { from: String, to: String },
    DuplicateSynapse { from: String, to: String },
    NoReceptor,
    NoEffector,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNeuron(n) => write!(f, "duplicate neuron name `{n}`"),
            Violation::UnknownNeuron { synapse, name } => {
                write!(f, "synapse {} -> {} references unknown neuron `{name}`", synapse.0, synapse.1)
            }
            Violation::SelfSynapse(n) => write!(f, "self-synapse {n} -> {n}: no neuron acts upon itself"),
            Violation::IntoReceptor { from, to } => {
                write!(f, "synapse {from} -> {to} acts upon receptor `{to}`")
            }
            Violation::OutOfEffector { from, to } => {
                write!(f, "synapse {from} -> {to} leaves effector `{from}`")
            }
            Violation::DuplicateSynapse { from, to } => write!(f, "synapse {from} -> {to} declared more than once"),
            Violation::NoReceptor => f.write_str("net has no receptor"),
            Violation::NoEffector => f.write_str("net has no effector"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Warning {
    /// Positive input can never sum to the threshold.
    CanNeverAct(String),
    /// Internal neuron that nothing acts upon.
    NoInputs(String),
    /// Internal neuron that acts upon nothing.
    NoOutputs(String),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::CanNeverAct(n) => write!(f, "`{n}` can never act: its excitatory input sums below 1"),
            Warning::NoInputs(n) => write!(f, "internal `{n}` has no incoming synapse (behaves as a receptor)"),
            Warning::NoOutputs(n) => write!(f, "internal `{n}` has no outgoing synapse (behaves as an effector)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub errors: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error: {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

pub fn validate_net(def: &NetDefinition) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut roles: HashMap<&str, Role> = HashMap::new();
    for n in &def.neurons {
        if roles.insert(n.name.as_str(), n.role).is_some() {
            report.errors.push(Violation::DuplicateNeuron(n.name.clone()));
        }
    }
    if !def.neurons.iter().any(|n| n.role == Role::Receptor) {
        report.errors.push(Violation::NoReceptor);
    }
    if !def.neurons.iter().any(|n| n.role == Role::Effector) {
        report.errors.push(Violation::NoEffector);
    }

    let mut seen = HashSet::new();
    for s in &def.synapses {
        let key = (s.from.clone(), s.to.clone());
        for name in [&s.from, &s.to] {
            if !roles.contains_key(name.as_str()) {
                report.errors.push(Violation::UnknownNeuron { synapse: key.clone(), name: name.clone() });
            }
        }
        if s.from == s.to {
            report.errors.push(Violation::SelfSynapse(s.from.clone()));
        }
        if roles.get(s.to.as_str()) == Some(&Role::Receptor) {
            report.errors.push(Violation::IntoReceptor { from: s.from.clone(), to: s.to.clone() });
        }
        if roles.get(s.from.as_str()) == Some(&Role::Effector) {
            report.errors.push(Violation::OutOfEffector { from: s.from.clone(), to: s.to.clone() });
        }
        if !seen.insert(key) {
            report.errors.push(Violation::DuplicateSynapse { from: s.from.clone(), to: s.to.clone() });
        }
    }

    let mut seen_names = HashSet::new();
    for n in &def.neurons {
        if n.role == Role::Receptor || !seen_names.insert(n.name.as_str()) {
            continue;
        }
        let incoming: Vec<&Weight> =
            def.synapses.iter().filter(|s| s.to == n.name && !s.weight.is_zero()).map(|s| &s.weight).collect();
        let outgoing = def.synapses.iter().any(|s| s.from == n.name && !s.weight.is_zero());
        if n.role == Role::Internal && incoming.is_empty() {
            report.warnings.push(Warning::NoInputs(n.name.clone()));
        } else {
            let excitatory: Weight = incoming.iter().filter(|w| w.is_positive()).copied().sum();
            if excitatory < Weight::one() {
                report.warnings.push(Warning::CanNeverAct(n.name.clone()));
            }
        }
        if n.role == Role::Internal && !outgoing {
            report.warnings.push(Warning::NoOutputs(n.name.clone()));
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("invalid net:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Dimension(#[from] DimensionError),
    #[error("matrix entry {from} -> {to} violates the block structure")]
    BlockStructure { from: String, to: String },
}

/// The square matrix `F` with `F[j][k]` the weight of synapse `j -> k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMatrix {
    names: Vec<String>,
    layout: Layout,
    entries: Vec<Weight>,
}

pub fn build_structure_matrix(def: &NetDefinition) -> Result<StructureMatrix, NetError> {
    let report = validate_net(def);
    if !report.is_valid() {
        return Err(NetError::Invalid(report));
    }
    let order = def.canonical_order();
    let names: Vec<String> = order.iter().map(|&i| def.neurons[i].name.clone()).collect();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(k, n)| (n.as_str(), k)).collect();
    let n = names.len();
    let mut entries = vec![Weight::zero(); n * n];
    for s in &def.synapses {
        entries[index[s.from.as_str()] * n + index[s.to.as_str()]] = s.weight;
    }
    Ok(StructureMatrix { layout: def.layout(), names, entries })
}

impl StructureMatrix {
    /// Builds a matrix directly from canonical-order names and entries.
    pub fn from_entries(names: Vec<String>, layout: Layout, entries: Vec<Weight>) -> Result<Self, NetError> {
        let n = layout.len();
        if names.len() != n {
            return Err(DimensionError { what: "name list", expected: n, found: names.len() }.into());
        }
        if entries.len() != n * n {
            return Err(DimensionError { what: "matrix entries", expected: n * n, found: entries.len() }.into());
        }
        let m = Self { names, layout, entries };
        for j in 0..n {
            for k in 0..n {
                if !m.get(j, k).is_zero()
                    && (j == k || k < layout.receptors || layout.effector_range().contains(&j))
                {
                    return Err(NetError::BlockStructure { from: m.names[j].clone(), to: m.names[k].clone() });
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.layout.len()
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, from: usize, to: usize) -> Weight {
        self.entries[from * self.n() + to]
    }

    pub fn row(&self, from: usize) -> &[Weight] {
        let n = self.n();
        &self.entries[from * n..(from + 1) * n]
    }

    pub fn entries(&self) -> &[Weight] {
        &self.entries
    }

    /// `a·F` restricted to the rows where `a` is active.
    pub fn propagate(&self, activity: &[bool]) -> Vec<Weight> {
        let n = self.n();
        let mut out = vec![Weight::zero(); n];
        for (j, _) in activity.iter().enumerate().filter(|(_, &b)| b) {
            for (acc, w) in out.iter_mut().zip(self.row(j)) {
                if !w.is_zero() {
                    *acc += w;
                }
            }
        }
        out
    }

    /// Back to a synapse list; roles come from the layout.
    pub fn to_net_definition(&self) -> NetDefinition {
        let l = self.layout;
        let role_of = |k: usize| {
            if k < l.receptors {
                Role::Receptor
            } else if k < l.receptors + l.internals {
                Role::Internal
            } else {
                Role::Effector
            }
        };
        let neurons = self.names.iter().enumerate().map(|(k, name)| Neuron { name: name.clone(), role: role_of(k) }).collect();
        let n = self.n();
        let mut synapses = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let w = self.get(j, k);
                if !w.is_zero() {
                    synapses.push(Synapse { from: self.names[j].clone(), to: self.names[k].clone(), weight: w });
                }
            }
        }
        NetDefinition { neurons, synapses }
    }
}

/// One rectangular block of `F`, with the index ranges it occupies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub rows: Range<usize>,
    pub cols: Range<usize>,
    pub entries: Vec<Weight>,
}

impl Block {
    fn cut(f: &StructureMatrix, rows: Range<usize>, cols: Range<usize>) -> Self {
        let entries = rows.clone().flat_map(|j| cols.clone().map(move |k| (j, k))).map(|(j, k)| f.get(j, k)).collect();
        Self { rows, cols, entries }
    }

    pub fn get(&self, row: usize, col: usize) -> Weight {
        self.entries[(row - self.rows.start) * self.cols.len() + (col - self.cols.start)]
    }

    /// The block embedded in an `n x n` matrix of zeros (row-major).
    pub fn padded(&self, n: usize) -> Vec<Weight> {
        let mut out = vec![Weight::zero(); n * n];
        for j in self.rows.clone() {
            for k in self.cols.clone() {
                out[j * n + k] = self.get(j, k);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `x·B` for a full-length activity vector, full-length result.
    pub fn propagate(&self, activity: &[bool], n: usize) -> Vec<Weight> {
        let mut out = vec![Weight::zero(); n];
        for j in self.rows.clone().filter(|&j| activity[j]) {
            for k in self.cols.clone() {
                out[k] += self.get(j, k);
            }
        }
        out
    }
}

/// Receptor-internal, receptor-effector, internal-internal, internal-effector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub receptor_internal: Block,
    pub receptor_effector: Block,
    pub internal_internal: Block,
    pub internal_effector: Block,
}

pub fn partition_blocks(f: &StructureMatrix) -> Blocks {
    let l = f.layout();
    Blocks {
        receptor_internal: Block::cut(f, l.receptor_range(), l.internal_range()),
        receptor_effector: Block::cut(f, l.receptor_range(), l.effector_range()),
        internal_internal: Block::cut(f, l.internal_range(), l.internal_range()),
        internal_effector: Block::cut(f, l.internal_range(), l.effector_range()),
    }
}

#[derive(Debug, Error)]
pub enum NetFileError {
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("synapse {from} -> {to}: {source}")]
    Weight { from: String, to: String, source: NumberError },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetDocument {
    neurons: Vec<NeuronEntry>,
    synapses: Vec<SynapseEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NeuronEntry {
    name: String,
    role: Role,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SynapseEntry {
    from: String,
    to: String,
    weight: WeightEntry,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightEntry {
    Integer(i64),
    Text(String),
    Float(f64),
}

impl TryFrom<NetDocument> for NetDefinition {
    type Error = NetFileError;

    fn try_from(doc: NetDocument) -> Result<Self, Self::Error> {
        let neurons = doc.neurons.into_iter().map(|n| Neuron { name: n.name, role: n.role }).collect();
        let synapses = doc
            .synapses
            .into_iter()
            .map(|s| {
                let weight = match &s.weight {
                    WeightEntry::Integer(i) => Ok(Weight::from_integer(*i)),
                    WeightEntry::Text(t) => parse_rational(t),
                    WeightEntry::Float(x) => Err(NumberError::DecimalNotAllowed(x.to_string())),
                };
                weight
                    .map(|weight| Synapse { from: s.from.clone(), to: s.to.clone(), weight })
                    .map_err(|source| NetFileError::Weight { from: s.from, to: s.to, source })
            })
            .collect::<Result<_, _>>()?;
        Ok(NetDefinition { neurons, synapses })
    }
}

impl From<&NetDefinition> for NetDocument {
    fn from(def: &NetDefinition) -> Self {
        NetDocument {
            neurons: def.neurons.iter().map(|n| NeuronEntry { name: n.name.clone(), role: n.role }).collect(),
            synapses: def
                .synapses
                .iter()
                .map(|s| SynapseEntry {
                    from: s.from.clone(),
                    to: s.to.clone(),
                    weight: WeightEntry::Text(rational_string(&s.weight)),
                })
                .collect(),
        }
    }
}

/// Synapse weights keyed by `(from, to)`, summing duplicates and dropping zeros.
pub(crate) fn merge_synapses(synapses: impl IntoIterator<Item = Synapse>) -> Vec<Synapse> {
    let mut order = Vec::new();
    let mut total: BTreeMap<(String, String), Weight> = BTreeMap::new();
    for s in synapses {
        let key = (s.from, s.to);
        match total.get_mut(&key) {
            Some(w) => *w += s.weight,
            None => {
                order.push(key.clone());
                total.insert(key, s.weight);
            }
        }
    }
    order
        .into_iter()
        .filter_map(|key| {
            let weight = total[&key];
            (!weight.is_zero()).then_some(Synapse { from: key.0, to: key.1, weight })
        })
        .collect()
}

/// The six-neuron worked example (heat and cold illusion): receptors 1 and 2,
/// internals a and b, effectors 3 and 4.
///
/// Neuron 3 realizes `N1(t-1) | N2(t-3) . ~N2(t-2)` and neuron 4 realizes
/// `N2(t-2) . N2(t-1)`.
pub fn worked_example_net() -> NetDefinition {
    let half = Weight::new(1, 2);
    let one = Weight::one();
    NetDefinition::new()
        .neuron("1", Role::Receptor)
        .neuron("2", Role::Receptor)
        .neuron("a", Role::Internal)
        .neuron("b", Role::Internal)
        .neuron("3", Role::Effector)
        .neuron("4", Role::Effector)
        .synapse("1", "3", one)
        .synapse("2", "a", one)
        .synapse("2", "b", -one)
        .synapse("2", "4", half)
        .synapse("a", "b", one)
        .synapse("a", "4", half)
        .synapse("b", "3", one)
}
