//! Corpora shared by the integration tests.
#![allow(dead_code)]

use camelot::{Expr, NetDefinition, Role, TemporalExpr, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Weights the brute-force suites draw from; zero means "no synapse".
pub fn weight_palette() -> [Weight; 5] {
    [Weight::from_integer(0), Weight::new(-1, 1), Weight::new(-1, 2), Weight::new(1, 2), Weight::new(1, 1)]
}

/// `(receptors, internals, effectors)` with at least one receptor and one
/// effector and at most `max` neurons in total.
pub fn layouts(max: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for total in 2..=max {
        for r in 1..total {
            for e in 1..=total - r {
                out.push((r, total - r - e, e));
            }
        }
    }
    out
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// Every synapse slot the block structure allows, for a layout.
pub fn synapse_slots(layout: (usize, usize, usize)) -> Vec<(String, String)> {
    let (r, i, e) = layout;
    let (rs, is, es) = (names("r", r), names("i", i), names("e", e));
    let mut slots = Vec::new();
    for from in rs.iter().chain(&is) {
        for to in is.iter().chain(&es) {
            if from != to {
                slots.push((from.clone(), to.clone()));
            }
        }
    }
    slots
}

pub fn net_from_choice(layout: (usize, usize, usize), weights: &[Weight]) -> NetDefinition {
    let (r, i, e) = layout;
    let mut net = NetDefinition::new();
    for n in names("r", r) {
        net = net.neuron(n, Role::Receptor);
    }
    for n in names("i", i) {
        net = net.neuron(n, Role::Internal);
    }
    for n in names("e", e) {
        net = net.neuron(n, Role::Effector);
    }
    for ((from, to), w) in synapse_slots(layout).into_iter().zip(weights) {
        if *w != Weight::from_integer(0) {
            net = net.synapse(from, to, *w);
        }
    }
    net
}

/// A fixed enumeration of small nets for the split-recursion suite.
///
/// Layouts with few synapse slots are enumerated completely. Larger ones
/// are sampled with a fixed seed, fewer of them when the layout has many
/// receptors (their exhaustive stimuli are expensive).
pub fn split_suite_nets() -> Vec<NetDefinition> {
    let palette = weight_palette();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut nets = Vec::new();
    for layout in layouts(5) {
        let slots = synapse_slots(layout).len();
        let stimuli = 1usize << (4 * layout.0 + layout.1);
        let cap = (200_000 / stimuli).clamp(6, 120);
        let total = palette.len().pow(slots as u32);
        if total <= cap {
            for code in 0..total {
                let choice: Vec<Weight> =
                    (0..slots).map(|s| palette[code / palette.len().pow(s as u32) % palette.len()]).collect();
                nets.push(net_from_choice(layout, &choice));
            }
        } else {
            for _ in 0..cap {
                let choice: Vec<Weight> = (0..slots).map(|_| palette[rng.gen_range(0..palette.len())]).collect();
                nets.push(net_from_choice(layout, &choice));
            }
        }
    }
    nets
}

/// Every bit-frame sequence of `len` frames of `width` bits.
pub fn all_sequences(width: usize, len: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    (0u64..1 << (width * len))
        .map(move |code| (0..len).map(|t| (0..width).map(|r| code >> (t * width + r) & 1 == 1).collect()).collect())
}

fn leaves(inputs: &[&str]) -> Vec<Expr> {
    inputs.iter().flat_map(|n| (1..=3).map(move |d| Expr::reference(*n, d))).collect()
}

/// Operator nodes one level above `below`, combined with `leaves`.
fn combine(below: &[Expr], leaves: &[Expr]) -> Vec<Expr> {
    let mut out = Vec::new();
    for (i, x) in below.iter().enumerate() {
        for (j, y) in leaves.iter().enumerate() {
            let same_pool = std::ptr::eq(below, leaves);
            if !(same_pool && i == j) {
                if !same_pool || i < j {
                    out.push(Expr::Or(vec![x.clone(), y.clone()]));
                    out.push(Expr::And(vec![x.clone(), y.clone()]));
                }
                out.push(Expr::and_not(x.clone(), y.clone()));
            }
        }
    }
    out
}

fn to_exprs(bodies: Vec<Expr>) -> Vec<TemporalExpr> {
    bodies.into_iter().map(|b| TemporalExpr::new("OUT", b).expect("corpus expressions are well formed")).collect()
}

/// Every expression of operator depth at most 2 over the given inputs with
/// delays 1 to 3.
pub fn shallow_corpus(inputs: &[&str]) -> Vec<TemporalExpr> {
    let l = leaves(inputs);
    let d1 = combine(&l, &l);
    let d2 = combine(&d1, &l);
    to_exprs(l.into_iter().chain(d1).chain(d2).collect())
}

/// Depth-3 expressions over three inputs: depth-2 nodes combined with
/// leaves and with depth-1 nodes under every operator, keeping every
/// `stride`-th one.
pub fn deep_corpus(stride: usize) -> Vec<TemporalExpr> {
    let l = leaves(&["X", "Y", "Z"]);
    let d1 = combine(&l, &l);
    let d2 = combine(&d1, &l);
    let mut d3 = combine(&d2, &l);
    // Operators over two compound operands, with a negated conjunction where legal.
    for (k, x) in d2.iter().enumerate().step_by(7) {
        let y = &d1[k % d1.len()];
        d3.push(Expr::Or(vec![x.clone(), y.clone()]));
        d3.push(Expr::And(vec![y.clone(), x.clone()]));
        if let Expr::And(_) = y {
            d3.push(Expr::and_not(x.clone(), y.clone()));
        }
    }
    to_exprs(d3.into_iter().step_by(stride.max(1)).collect())
}

/// Output of one invocation of the `camelot` binary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliRun {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str], dir: &std::path::Path, seed_env: Option<&str>) -> CliRun {
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_camelot"));
    cmd.args(args).current_dir(dir).env_remove("CAMELOT_SEED");
    if let Some(seed) = seed_env {
        cmd.env("CAMELOT_SEED", seed);
    }
    let out = cmd.output().expect("binary runs");
    CliRun {
        status: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub const WORKED_NET_JSON: &str = include_str!("../../examples/data/worked_example.json");

/// A scratch directory holding the worked-example net, a few stimuli and a
/// scenario, plus broken variants for the error paths.
pub fn cli_fixture() -> tempfile::TempDir {
    let dir = tempfile::tempdir().expect("temp dir");
    let write = |name: &str, text: &str| std::fs::write(dir.path().join(name), text).expect("write fixture");
    write("net.json", WORKED_NET_JSON);
    write("single.csv", "t,1,2\n-3,0,1\n");
    write("double.csv", "t,1,2\n-2,0,1\n-1,0,1\n");
    write("silent.csv", "t,1,2\n0,0,0\n");
    write("scenario.json", r#"{"net": "net.json", "stimulus": "single.csv", "horizon": 3, "out": "trace.csv"}"#);
    write(
        "self.json",
        r#"{"neurons": [{"name": "x", "role": "receptor"}, {"name": "m", "role": "internal"}, {"name": "y", "role": "effector"}],
            "synapses": [{"from": "x", "to": "m", "weight": "1"}, {"from": "m", "to": "m", "weight": "1/2"}, {"from": "m", "to": "y", "weight": "1"}]}"#,
    );
    write("broken.json", "{\"neurons\": [\n  {\"name\": \"x\", \"role\": \"receptor\"},\n  oops\n]}");
    dir
}
