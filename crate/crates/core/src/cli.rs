//! The `camelot` command line.
//!
//! Exit status is 0 on success, 1 when the inputs are well formed but the
//! answer is negative or the model rejects them (an invalid net, a refuted
//! equivalence), and 2 for unreadable or malformed input and usage errors.
//!
//! Commands that produce an artifact (a CSV grid, a net file) write it to
//! `--out` or, failing that, to stdout. Their one-line summaries then go to
//! stdout when `--out` is given and to stderr otherwise, so piped output
//! stays clean.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use crate::analysis::{
    circuit_parameter, complete_activity_class, monte_carlo_firing_rate, rosette_multi_pattern_possible,
    to_probability_formula, uniqueness_guaranteed, DisjunctionMode, FiberCircuit, ProbError,
};
use crate::engine::{run_matrix, ActivityTrace, EngineError};
use crate::grid::{excitation_csv, parse_stimulus_csv, select_trace_csv, two_factor_csv, two_factor_net_csv};
use crate::net::{build_structure_matrix, validate_net, NetDefinition, NetError, StructureMatrix};
use crate::numfmt::{big_rational_to_f64, format_sig, parse_exact, rational_string};
use crate::pitts::{detect_steady_state, diagonal_fixed_point, run_excitation, SimpleCircuit};
use crate::tpe::{parse_expression, synthesize_net, verify_equivalence, Equivalence, ParseError, TemporalExpr};
use crate::two_factor::{
    closed_form_constant_input, cross_couple_weights, integrate_from, pulse_train_response, pulse_train_trace,
    simulate_two_factor_net_from, steady_state_fires, ExternalInput, PulseTrain, TwoFactorParams, TwoFactorState,
    TwoFactorTrace,
};

/// Seed used by `prob` when neither `--seed` nor `CAMELOT_SEED` is set.
pub const DEFAULT_SEED: u64 = 1943;

#[derive(Debug, Parser)]
#[command(name = "camelot", version, about = "Simulate and analyze McCulloch-Pitts nets, two-factor neurons and excitation matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a net file for structural errors and dead neurons.
    Validate {
        #[arg(long)]
        net: PathBuf,
    },
    /// Run a net on a stimulus and write the activity grid.
    SimulateMcp(SimulateArgs),
    /// Compile a temporal expression into a net file.
    Synthesize {
        /// For example `N3(t) = N1(t-1) . ~N2(t-1)`.
        expr: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a net against an expression on every input sequence.
    Verify {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        expr: String,
        /// Number of time steps of free input to enumerate.
        #[arg(long, default_value_t = 6)]
        horizon: usize,
    },
    /// Integrate the two-factor neuron, a pulse train, or the cross-coupled net.
    TwoFactor(TwoFactorArgs),
    /// Compute the excitation matrix of a simple circuit.
    Pitts(PittsArgs),
    /// Circuit-parameter predicates for circuits of fibers such as `(1/2, -3)`.
    Analyze {
        #[arg(required = true, allow_hyphen_values = true)]
        circuits: Vec<String>,
        /// Report the rosette condition even for a single circuit.
        #[arg(long)]
        rosette: bool,
    },
    /// Firing probability of an expression: closed form per mode and Monte Carlo.
    Prob(ProbArgs),
    /// Run a net and export selected columns of its activity grid.
    ExportGrid {
        #[command(flatten)]
        sim: SimulateArgs,
        /// Comma-separated neuron names, in output order.
        #[arg(long, value_delimiter = ',')]
        select: Option<Vec<String>>,
    },
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Scenario JSON naming the net, stimulus, horizon and output.
    #[arg(long, conflicts_with_all = ["net", "stimulus"])]
    scenario: Option<PathBuf>,
    #[arg(long, required_unless_present = "scenario")]
    net: Option<PathBuf>,
    #[arg(long, required_unless_present = "scenario")]
    stimulus: Option<PathBuf>,
    #[arg(long)]
    horizon: Option<usize>,
    /// Initial internal state as bits, e.g. `01` or `0,1`. Defaults to rest.
    #[arg(long)]
    init: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TwoFactorArgs {
    #[arg(long, default_value_t = 2.0)]
    exc_gain: f64,
    #[arg(long, default_value_t = 1.0)]
    exc_decay: f64,
    #[arg(long, default_value_t = 1.0)]
    inh_gain: f64,
    #[arg(long, default_value_t = 1.0)]
    inh_decay: f64,
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    /// Constant input level.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    input: f64,
    /// End time of the integration.
    #[arg(long, default_value_t = 1.0)]
    until: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Initial `e,j`. Defaults to rest.
    #[arg(long, value_delimiter = ',', num_args = 2, allow_hyphen_values = true)]
    init: Option<Vec<f64>>,
    #[arg(long, requires_all = ["width", "interval", "count"])]
    amplitude: Option<f64>,
    #[arg(long, requires = "amplitude")]
    width: Option<f64>,
    #[arg(long, requires = "amplitude")]
    interval: Option<f64>,
    #[arg(long, requires = "amplitude")]
    count: Option<usize>,
    /// Four units: two inputs each exciting their own output and inhibiting the other.
    #[arg(long, conflicts_with = "amplitude")]
    cross_couple: bool,
    /// Coupling strength from an input unit to its own output unit.
    #[arg(long, default_value_t = 1.0)]
    excite: f64,
    /// Coupling strength from an input unit to the opposite output unit.
    #[arg(long, default_value_t = 1.0)]
    inhibit: f64,
    /// External drive of the two input units, e.g. `1,0.5`. Defaults to `--input` for both.
    #[arg(long, value_delimiter = ',', num_args = 2, allow_hyphen_values = true)]
    drive: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PittsArgs {
    /// Intrinsic excitation per synapse, e.g. `1,1`.
    #[arg(long, allow_hyphen_values = true)]
    sigma: String,
    /// Activity parameter per synapse, e.g. `1/2,1/2`.
    #[arg(long, allow_hyphen_values = true)]
    activity: String,
    /// First column of the matrix. Defaults to zeros.
    #[arg(long, allow_hyphen_values = true)]
    initial: Option<String>,
    #[arg(long, default_value_t = 40)]
    columns: usize,
    /// Relative tolerance for steady-state detection.
    #[arg(long, default_value_t = crate::pitts::DEFAULT_TOLERANCE)]
    tol: f64,
    /// One row per interval instead of one row per synapse.
    #[arg(long)]
    transpose: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    PaperSum,
    Independent,
}

impl From<ModeArg> for DisjunctionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PaperSum => DisjunctionMode::PaperSum,
            ModeArg::Independent => DisjunctionMode::Independent,
        }
    }
}

#[derive(Debug, Args)]
struct ProbArgs {
    #[arg(long)]
    expr: String,
    /// Input firing probabilities, e.g. `N1=0.5,N2=1/4`.
    #[arg(long = "p", value_delimiter = ',', required = true)]
    probabilities: Vec<String>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, env = "CAMELOT_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Mode the Monte-Carlo estimate is compared against.
    #[arg(long, value_enum, default_value_t = ModeArg::Independent)]
    mode: ModeArg,
}

#[derive(Debug, Error)]
enum CliError {
    /// Malformed or unreadable input; exit 2.
    #[error("{0}")]
    Input(String),
    /// Well-formed input the model rejects; exit 1.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn status(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

type CliResult = Result<i32, CliError>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    /// Writes the artifact and returns where its summary should go.
    fn emit(&mut self, artifact: &str, path: Option<&Path>) -> Result<&mut dyn Write, CliError> {
        match path {
            Some(p) => {
                std::fs::write(p, artifact).map_err(|e| CliError::Input(format!("cannot write {}: {e}", p.display())))?;
                Ok(&mut *self.out)
            }
            None => {
                self.out.write_all(artifact.as_bytes()).map_err(io_error)?;
                Ok(&mut *self.err)
            }
        }
    }
}

fn io_error(e: std::io::Error) -> CliError {
    CliError::Input(format!("write failed: {e}"))
}

/// Entry point for the binary: parses the process arguments and returns the
/// exit status.
pub fn run() -> i32 {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one command with explicit arguments (including the program name) and
/// output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            e.status()
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> CliResult {
    match command {
        Command::Validate { net } => cmd_validate(&net, io),
        Command::SimulateMcp(sim) => cmd_simulate(&sim, None, io),
        Command::ExportGrid { sim, select } => cmd_simulate(&sim, select.as_deref(), io),
        Command::Synthesize { expr, out } => cmd_synthesize(&expr, out.as_deref(), io),
        Command::Verify { net, expr, horizon } => cmd_verify(&net, &expr, horizon, io),
        Command::TwoFactor(args) => cmd_two_factor(&args, io),
        Command::Pitts(args) => cmd_pitts(&args, io),
        Command::Analyze { circuits, rosette } => cmd_analyze(&circuits, rosette, io),
        Command::Prob(args) => cmd_prob(&args, io),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_net(path: &Path) -> Result<NetDefinition, CliError> {
    NetDefinition::from_json(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn net_error(e: NetError) -> CliError {
    match e {
        NetError::Invalid(report) => CliError::Domain(format!("invalid net\n{}", report.to_string().trim_end())),
        other => CliError::Domain(other.to_string()),
    }
}

fn parse_expr(text: &str) -> Result<TemporalExpr, CliError> {
    parse_expression(text).map_err(|e: ParseError| {
        let caret = " ".repeat(e.position);
        CliError::Input(format!("cannot parse expression at column {}: {}\n  {text}\n  {caret}^", e.position + 1, e.kind))
    })
}

fn cmd_validate(path: &Path, io: &mut Io<'_>) -> CliResult {
    let net = load_net(path)?;
    let report = validate_net(&net);
    write!(io.out, "{report}").map_err(io_error)?;
    writeln!(
        io.out,
        "{}: {} errors, {} warnings",
        if report.is_valid() { "valid" } else { "invalid" },
        report.errors.len(),
        report.warnings.len()
    )
    .map_err(io_error)?;
    Ok(if report.is_valid() { 0 } else { 1 })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Scenario {
    net: PathBuf,
    stimulus: PathBuf,
    horizon: usize,
    #[serde(default)]
    init: Option<Vec<u8>>,
    #[serde(default)]
    out: Option<PathBuf>,
}

struct Simulation {
    matrix: StructureMatrix,
    trace: ActivityTrace,
    out: Option<PathBuf>,
}

fn parse_bits(text: &str) -> Result<Vec<bool>, CliError> {
    text.chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CliError::Input(format!("initial state `{text}`: `{other}` is not 0 or 1"))),
        })
        .collect()
}

fn simulate(args: &SimulateArgs) -> Result<Simulation, CliError> {
    let (net_path, stim_path, horizon, init, out) = match &args.scenario {
        Some(path) => {
            let scenario: Scenario = serde_json::from_str(&read(path)?).map_err(|e| {
                CliError::Input(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
            })?;
            let base = path.parent().unwrap_or(Path::new("."));
            let init = match (&args.init, scenario.init) {
                (Some(text), _) => Some(parse_bits(text)?),
                (None, Some(bits)) => Some(
                    bits.iter()
                        .map(|b| match b {
                            0 => Ok(false),
                            1 => Ok(true),
                            _ => Err(CliError::Input(format!("{}: init entries must be 0 or 1", path.display()))),
                        })
                        .collect::<Result<_, _>>()?,
                ),
                (None, None) => None,
            };
            (
                base.join(&scenario.net),
                base.join(&scenario.stimulus),
                args.horizon.unwrap_or(scenario.horizon),
                init,
                args.out.clone().or(scenario.out.map(|o| base.join(o))),
            )
        }
        None => (
            args.net.clone().expect("required by clap"),
            args.stimulus.clone().expect("required by clap"),
            args.horizon.ok_or_else(|| CliError::Input("--horizon is required without --scenario".into()))?,
            args.init.as_deref().map(parse_bits).transpose()?,
            args.out.clone(),
        ),
    };
    if horizon == 0 {
        return Err(CliError::Input("horizon must be at least 1".into()));
    }
    let net = load_net(&net_path)?;
    let matrix = build_structure_matrix(&net).map_err(net_error)?;
    let layout = matrix.layout();
    let receptors = matrix.names()[layout.receptor_range()].to_vec();
    let stim = parse_stimulus_csv(&read(&stim_path)?, &receptors)
        .map_err(|e| CliError::Input(format!("{}: {e}", stim_path.display())))?;
    let init = init.unwrap_or_else(|| vec![false; layout.internals]);
    let trace = run_matrix(&matrix, &stim, &init, horizon).map_err(|e| match e {
        EngineError::Net(e) => net_error(e),
        other => CliError::Input(other.to_string()),
    })?;
    Ok(Simulation { matrix, trace, out })
}

fn cmd_simulate(args: &SimulateArgs, select: Option<&[String]>, io: &mut Io<'_>) -> CliResult {
    let sim = simulate(args)?;
    let grid = select_trace_csv(&sim.trace, select).map_err(|e| CliError::Input(e.to_string()))?;
    let summary = io.emit(&grid, sim.out.as_deref())?;
    let layout = sim.matrix.layout();
    let last = sim.trace.states.last().expect("horizon >= 1");
    let effectors: Vec<String> = sim.matrix.names()[layout.effector_range()]
        .iter()
        .zip(last.effectors())
        .map(|(n, b)| format!("{n}={}", *b as u8))
        .collect();
    writeln!(summary, "t={} {}", sim.trace.end_time(), effectors.join(" ")).map_err(io_error)?;
    Ok(0)
}

fn cmd_synthesize(text: &str, out: Option<&Path>, io: &mut Io<'_>) -> CliResult {
    let expr = parse_expr(text)?;
    let s = synthesize_net(&expr).map_err(|e| CliError::Domain(e.to_string()))?;
    let summary = io.emit(&s.net.to_json(), out)?;
    writeln!(
        summary,
        "neurons={} relays={} output_shift={} output_latency={}",
        s.net.neurons.len(),
        s.relay_count,
        s.output_shift,
        s.output_latency
    )
    .map_err(io_error)?;
    Ok(0)
}

fn cmd_verify(path: &Path, text: &str, horizon: usize, io: &mut Io<'_>) -> CliResult {
    let net = load_net(path)?;
    let expr = parse_expr(text)?;
    match verify_equivalence(&net, &expr, horizon) {
        Ok(Equivalence::Holds) => {
            writeln!(io.out, "equivalent: the net realizes `{expr}` over horizon {horizon}").map_err(io_error)?;
            Ok(0)
        }
        Ok(Equivalence::Refuted(cx)) => {
            writeln!(io.out, "not equivalent: {cx}").map_err(io_error)?;
            Ok(1)
        }
        Err(crate::tpe::VerifyError::Net(e)) => Err(net_error(e)),
        Err(e) => Err(CliError::Domain(e.to_string())),
    }
}

fn model_error(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn cmd_two_factor(args: &TwoFactorArgs, io: &mut Io<'_>) -> CliResult {
    let params = TwoFactorParams::new(args.exc_gain, args.exc_decay, args.inh_gain, args.inh_decay, args.theta)
        .map_err(model_error)?;
    let initial = match args.init.as_deref() {
        Some([e, j]) => TwoFactorState { excitation: *e, inhibition: *j },
        _ => TwoFactorState::REST,
    };
    let state_line = |label: &str, t: f64, e: f64, j: f64, fires: bool| {
        format!("{label}t={} e={} j={} output={}", format_sig(t), format_sig(e), format_sig(j), fires as u8)
    };

    if args.cross_couple {
        let weights = cross_couple_weights(args.excite, args.inhibit);
        let drive = args.drive.clone().unwrap_or_else(|| vec![args.input, args.input]);
        let (d1, d2) = (drive[0], drive[1]);
        let external: Vec<ExternalInput<'_>> = vec![
            Box::new(move |_| d1),
            Box::new(move |_| d2),
            Box::new(|_| 0.0),
            Box::new(|_| 0.0),
        ];
        let traces = simulate_two_factor_net_from(&[params; 4], &[initial; 4], &weights, &external, args.dt, args.until)
            .map_err(model_error)?;
        let summary = io.emit(&two_factor_net_csv(&traces), args.out.as_deref())?;
        for (k, tr) in traces.iter().enumerate() {
            let s = tr.last();
            writeln!(summary, "{}", state_line(&format!("unit {} ", k + 1), s.t, s.excitation, s.inhibition, s.fires))
                .map_err(io_error)?;
        }
        return Ok(0);
    }

    if let (Some(amplitude), Some(width), Some(interval), Some(count)) =
        (args.amplitude, args.width, args.interval, args.count)
    {
        let train = PulseTrain::new(amplitude, width, interval, count).map_err(model_error)?;
        let trace = pulse_train_trace(&params, &train, args.dt).map_err(model_error)?;
        let peaks = pulse_train_response(&params, &train, args.dt).map_err(model_error)?;
        let summary = io.emit(&two_factor_csv(&trace), args.out.as_deref())?;
        for (p, peak) in peaks.iter().enumerate() {
            writeln!(summary, "pulse {} peak={}", p + 1, format_sig(*peak)).map_err(io_error)?;
        }
        return Ok(0);
    }

    let input = args.input;
    let trace: TwoFactorTrace =
        integrate_from(&params, initial, |_| input, args.dt, args.until).map_err(model_error)?;
    let summary = io.emit(&two_factor_csv(&trace), args.out.as_deref())?;
    let s = trace.last();
    writeln!(summary, "{}", state_line("", s.t, s.excitation, s.inhibition, s.fires)).map_err(io_error)?;
    if initial == TwoFactorState::REST {
        let exact = closed_form_constant_input(&params, input, s.t);
        writeln!(summary, "closed-form e={} j={}", format_sig(exact.excitation), format_sig(exact.inhibition))
            .map_err(io_error)?;
    }
    writeln!(summary, "steady-state output={}", steady_state_fires(&params, input) as u8).map_err(io_error)?;
    Ok(0)
}

fn parse_reals(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|v| parse_exact(v).map(|q| big_rational_to_f64(&q)))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(format!("--{flag} `{text}`: {e}")))
}

fn cmd_pitts(args: &PittsArgs, io: &mut Io<'_>) -> CliResult {
    let sigma = parse_reals("sigma", &args.sigma)?;
    let activity = parse_reals("activity", &args.activity)?;
    let circuit = SimpleCircuit::new(sigma, activity).map_err(model_error)?;
    let initial = match &args.initial {
        Some(text) => parse_reals("initial", text)?,
        None => vec![0.0; circuit.len()],
    };
    if args.columns == 0 {
        return Err(CliError::Input("--columns must be at least 1".into()));
    }
    let matrix = run_excitation(&circuit, &initial, args.columns).map_err(model_error)?;
    let summary = io.emit(&excitation_csv(&matrix, args.transpose), args.out.as_deref())?;
    match detect_steady_state(&matrix, args.tol) {
        Some(s) => writeln!(summary, "steady-state from interval {s}"),
        None => writeln!(summary, "no steady state within {} columns", matrix.column_count()),
    }
    .map_err(io_error)?;
    for row in 1..=circuit.len() {
        if let Some(v) = diagonal_fixed_point(&circuit, row) {
            writeln!(summary, "row {row} limit={}", format_sig(v)).map_err(io_error)?;
        }
    }
    Ok(0)
}

fn cmd_analyze(texts: &[String], rosette: bool, io: &mut Io<'_>) -> CliResult {
    let circuits = texts
        .iter()
        .map(|t| FiberCircuit::parse(t).map_err(|e| CliError::Input(format!("circuit `{t}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    for c in &circuits {
        if circuits.len() > 1 {
            write!(io.out, "{c} ").map_err(io_error)?;
        }
        writeln!(
            io.out,
            "gamma={} unique={} complete={}",
            rational_string(&circuit_parameter(c)),
            uniqueness_guaranteed(c),
            complete_activity_class(c)
        )
        .map_err(io_error)?;
    }
    if rosette || circuits.len() > 1 {
        let possible = rosette_multi_pattern_possible(&circuits).map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(io.out, "rosette-multi-pattern={possible}").map_err(io_error)?;
    }
    Ok(0)
}

fn parse_probabilities(entries: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    entries
        .iter()
        .map(|entry| {
            let (name, value) = entry
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("--p `{entry}`: expected NAME=PROBABILITY")))?;
            let value = parse_exact(value).map_err(|e| CliError::Input(format!("--p `{entry}`: {e}")))?;
            Ok((name.trim().to_string(), big_rational_to_f64(&value)))
        })
        .collect()
}

fn cmd_prob(args: &ProbArgs, io: &mut Io<'_>) -> CliResult {
    let expr = parse_expr(&args.expr)?;
    let inputs = parse_probabilities(&args.probabilities)?;
    let prob_error = |e: ProbError| CliError::Input(e.to_string());
    writeln!(io.out, "expression: {expr}").map_err(io_error)?;
    let mut compared = 0.0;
    for mode in [DisjunctionMode::PaperSum, DisjunctionMode::Independent] {
        let formula = to_probability_formula(&expr, mode);
        let value = formula.eval(&inputs).map_err(prob_error)?;
        if mode == DisjunctionMode::from(args.mode) {
            compared = value;
        }
        writeln!(io.out, "{mode}: {formula} = {}", format_sig(value)).map_err(io_error)?;
    }
    let est = monte_carlo_firing_rate(&expr, &inputs, args.trials, args.seed).map_err(prob_error)?;
    writeln!(io.out, "monte-carlo: {est}, seed {}", args.seed).map_err(io_error)?;
    let diff = est.rate - compared;
    let z = if est.std_error > 0.0 {
        format_sig(diff / est.std_error)
    } else if diff == 0.0 {
        "0".to_string()
    } else {
        "inf".to_string()
    };
    writeln!(
        io.out,
        "monte-carlo minus {}: {} ({z} standard errors)",
        DisjunctionMode::from(args.mode),
        format_sig(diff)
    )
    .map_err(io_error)?;
    Ok(0)
}
