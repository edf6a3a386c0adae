//! The `lmp` command line tool: generate, solve, check and evaluate
//! (lifted) multicut instances stored in the text formats of
//! [`lifted_multicut::formats`].
//!
//! Exit codes: 0 success (or feasible labeling), 1 usage error, 2 unreadable
//! or malformed input, 3 infeasible labeling.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lifted_multicut::formats::{self, FileError};
use lifted_multicut::generators::{gen_grid_with_rule, gen_random, EdgeRule, RandomInstanceParams};
use lifted_multicut::{
    check_feasibility, gaec, klj_with_options, labeling_from_partition, rand_index, solve_exact,
    variation_of_information_with_base, KljOptions, LiftingParams, LogBase, SolveError, SolveReport,
    DEFAULT_OUTER_ITERATION_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lmp", version, about = "Minimum cost (lifted) multicut toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a lifted multicut instance from a pixel boundary-probability grid.
    GenGrid(GenGridArgs),
    /// Write a seeded random instance.
    GenRandom(GenRandomArgs),
    /// Solve an instance and write the resulting partition.
    Solve(SolveArgs),
    /// Check a 01 edge labeling for feasibility.
    Check(CheckArgs),
    /// Compare a predicted partition with a ground truth partition.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    /// p* = 0.5, d* = 10
    Image,
    /// p* = 0.55, d* = 70
    Mesh,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Mean,
    Max,
}

#[derive(Debug, clap::Args)]
struct GenGridArgs {
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    /// Row-major grid of per-pixel boundary probabilities.
    #[arg(long)]
    probs: PathBuf,
    /// Prior cut probability (default from --preset).
    #[arg(long)]
    pstar: Option<f64>,
    /// Largest hop distance of lifted edges (default from --preset); 1
    /// gives a plain multicut instance.
    #[arg(long)]
    dstar: Option<usize>,
    #[arg(long, value_enum, default_value = "image")]
    preset: Preset,
    /// How two pixel values combine into an edge probability.
    #[arg(long, value_enum, default_value = "mean")]
    edge_rule: Rule,
    /// Search geodesics in the whole graph instead of the d*-ball.
    #[arg(long)]
    no_restrict: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, clap::Args)]
struct GenRandomArgs {
    #[arg(long)]
    nodes: usize,
    /// Probability of each extra (non-tree) edge.
    #[arg(long)]
    density: f64,
    #[arg(long)]
    seed: u64,
    /// Probability of each pair at hop distance 2 or 3 becoming lifted.
    #[arg(long, default_value_t = 0.5)]
    lift_fraction: f64,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    cost_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    cost_max: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Gaec,
    Klj,
    GaecKlj,
    Exact,
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long = "in")]
    input: PathBuf,
    /// Starting partition for klj (default: the GAEC result).
    #[arg(long)]
    init: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    /// Write the per-step objective changes as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the 01 edge labeling of the result.
    #[arg(long)]
    emit_labels: Option<PathBuf>,
    /// Outer iteration cap of klj.
    #[arg(long, default_value_t = DEFAULT_OUTER_ITERATION_CAP)]
    max_iterations: usize,
}

#[derive(Debug, clap::Args)]
struct CheckArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    labels: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Metric {
    Vi,
    Ri,
}

#[derive(Debug, clap::Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    metric: Metric,
    #[arg(long)]
    pred: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    /// Report VI in nats instead of bits.
    #[arg(long)]
    nats: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Input(String),
    Infeasible,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Infeasible => f.write_str("labeling is infeasible"),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Infeasible => EXIT_INFEASIBLE,
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn input(path: &Path, e: impl fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            };
        }
    };
    let result = match cli.command {
        Command::GenGrid(a) => gen_grid_cmd(a, out),
        Command::GenRandom(a) => gen_random_cmd(a, out),
        Command::Solve(a) => solve_cmd(a, out),
        Command::Check(a) => check_cmd(a, out),
        Command::Eval(a) => eval_cmd(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            if !matches!(e, CliError::Infeasible) {
                let _ = writeln!(err, "error: {e}");
            }
            e.code()
        }
    }
}

fn emit(out: &mut dyn Write, line: fmt::Arguments<'_>) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Input(format!("writing output: {e}")))
}

fn gen_grid_cmd(a: GenGridArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (prior, max_distance) = match a.preset {
        Preset::Image => (0.5, 10),
        Preset::Mesh => (0.55, 70),
    };
    let params = LiftingParams {
        restrict_to_ball: !a.no_restrict,
        ..LiftingParams::new(a.dstar.unwrap_or(max_distance), a.pstar.unwrap_or(prior))
    };
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let rule = match a.edge_rule {
        Rule::Mean => EdgeRule::Mean,
        Rule::Max => EdgeRule::Max,
    };
    let pixels = formats::read_probability_grid(&a.probs, a.width, a.height)?;
    let inst = gen_grid_with_rule(a.width, a.height, &pixels, &params, rule).map_err(|e| input(&a.probs, e))?;
    formats::write_file(&a.out, &formats::write_instance(&inst))?;
    emit(
        out,
        format_args!(
            "nodes {} edges {} lifted {}",
            inst.node_count(),
            inst.graph().edge_count(),
            inst.lifted_edges().len()
        ),
    )
}

fn gen_random_cmd(a: GenRandomArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = RandomInstanceParams {
        nodes: a.nodes,
        edge_density: a.density,
        lift_fraction: a.lift_fraction,
        cost_range: (a.cost_min, a.cost_max),
        seed: a.seed,
    };
    let inst = gen_random(&params).map_err(|e| CliError::Usage(e.to_string()))?;
    formats::write_file(&a.out, &formats::write_instance(&inst))?;
    emit(
        out,
        format_args!(
            "nodes {} edges {} lifted {}",
            inst.node_count(),
            inst.graph().edge_count(),
            inst.lifted_edges().len()
        ),
    )
}

fn solve_cmd(a: SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = formats::read_instance(&a.input)?;
    let init = match &a.init {
        Some(path) => {
            let text = formats::read_file(path)?;
            Some(formats::parse_partition_for(&text, inst.node_count()).map_err(|e| input(path, e))?)
        }
        None => None,
    };
    let options = KljOptions {
        max_outer_iterations: a.max_iterations,
    };
    let init_error = |e: SolveError| match &a.init {
        Some(path) => input(path, e),
        None => CliError::Input(e.to_string()),
    };
    if init.is_some() && !matches!(a.algo, Algo::Klj) {
        return Err(CliError::Usage("--init only applies to --algo klj".into()));
    }
    let report: SolveReport = match a.algo {
        Algo::Gaec => gaec(&inst),
        Algo::Klj => {
            let start = init.unwrap_or_else(|| gaec(&inst).partition);
            klj_with_options(&inst, &start, options).map_err(init_error)?
        }
        Algo::GaecKlj => {
            let mut first = gaec(&inst);
            let second = klj_with_options(&inst, &first.partition, options).map_err(init_error)?;
            first.trace.extend(second.trace);
            SolveReport {
                trace: first.trace,
                initial_objective: first.initial_objective,
                elapsed: first.elapsed + second.elapsed,
                ..second
            }
        }
        Algo::Exact => solve_exact(&inst).map_err(|e| CliError::Usage(e.to_string()))?,
    };
    formats::write_file(&a.out, &formats::write_partition(&report.partition))?;
    if let Some(path) = &a.trace {
        formats::write_file(path, &formats::write_trace(&report))?;
    }
    if let Some(path) = &a.emit_labels {
        let y = labeling_from_partition(&inst, &report.partition).map_err(|e| CliError::Input(e.to_string()))?;
        formats::write_file(path, &formats::write_labeling(&y))?;
    }
    emit(out, format_args!("objective {}", report.objective))
}

fn check_cmd(a: CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = formats::read_instance(&a.input)?;
    let y = formats::read_labeling(&a.labels)?;
    let report = check_feasibility(&inst, &y).map_err(|e| input(&a.labels, e))?;
    if report.is_feasible() {
        return emit(out, format_args!("feasible"));
    }
    for v in &report.violations {
        emit(out, format_args!("{v}"))?;
    }
    Err(CliError::Infeasible)
}

fn eval_cmd(a: EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let pred = formats::read_partition(&a.pred)?;
    let truth = formats::read_partition(&a.truth)?;
    let mismatch = |e: lifted_multicut::MetricsError| CliError::Input(e.to_string());
    match a.metric {
        Metric::Vi => {
            let base = if a.nats { LogBase::E } else { LogBase::Two };
            let vi = variation_of_information_with_base(&truth, &pred, base).map_err(mismatch)?;
            emit(
                out,
                format_args!("{:?} {:?} {:?}", vi.total, vi.false_cut, vi.false_join),
            )
        }
        Metric::Ri => {
            let ri = rand_index(&pred, &truth).map_err(mismatch)?;
            emit(out, format_args!("{ri:?}"))
        }
    }
}
