use std::path::PathBuf;
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;

use prnopt_core::correlation::{correlate_fft, correlation_stats, CorrelationStats};
use prnopt_core::io::{write_code_file, Format};
use prnopt_core::objective::ObjectiveSpec;
use prnopt_core::optimizer::{multi_start, RunConfig, RunSummary, SearchStrategy};
use prnopt_core::{ConstraintSpec, Error, Result};

use crate::presets::{Preset, ProblemArgs};
use crate::sink::JsonlSink;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyArg {
    /// Commit the best flip over all nT candidates every iteration
    Greedy,
    /// Sample a fixed number of candidate flips per iteration
    Fixed,
    /// Grow the sample under failure; switch to greedy when it gets large
    Adaptive,
}

impl StrategyArg {
    pub fn to_strategy(self, search_size: usize) -> SearchStrategy {
        match self {
            StrategyArg::Greedy => SearchStrategy::Greedy,
            StrategyArg::Fixed => SearchStrategy::Fixed { m: search_size },
            StrategyArg::Adaptive => SearchStrategy::Adaptive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Prn,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Prn => Format::Prn,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Objective exponent p; higher presses down the worst correlations
    #[arg(long, default_value_t = 6.0)]
    pub p: f64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Adaptive)]
    pub strategy: StrategyArg,
    /// Candidate flips per iteration (fixed strategy only)
    #[arg(long, default_value_t = 100)]
    pub search_size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent restarts; the best final objective wins
    #[arg(long, default_value_t = 1)]
    pub restarts: u32,
    /// Iteration budget
    #[arg(long)]
    pub max_iters: Option<u64>,
    /// Wall-clock budget in seconds
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Stop after this many consecutive non-improving iterations
    #[arg(long)]
    pub stall_limit: Option<u64>,
    /// Keep each code balanced (equal +1/−1 counts) via paired flips
    #[arg(long)]
    pub balanced: bool,
    /// Hold each code's shift-1 autocorrelation at its parity floor
    #[arg(long)]
    pub acz: bool,
    /// Directory for codes, trace, and summary artifacts
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
}

/// Top-level record written to `summary.json`: the configuration as run,
/// the winning restart's summary, and statistics of the final family.
#[derive(Serialize)]
struct OptimizeReport {
    n: usize,
    t: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    preset: Option<Preset>,
    p: f64,
    strategy: StrategyArg,
    #[serde(skip_serializing_if = "Option::is_none")]
    search_size: Option<usize>,
    seed: u64,
    restarts: u32,
    constraints: ConstraintSpec,
    best_restart: u32,
    best: RunSummary,
    restart_summaries: Vec<RunSummary>,
    correlation: CorrelationStats,
    codes_file: String,
    trace_file: String,
}

pub fn parse_time_limit(seconds: Option<f64>) -> Result<Option<Duration>> {
    match seconds {
        None => Ok(None),
        Some(s) if s.is_finite() && s > 0.0 => Ok(Some(Duration::from_secs_f64(s))),
        Some(s) => Err(Error::InvalidConfig(format!(
            "time limit must be a positive number of seconds, got {s}"
        ))),
    }
}

pub fn run(args: OptimizeArgs) -> Result<()> {
    let (n, t) = args.problem.resolve()?;
    let config = RunConfig {
        objective: ObjectiveSpec::new(args.p)?,
        constraints: ConstraintSpec {
            balanced: args.balanced,
            acz: args.acz,
        },
        seed: args.seed,
        max_iterations: args.max_iters,
        time_limit: parse_time_limit(args.time_limit)?,
        stall_limit: args.stall_limit,
        stop_objective: None,
    };
    let strategy = args.strategy.to_strategy(args.search_size);

    std::fs::create_dir_all(&args.out)?;
    let trace_path = args.out.join("trace.jsonl");
    let mut sink = JsonlSink::create(&trace_path)?;
    let outcome = multi_start(n, t, strategy, &config, args.restarts, &mut sink)?;
    sink.finish()?;

    let format = Format::from(args.format);
    let codes_path = args.out.join(format!("codes.{}", format.extension()));
    write_code_file(&codes_path, &outcome.best.matrix, format)?;

    let correlation = correlation_stats(&correlate_fft(&outcome.best.matrix)?);
    let report = OptimizeReport {
        n,
        t,
        preset: args.problem.preset,
        p: args.p,
        strategy: args.strategy,
        search_size: match args.strategy {
            StrategyArg::Fixed => Some(args.search_size),
            _ => None,
        },
        seed: args.seed,
        restarts: args.restarts,
        constraints: config.constraints,
        best_restart: outcome.best_restart,
        best: outcome.best.summary.clone(),
        restart_summaries: outcome.restarts,
        correlation,
        codes_file: codes_path.display().to_string(),
        trace_file: trace_path.display().to_string(),
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Format(format!("summary serialization: {e}")))?;
    std::fs::write(args.out.join("summary.json"), json + "\n")?;

    let s = &outcome.best.summary;
    crate::print_line(&format!(
        "objective {:.6e} -> {:.6e} (improvement {:.2}%, {} iterations, {} flips, {})",
        s.initial_objective,
        s.final_objective,
        s.percent_improvement,
        s.iterations,
        s.flips_accepted,
        termination_name(s.termination),
    ))?;
    crate::print_line(&format!("artifacts written to {}", args.out.display()))
}

/// Kebab-case name of a termination reason, as serialized in summaries.
pub fn termination_name(t: prnopt_core::optimizer::Termination) -> String {
    match serde_json::to_value(t) {
        Ok(serde_json::Value::String(s)) => s,
        _ => format!("{t:?}"),
    }
}
