use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use prnopt_core::correlation::{correlate_fft, correlation_stats, CorrelationStats};
use prnopt_core::model::CodeMatrix;
use prnopt_core::objective::ObjectiveSpec;
use prnopt_core::optimizer::{descend, RunConfig, RunOutcome, RunSummary, SearchStrategy};
use prnopt_core::{ConstraintSpec, Error, Result};

use crate::optimize::{parse_time_limit, termination_name};
use crate::presets::ProblemArgs;
use crate::sink::JsonlSink;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Adaptive vs greedy vs fixed M ∈ {1, 100}, all from one shared start
    StrategyComparison,
    /// Fixed-M descent across a grid of search sizes
    MSweep,
    /// Optimize at p ∈ {2, 4, 6} and emit final correlation distributions
    PSweep,
}

#[derive(Debug, clap::Args)]
pub struct BenchmarkArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Wall-clock budget per run, in seconds
    #[arg(long)]
    pub budget: f64,
    /// Objective exponent (strategy-comparison and m-sweep)
    #[arg(long, default_value_t = 6.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Search sizes for the m-sweep suite
    #[arg(long, value_delimiter = ',', default_value = "1,10,100,1000")]
    pub m_grid: Vec<usize>,
    /// Directory for tables, traces, and the suite summary
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

/// One completed run within a suite.
#[derive(Serialize)]
struct RunRow {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    p: f64,
    summary: RunSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    correlation: Option<CorrelationStats>,
}

#[derive(Serialize)]
struct SuiteReport {
    suite: Suite,
    n: usize,
    t: usize,
    seed: u64,
    budget_s: f64,
    runs: Vec<RunRow>,
}

pub fn run(args: BenchmarkArgs) -> Result<()> {
    let (n, t) = args.problem.resolve()?;
    std::fs::create_dir_all(&args.out)?;
    // Every run in a suite descends from the same random family, so results
    // differ only in what the suite varies.
    let x0 = CodeMatrix::random(n, t, args.seed)?;

    // The large fixed sample is 100, clamped to nT on toy problems where a
    // 100-candidate draw would exceed the whole search space.
    let m_large = 100.min(n * t);
    let runs: Vec<(String, SearchStrategy, f64)> = match args.suite {
        Suite::StrategyComparison => vec![
            ("adaptive".into(), SearchStrategy::Adaptive, args.p),
            ("greedy".into(), SearchStrategy::Greedy, args.p),
            ("fixed-1".into(), SearchStrategy::Fixed { m: 1 }, args.p),
            (
                format!("fixed-{m_large}"),
                SearchStrategy::Fixed { m: m_large },
                args.p,
            ),
        ],
        Suite::MSweep => {
            if args.m_grid.is_empty() {
                return Err(Error::InvalidConfig("--m-grid must not be empty".into()));
            }
            args.m_grid
                .iter()
                .map(|&m| (format!("fixed-{m}"), SearchStrategy::Fixed { m }, args.p))
                .collect()
        }
        Suite::PSweep => [2.0, 4.0, 6.0]
            .into_iter()
            .map(|p| (format!("p{p:.0}"), SearchStrategy::Adaptive, p))
            .collect(),
    };

    let want_stats = args.suite == Suite::PSweep;
    let mut rows = Vec::with_capacity(runs.len());
    for (label, strategy, p) in runs {
        let outcome = run_one(&args, &label, x0.clone(), strategy, p)?;
        let correlation = if want_stats {
            Some(correlation_stats(&correlate_fft(&outcome.matrix)?))
        } else {
            None
        };
        let m = match strategy {
            SearchStrategy::Fixed { m } => Some(m),
            _ => None,
        };
        rows.push(RunRow {
            label,
            m,
            p,
            summary: outcome.summary,
            correlation,
        });
    }

    let table_path = match args.suite {
        Suite::StrategyComparison => write_comparison_table(&args.out, &rows)?,
        Suite::MSweep => write_m_sweep_table(&args.out, &rows)?,
        Suite::PSweep => write_p_sweep_table(&args.out, &rows)?,
    };

    let report = SuiteReport {
        suite: args.suite,
        n,
        t,
        seed: args.seed,
        budget_s: args.budget,
        runs: rows,
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Format(format!("suite serialization: {e}")))?;
    std::fs::write(args.out.join("benchmark.json"), json + "\n")?;

    crate::print_line(&format!("table written to {}", table_path.display()))?;
    crate::print_line(&format!(
        "suite summary written to {}",
        args.out.join("benchmark.json").display()
    ))
}

fn run_one(
    args: &BenchmarkArgs,
    label: &str,
    x0: CodeMatrix,
    strategy: SearchStrategy,
    p: f64,
) -> Result<RunOutcome> {
    let config = RunConfig {
        objective: ObjectiveSpec::new(p)?,
        constraints: ConstraintSpec::none(),
        seed: args.seed,
        time_limit: parse_time_limit(Some(args.budget))?,
        ..RunConfig::default()
    };
    let trace_path = args.out.join(format!("trace-{label}.jsonl"));
    let mut sink = JsonlSink::create(&trace_path)?;
    let outcome = descend(x0, strategy, &config, &mut sink)?;
    sink.finish()?;
    if outcome.summary.iterations == 0 {
        return Err(Error::InvalidConfig(format!(
            "budget of {}s completed zero iterations for run '{label}'; increase --budget",
            args.budget
        )));
    }
    eprintln!(
        "{label}: objective {:.6e} -> {:.6e} ({:.2}%, {} iterations, {})",
        outcome.summary.initial_objective,
        outcome.summary.final_objective,
        outcome.summary.percent_improvement,
        outcome.summary.iterations,
        termination_name(outcome.summary.termination),
    );
    Ok(outcome)
}

fn write_table(out: &std::path::Path, name: &str, body: String) -> Result<PathBuf> {
    let path = out.join(name);
    std::fs::write(&path, body)?;
    Ok(path)
}

fn write_comparison_table(out: &std::path::Path, rows: &[RunRow]) -> Result<PathBuf> {
    let mut s = String::from(
        "strategy,initial_objective,final_objective,percent_improvement,\
         iterations,flips_accepted,termination,wall_time_s,final_search_size\n",
    );
    for r in rows {
        let m = &r.summary;
        let _ = writeln!(
            s,
            "{},{:.9e},{:.9e},{:.4},{},{},{},{:.3},{}",
            r.label,
            m.initial_objective,
            m.final_objective,
            m.percent_improvement,
            m.iterations,
            m.flips_accepted,
            termination_name(m.termination),
            m.wall_time_s,
            m.final_search_size,
        );
    }
    write_table(out, "strategy-comparison.csv", s)
}

fn write_m_sweep_table(out: &std::path::Path, rows: &[RunRow]) -> Result<PathBuf> {
    let mut s = String::from(
        "m,initial_objective,final_objective,percent_improvement,\
         iterations,flips_accepted,termination,wall_time_s\n",
    );
    for r in rows {
        let m = &r.summary;
        let _ = writeln!(
            s,
            "{},{:.9e},{:.9e},{:.4},{},{},{},{:.3}",
            r.m.expect("m-sweep rows are fixed-M"),
            m.initial_objective,
            m.final_objective,
            m.percent_improvement,
            m.iterations,
            m.flips_accepted,
            termination_name(m.termination),
            m.wall_time_s,
        );
    }
    write_table(out, "m-sweep.csv", s)
}

/// Emits the summary table plus one plot-ready histogram file per p, with
/// normalized-correlation bin centers.
fn write_p_sweep_table(out: &std::path::Path, rows: &[RunRow]) -> Result<PathBuf> {
    let mut s = String::from(
        "p,final_objective,percent_improvement,max_abs_correlation,mean,std\n",
    );
    for r in rows {
        let stats = r.correlation.as_ref().expect("p-sweep rows carry stats");
        let _ = writeln!(
            s,
            "{},{:.9e},{:.4},{:.6},{:.6},{:.6}",
            r.p,
            r.summary.final_objective,
            r.summary.percent_improvement,
            stats.max_abs,
            stats.mean,
            stats.std,
        );
        let bins = stats.histogram.len();
        let width = 2.0 / bins as f64;
        let mut h = String::from("bin_center,count\n");
        for (i, &count) in stats.histogram.iter().enumerate() {
            let _ = writeln!(h, "{:.6},{count}", -1.0 + (i as f64 + 0.5) * width);
        }
        write_table(out, &format!("hist-{}.csv", r.label), h)?;
    }
    write_table(out, "p-sweep.csv", s)
}
