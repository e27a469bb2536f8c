use std::path::PathBuf;

use serde::Serialize;

use prnopt_core::correlation::{correlate_fft, correlation_stats, CorrelationStats};
use prnopt_core::io::read_code_file;
use prnopt_core::model::CodeCheck;
use prnopt_core::objective::{objective, ObjectiveSpec};
use prnopt_core::{ConstraintSpec, Error, Result};

#[derive(Debug, clap::Args)]
pub struct EvaluateArgs {
    /// Code-family file: text (.csv) or packed binary (.prn), detected by content
    pub file: PathBuf,
    /// Objective exponent p
    #[arg(long, default_value_t = 6.0)]
    pub p: f64,
}

/// Audit of both constraint predicates regardless of whether a run enforced
/// them; raw per-code sums let the reader judge near-misses.
#[derive(Serialize)]
struct ConstraintAudit {
    balanced_ok: bool,
    acz_ok: bool,
    codes: Vec<CodeCheck>,
}

#[derive(Serialize)]
struct EvaluateReport {
    file: String,
    n: usize,
    t: usize,
    p: f64,
    objective: f64,
    correlation: CorrelationStats,
    constraints: ConstraintAudit,
}

pub fn run(args: EvaluateArgs) -> Result<()> {
    let x = read_code_file(&args.file)?;
    let kernel = ObjectiveSpec::new(args.p)?.kernel(x.t());
    let u = correlate_fft(&x)?;
    let audit = x.check_constraints(ConstraintSpec {
        balanced: true,
        acz: true,
    });
    let report = EvaluateReport {
        file: args.file.display().to_string(),
        n: x.n(),
        t: x.t(),
        p: args.p,
        objective: objective(&u, &kernel),
        correlation: correlation_stats(&u),
        constraints: ConstraintAudit {
            balanced_ok: audit.codes.iter().all(|c| c.balanced_ok),
            acz_ok: audit.codes.iter().all(|c| c.acz_ok),
            codes: audit.codes,
        },
    };
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Format(format!("report serialization: {e}")))?;
    crate::print_line(&json)
}
