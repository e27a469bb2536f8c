//! Bit-flip descent.
//!
//! Each iteration samples M candidate flips (or consults the maintained
//! delta matrix when M = nT, "greedy"), picks the candidate with the most
//! negative exact objective delta, and commits it iff it strictly improves
//! the objective. Greedy terminates at a 1-flip local optimum; sampled
//! strategies stop on an iteration/time/stall budget.
//!
//! Strategies: `Greedy` maintains the full delta matrix (O(nT²) per commit);
//! `Fixed(M)` evaluates M on-demand deltas per iteration (O(M·nT));
//! `Adaptive` starts at M=1, adds 1 to M after two consecutive
//! non-improving iterations (the failure counter resets both on success and
//! on increment), and switches permanently to greedy once M reaches
//! min(10·T, nT).
//!
//! Reproducibility: a run is a pure function of (X₀, strategy, seed) —
//! candidate order, tie-breaks (lexicographic), and accumulation orders are
//! all fixed. Large candidate batches evaluate their deltas in parallel,
//! which cannot change the outcome (each delta is pure and selection scans
//! in index order). Runs truncated by a wall-clock limit reproduce
//! record-for-record up to the truncation point.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlation::{correlate_fft, CorrelationSet};
use crate::model::{BitIndex, CodeMatrix, ConstraintSpec};
use crate::objective::{delta, objective, DeltaMatrix, Kernel, ObjectiveSpec};
use crate::rng::{Prng, STREAM_FEASIBLE, STREAM_INIT, STREAM_SEARCH};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SearchStrategy {
    Greedy,
    Fixed { m: usize },
    Adaptive,
}

/// Batch size × problem size (total delta work, in chip operations) above
/// which candidate evaluation fans out across threads.
const PAR_EVAL_MIN_WORK: usize = 1 << 20;

/// Stopping criteria and run identity. Budgets are optional; greedy and
/// adaptive self-terminate at a local optimum, while `Fixed` falls back to
/// a default stall limit of 5·nT consecutive non-improving iterations when
/// no budget is given.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub objective: ObjectiveSpec,
    pub constraints: ConstraintSpec,
    pub seed: u64,
    pub max_iterations: Option<u64>,
    pub time_limit: Option<Duration>,
    pub stall_limit: Option<u64>,
    /// Early exit once the running objective reaches this value. Off by
    /// default; used by callers that only need a quality threshold.
    pub stop_objective: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            objective: ObjectiveSpec::default(),
            constraints: ConstraintSpec::none(),
            seed: 0,
            max_iterations: None,
            time_limit: None,
            stall_limit: None,
            stop_objective: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    /// No single flip (pair, in paired mode) improves the objective.
    LocalOptimum,
    MaxIterations,
    TimeLimit,
    /// Stall limit hit: too many consecutive non-improving iterations.
    Stalled,
    /// `stop_objective` reached.
    ObjectiveTarget,
}

/// One trace line. Emitted when a flip is accepted (the objective changed)
/// and as a heartbeat every 1,000 iterations, which bounds trace size on
/// million-iteration runs while preserving the objective-vs-time envelope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceRecord {
    pub restart: u32,
    pub k: u64,
    pub t_wall_s: f64,
    pub m: usize,
    pub a: usize,
    pub b: usize,
    /// Second chip of a paired (balance-preserving) flip.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<usize>,
    pub delta: f64,
    pub accepted: bool,
    pub objective: f64,
}

/// Receives trace records as they are produced, so callers can stream them
/// to disk and keep a partial trace even if the process dies mid-run.
pub trait TraceSink {
    fn record(&mut self, rec: &TraceRecord);
}

impl TraceSink for Vec<TraceRecord> {
    fn record(&mut self, rec: &TraceRecord) {
        self.push(rec.clone());
    }
}

/// Discards all records.
pub struct NullSink;

impl TraceSink for NullSink {
    fn record(&mut self, _rec: &TraceRecord) {}
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub initial_objective: f64,
    pub final_objective: f64,
    pub percent_improvement: f64,
    pub iterations: u64,
    pub flips_accepted: u64,
    pub termination: Termination,
    pub wall_time_s: f64,
    /// Search size at termination (nT once greedy).
    pub final_search_size: usize,
    /// PRNG descriptor (algorithm/seed/stream) for reproducibility.
    pub rng: String,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub matrix: CodeMatrix,
    pub summary: RunSummary,
}

#[derive(Clone, Debug)]
pub struct MultiStartOutcome {
    pub best: RunOutcome,
    pub best_restart: u32,
    pub restarts: Vec<RunSummary>,
}

/// M distinct flip positions, uniform without replacement, by partial
/// Fisher-Yates over the virtual range [0, nT). Deterministic in the
/// generator state.
pub fn sample_candidates(rng: &mut Prng, m: usize, n: usize, t: usize) -> Result<Vec<BitIndex>> {
    let total = n * t;
    if m < 1 || m > total {
        return Err(Error::InvalidConfig(format!(
            "search size {m} outside [1, {total}]"
        )));
    }
    Ok(rng
        .distinct(m as u64, total as u64)
        .into_iter()
        .map(|flat| BitIndex::new(flat as usize / t, flat as usize % t))
        .collect())
}

/// Candidate with the minimum delta; ties broken toward the smallest (a, b)
/// lexicographically, so the winner is independent of evaluation order.
pub fn select_best(evaluated: &[(BitIndex, f64)]) -> (BitIndex, f64) {
    assert!(!evaluated.is_empty(), "select_best on empty candidate set");
    let mut best = evaluated[0];
    for &(idx, d) in &evaluated[1..] {
        let take = match d.total_cmp(&best.1) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Equal => (idx.a, idx.b) < (best.0.a, best.0.b),
            std::cmp::Ordering::Greater => false,
        };
        if take {
            best = (idx, d);
        }
    }
    best
}

/// Whether flipping chip `b` of `row` preserves its shift-1 autocorrelation.
///
/// The flip changes the shift-1 sum by −2·x[b]·(x[b−1] + x[b+1]); a feasible
/// row sits exactly at the parity floor, so any nonzero change breaks the
/// constraint. Legality therefore reduces to the neighbors cancelling.
#[inline]
fn acz_flip_legal(row: &[i8], b: usize) -> bool {
    let t = row.len();
    let prev = row[(b + t - 1) % t];
    let next = row[(b + 1) % t];
    prev + next == 0
}

/// Delta of a candidate flip under constraints: +∞ when the flip would
/// violate them (any single flip breaks exact balance; an ACZ-illegal flip
/// moves the shift-1 sum off its floor), otherwise the exact delta.
pub fn constrained_delta(
    x: &CodeMatrix,
    u: &CorrelationSet,
    idx: BitIndex,
    kernel: &Kernel,
    constraints: ConstraintSpec,
) -> f64 {
    if constraints.balanced || (constraints.acz && !acz_flip_legal(x.row(idx.a), idx.b)) {
        return f64::INFINITY;
    }
    delta(x, u, idx, kernel)
}

/// Overwrite the ACZ-illegal entries of delta-matrix row `a` with +∞.
fn acz_mask_row(dm: &mut DeltaMatrix, x: &CodeMatrix, a: usize) {
    let legal: Vec<bool> = (0..x.t()).map(|b| acz_flip_legal(x.row(a), b)).collect();
    for (slot, ok) in dm.row_mut(a).iter_mut().zip(legal) {
        if !ok {
            *slot = f64::INFINITY;
        }
    }
}

/// Compensated (Kahan) sum for the running objective, so the trace value
/// stays within 1e-9 of the exact objective over millions of accepted flips.
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn new(v: f64) -> Self {
        Kahan { sum: v, c: 0.0 }
    }

    fn add(&mut self, v: f64) {
        let y = v - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

fn percent_improvement(f0: f64, f1: f64) -> f64 {
    if f0 > 0.0 {
        100.0 * (f0 - f1) / f0
    } else {
        0.0
    }
}

fn validate_config(
    config: &RunConfig,
    strategy: SearchStrategy,
    n: usize,
    t: usize,
    paired: bool,
) -> Result<()> {
    config.constraints.validate(t)?;
    if config.constraints.acz {
        // The shift-1 sum has the same number of −1 terms as +1 terms only
        // up to parity: the product of all T terms is (Πx)² = +1, so the
        // count of −1 terms is even and the sum is ≡ T (mod 4). The floor 0
        // is reachable only for T ≡ 0 (mod 4), and ±1 only for odd T.
        if t % 2 == 0 && t % 4 != 0 {
            return Err(Error::Infeasible(format!(
                "shift-1 autocorrelation cannot reach 0 for T = {t} ≡ 2 (mod 4)"
            )));
        }
    }
    if config.constraints.balanced != paired {
        return Err(if paired {
            Error::InvalidConfig(
                "paired-flip descent is only for the balanced constraint".into(),
            )
        } else {
            Error::InvalidConfig(
                "balanced constraint requires paired flips; use pair_flip_descend".into(),
            )
        });
    }
    if let SearchStrategy::Fixed { m } = strategy {
        if m < 1 || m > n * t {
            return Err(Error::InvalidConfig(format!(
                "search size {m} outside [1, {}]",
                n * t
            )));
        }
    }
    if paired && strategy == SearchStrategy::Greedy {
        return Err(Error::InvalidConfig(
            "greedy search is not available with paired flips; use fixed or adaptive".into(),
        ));
    }
    Ok(())
}

/// Default stall limit for strategies that cannot certify a local optimum.
fn default_stall(strategy: SearchStrategy, n: usize, t: usize, paired: bool) -> Option<u64> {
    match strategy {
        SearchStrategy::Fixed { .. } => Some(5 * (n * t) as u64),
        // Paired adaptive never switches to greedy, so it stalls out instead.
        SearchStrategy::Adaptive if paired => Some(5 * (n * t) as u64),
        _ => None,
    }
}

/// Run bit-flip descent from `x0`. The trace is streamed to `sink`; the
/// returned summary's final objective is recomputed exactly from the
/// maintained correlation set.
pub fn descend(
    x0: CodeMatrix,
    strategy: SearchStrategy,
    config: &RunConfig,
    sink: &mut dyn TraceSink,
) -> Result<RunOutcome> {
    let rng = Prng::for_restart(config.seed, 0, STREAM_SEARCH);
    descend_from(x0, strategy, config, sink, 0, rng)
}

fn descend_from(
    mut x: CodeMatrix,
    strategy: SearchStrategy,
    config: &RunConfig,
    sink: &mut dyn TraceSink,
    restart: u32,
    mut rng: Prng,
) -> Result<RunOutcome> {
    let (n, t) = (x.n(), x.t());
    validate_config(config, strategy, n, t, false)?;
    if !x.check_constraints(config.constraints).all_ok() {
        return Err(Error::Infeasible(
            "initial matrix violates the configured constraints".into(),
        ));
    }

    let kernel = config.objective.kernel(t);
    let mut u = correlate_fft(&x)?;
    let f0 = objective(&u, &kernel);
    let mut f = Kahan::new(f0);
    let start = Instant::now();
    let rng_desc = rng.descriptor();

    let switch_m = (10 * t).min(n * t);
    let stall_limit = config.stall_limit.or(default_stall(strategy, n, t, false));
    let mut m = match strategy {
        SearchStrategy::Greedy => n * t,
        SearchStrategy::Fixed { m } => m,
        SearchStrategy::Adaptive => 1,
    };
    let mut dm: Option<DeltaMatrix> = match strategy {
        SearchStrategy::Greedy => Some(build_masked(&x, &u, &kernel, config.constraints)),
        _ => None,
    };

    let mut k = 0u64;
    let mut accepted = 0u64;
    let mut stall = 0u64;
    let mut fails = 0u32;

    let termination = loop {
        if config.stop_objective.is_some_and(|g| f.value() <= g) {
            break Termination::ObjectiveTarget;
        }
        if config.max_iterations.is_some_and(|mi| k >= mi) {
            break Termination::MaxIterations;
        }
        if config.time_limit.is_some_and(|tl| start.elapsed() >= tl) {
            break Termination::TimeLimit;
        }
        if stall_limit.is_some_and(|sl| stall >= sl) {
            break Termination::Stalled;
        }

        if let Some(dmat) = dm.as_mut() {
            let (idx, d) = dmat.argmin();
            if !(d < 0.0) {
                break Termination::LocalOptimum;
            }
            k += 1;
            dmat.commit_flip(&mut x, &mut u, idx, &kernel);
            if config.constraints.acz {
                acz_mask_row(dmat, &x, idx.a);
            }
            f.add(d);
            accepted += 1;
            sink.record(&TraceRecord {
                restart,
                k,
                t_wall_s: start.elapsed().as_secs_f64(),
                m: n * t,
                a: idx.a,
                b: idx.b,
                b2: None,
                delta: d,
                accepted: true,
                objective: f.value(),
            });
        } else {
            k += 1;
            let cands = sample_candidates(&mut rng, m, n, t)?;
            // Candidate deltas within one batch are independent, so large
            // batches evaluate in parallel when threads are available.
            // Index order is preserved and each delta is a pure function
            // of (x, u), so the selection is identical to sequential
            // evaluation; small batches and single-core pools stay
            // sequential because an O(nT) delta doesn't amortize the pool
            // handoff.
            let eval =
                |idx: BitIndex| (idx, constrained_delta(&x, &u, idx, &kernel, config.constraints));
            let evaluated: Vec<(BitIndex, f64)> = if m * n * t >= PAR_EVAL_MIN_WORK
                && rayon::current_num_threads() > 1
            {
                cands.par_iter().copied().map(eval).collect()
            } else {
                cands.iter().copied().map(eval).collect()
            };
            let (idx, d) = select_best(&evaluated);
            if d < 0.0 {
                u.apply_flip(&x, idx);
                x.flip(idx)?;
                f.add(d);
                accepted += 1;
                stall = 0;
                fails = 0;
                sink.record(&TraceRecord {
                    restart,
                    k,
                    t_wall_s: start.elapsed().as_secs_f64(),
                    m,
                    a: idx.a,
                    b: idx.b,
                    b2: None,
                    delta: d,
                    accepted: true,
                    objective: f.value(),
                });
            } else {
                stall += 1;
                if k % 1000 == 0 {
                    sink.record(&TraceRecord {
                        restart,
                        k,
                        t_wall_s: start.elapsed().as_secs_f64(),
                        m,
                        a: idx.a,
                        b: idx.b,
                        b2: None,
                        delta: d,
                        accepted: false,
                        objective: f.value(),
                    });
                }
                if strategy == SearchStrategy::Adaptive {
                    fails += 1;
                    if fails == 2 {
                        fails = 0;
                        if m < switch_m {
                            m += 1;
                        }
                        if m >= switch_m {
                            dm = Some(build_masked(&x, &u, &kernel, config.constraints));
                            m = n * t;
                        }
                    }
                }
            }
        }
    };

    let final_objective = objective(&u, &kernel);
    Ok(RunOutcome {
        matrix: x,
        summary: RunSummary {
            initial_objective: f0,
            final_objective,
            percent_improvement: percent_improvement(f0, final_objective),
            iterations: k,
            flips_accepted: accepted,
            termination,
            wall_time_s: start.elapsed().as_secs_f64(),
            final_search_size: m,
            rng: rng_desc,
        },
    })
}

fn build_masked(
    x: &CodeMatrix,
    u: &CorrelationSet,
    kernel: &Kernel,
    constraints: ConstraintSpec,
) -> DeltaMatrix {
    let mut dm = DeltaMatrix::full(x, u, kernel);
    if constraints.acz {
        for a in 0..x.n() {
            acz_mask_row(&mut dm, x, a);
        }
    }
    dm
}

/// Bit-flip descent with balance-preserving moves: a candidate is a pair of
/// opposite-valued chips within one code, flipped together, so the row sum
/// is invariant. The pair delta is exact: the first flip's delta, plus the
/// second flip's delta against the intermediate state (evaluated by
/// applying the first update and rolling it back, which is exact in integer
/// arithmetic). Greedy is not offered — the move space is O(nT²), too large
/// to maintain a delta table for.
pub fn pair_flip_descend(
    x0: CodeMatrix,
    strategy: SearchStrategy,
    config: &RunConfig,
    sink: &mut dyn TraceSink,
) -> Result<RunOutcome> {
    let rng = Prng::for_restart(config.seed, 0, STREAM_SEARCH);
    pair_descend_from(x0, strategy, config, sink, 0, rng)
}

fn pair_descend_from(
    mut x: CodeMatrix,
    strategy: SearchStrategy,
    config: &RunConfig,
    sink: &mut dyn TraceSink,
    restart: u32,
    mut rng: Prng,
) -> Result<RunOutcome> {
    let (n, t) = (x.n(), x.t());
    validate_config(config, strategy, n, t, true)?;
    if !x.check_constraints(config.constraints).all_ok() {
        return Err(Error::Infeasible(
            "initial matrix violates the configured constraints".into(),
        ));
    }

    let kernel = config.objective.kernel(t);
    let mut u = correlate_fft(&x)?;
    let f0 = objective(&u, &kernel);
    let mut f = Kahan::new(f0);
    let start = Instant::now();
    let rng_desc = rng.descriptor();

    let m_cap = (10 * t).min(n * t);
    let stall_limit = config.stall_limit.or(default_stall(strategy, n, t, true));
    let mut m = match strategy {
        SearchStrategy::Fixed { m } => m,
        SearchStrategy::Adaptive => 1,
        SearchStrategy::Greedy => unreachable!("rejected by validate_config"),
    };

    let mut k = 0u64;
    let mut accepted = 0u64;
    let mut stall = 0u64;
    let mut fails = 0u32;

    let termination = loop {
        if config.stop_objective.is_some_and(|g| f.value() <= g) {
            break Termination::ObjectiveTarget;
        }
        if config.max_iterations.is_some_and(|mi| k >= mi) {
            break Termination::MaxIterations;
        }
        if config.time_limit.is_some_and(|tl| start.elapsed() >= tl) {
            break Termination::TimeLimit;
        }
        if stall_limit.is_some_and(|sl| stall >= sl) {
            break Termination::Stalled;
        }
        k += 1;

        // Sample M pairs (with replacement across candidates), normalized to
        // b1 < b2. Each row is balanced, so rejection sampling for the
        // opposite-valued partner accepts with probability 1/2.
        let mut best: Option<(BitIndex, usize, f64)> = None;
        for _ in 0..m {
            let a = rng.below(n as u64) as usize;
            let c1 = rng.below(t as u64) as usize;
            let want = -x.get(a, c1);
            let c2 = loop {
                let c = rng.below(t as u64) as usize;
                if x.get(a, c) == want {
                    break c;
                }
            };
            let (b1, b2) = (c1.min(c2), c1.max(c2));
            let d = pair_delta(&mut x, &mut u, a, b1, b2, &kernel, config.constraints);
            let key = (BitIndex::new(a, b1), b2, d);
            let take = match &best {
                None => true,
                Some((bi, bb2, bd)) => match d.total_cmp(bd) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => (a, b1, b2) < (bi.a, bi.b, *bb2),
                    std::cmp::Ordering::Greater => false,
                },
            };
            if take {
                best = Some(key);
            }
        }
        let (i1, b2, d) = best.expect("m ≥ 1");

        if d < 0.0 {
            let i2 = BitIndex::new(i1.a, b2);
            u.apply_flip(&x, i1);
            x.flip(i1)?;
            u.apply_flip(&x, i2);
            x.flip(i2)?;
            f.add(d);
            accepted += 1;
            stall = 0;
            fails = 0;
            sink.record(&TraceRecord {
                restart,
                k,
                t_wall_s: start.elapsed().as_secs_f64(),
                m,
                a: i1.a,
                b: i1.b,
                b2: Some(b2),
                delta: d,
                accepted: true,
                objective: f.value(),
            });
        } else {
            stall += 1;
            if k % 1000 == 0 {
                sink.record(&TraceRecord {
                    restart,
                    k,
                    t_wall_s: start.elapsed().as_secs_f64(),
                    m,
                    a: i1.a,
                    b: i1.b,
                    b2: Some(b2),
                    delta: d,
                    accepted: false,
                    objective: f.value(),
                });
            }
            if strategy == SearchStrategy::Adaptive {
                fails += 1;
                if fails == 2 {
                    fails = 0;
                    m = (m + 1).min(m_cap);
                }
            }
        }
    };

    let final_objective = objective(&u, &kernel);
    Ok(RunOutcome {
        matrix: x,
        summary: RunSummary {
            initial_objective: f0,
            final_objective,
            percent_improvement: percent_improvement(f0, final_objective),
            iterations: k,
            flips_accepted: accepted,
            termination,
            wall_time_s: start.elapsed().as_secs_f64(),
            final_search_size: m,
            rng: rng_desc,
        },
    })
}

/// Exact objective change of flipping (a, b1) then (a, b2). Applies the
/// first flip to the live state to evaluate the second delta, then rolls it
/// back; integer correlation arithmetic makes the round trip lossless.
fn pair_delta(
    x: &mut CodeMatrix,
    u: &mut CorrelationSet,
    a: usize,
    b1: usize,
    b2: usize,
    kernel: &Kernel,
    constraints: ConstraintSpec,
) -> f64 {
    let i1 = BitIndex::new(a, b1);
    let i2 = BitIndex::new(a, b2);
    if constraints.acz && !acz_flip_legal(x.row(a), b1) {
        return f64::INFINITY;
    }
    let d1 = delta(x, u, i1, kernel);
    u.apply_flip(x, i1);
    x.flip(i1).expect("sampled index in range");
    let legal2 = !constraints.acz || acz_flip_legal(x.row(a), b2);
    let d2 = if legal2 { delta(x, u, i2, kernel) } else { 0.0 };
    u.apply_flip(x, i1);
    x.flip(i1).expect("sampled index in range");
    if legal2 {
        d1 + d2
    } else {
        f64::INFINITY
    }
}

/// A constraint-satisfying random matrix: starts from a seeded random draw
/// and descends a per-code penalty — (row sum)² for balance plus
/// (|shift-1 sum| − floor)² for ACZ — until it reaches zero, reshuffling a
/// stuck code and retrying up to a fixed budget.
pub fn feasible_init(
    n: usize,
    t: usize,
    constraints: ConstraintSpec,
    seed: u64,
) -> Result<CodeMatrix> {
    let mut init = Prng::for_restart(seed, 0, STREAM_INIT);
    let mut repair = Prng::for_restart(seed, 0, STREAM_FEASIBLE);
    feasible_init_with(n, t, constraints, &mut init, &mut repair)
}

fn feasible_init_with(
    n: usize,
    t: usize,
    constraints: ConstraintSpec,
    init: &mut Prng,
    repair: &mut Prng,
) -> Result<CodeMatrix> {
    constraints.validate(t)?;
    if constraints.acz && t % 2 == 0 && t % 4 != 0 {
        return Err(Error::Infeasible(format!(
            "shift-1 autocorrelation cannot reach 0 for T = {t} ≡ 2 (mod 4)"
        )));
    }
    let mut x = CodeMatrix::random_with(n, t, init)?;
    if !constraints.any() {
        return Ok(x);
    }
    let mut row = vec![0i8; t];
    for a in 0..n {
        row.copy_from_slice(x.row(a));
        repair_code(&mut row, constraints, repair).map_err(|e| {
            Error::Infeasible(format!("feasibility repair failed for code {a}: {e}"))
        })?;
        for (b, &v) in row.iter().enumerate() {
            if x.get(a, b) != v {
                x.flip(BitIndex::new(a, b))?;
            }
        }
    }
    debug_assert!(x.check_constraints(constraints).all_ok());
    Ok(x)
}

fn repair_code(row: &mut [i8], constraints: ConstraintSpec, rng: &mut Prng) -> Result<()> {
    let t = row.len();
    let target = ConstraintSpec::acz_target_abs(t);
    let penalty = |rs: i64, s1: i64| -> i64 {
        let bal = if constraints.balanced { rs * rs } else { 0 };
        let acz = if constraints.acz {
            let d = s1.abs() - i64::from(target);
            d * d
        } else {
            0
        };
        bal + acz
    };

    for _attempt in 0..200 {
        let mut rs: i64 = row.iter().map(|&v| i64::from(v)).sum();
        let mut s1 = i64::from(crate::model::shift1_autocorr(row));
        let mut pen = penalty(rs, s1);
        loop {
            if pen == 0 {
                return Ok(());
            }
            // Best strictly-improving single flip: flipping b moves the row
            // sum by −2x[b] and the shift-1 sum by −2x[b]·(x[b−1]+x[b+1]).
            let mut best: Option<(usize, i64)> = None;
            for b in 0..t {
                let xb = i64::from(row[b]);
                let nb = i64::from(row[(b + t - 1) % t]) + i64::from(row[(b + 1) % t]);
                let cand = penalty(rs - 2 * xb, s1 - 2 * xb * nb);
                if cand < pen && best.is_none_or(|(_, bp)| cand < bp) {
                    best = Some((b, cand));
                }
            }
            let Some((b, new_pen)) = best else { break };
            let xb = i64::from(row[b]);
            rs -= 2 * xb;
            s1 -= 2 * xb * (i64::from(row[(b + t - 1) % t]) + i64::from(row[(b + 1) % t]));
            row[b] = -row[b];
            pen = new_pen;
            debug_assert_eq!(s1, i64::from(crate::model::shift1_autocorr(row)));
            debug_assert_eq!(pen, penalty(rs, s1));
        }
        // Stuck at a nonzero penalty: reshuffle and retry.
        for v in row.iter_mut() {
            *v = rng.sign();
        }
    }
    Err(Error::Infeasible(
        "penalty descent did not reach the constraint floor".into(),
    ))
}

/// Best of `restarts` independent descents. Restart r draws its
/// initialization, candidate sampling, and feasibility repair from ChaCha8
/// streams 4r, 4r+1 and 4r+2 of the master seed, so restarts are
/// independent and individually reproducible. Runs execute sequentially;
/// records carry the restart index.
pub fn multi_start(
    n: usize,
    t: usize,
    strategy: SearchStrategy,
    config: &RunConfig,
    restarts: u32,
    sink: &mut dyn TraceSink,
) -> Result<MultiStartOutcome> {
    if restarts < 1 {
        return Err(Error::InvalidConfig("restarts must be ≥ 1".into()));
    }
    let mut best: Option<(RunOutcome, u32)> = None;
    let mut summaries = Vec::with_capacity(restarts as usize);
    for r in 0..restarts {
        let mut init = Prng::for_restart(config.seed, u64::from(r), STREAM_INIT);
        let mut repair = Prng::for_restart(config.seed, u64::from(r), STREAM_FEASIBLE);
        let x0 = if config.constraints.any() {
            feasible_init_with(n, t, config.constraints, &mut init, &mut repair)?
        } else {
            CodeMatrix::random_with(n, t, &mut init)?
        };
        let search = Prng::for_restart(config.seed, u64::from(r), STREAM_SEARCH);
        let outcome = if config.constraints.balanced {
            pair_descend_from(x0, strategy, config, sink, r, search)?
        } else {
            descend_from(x0, strategy, config, sink, r, search)?
        };
        summaries.push(outcome.summary.clone());
        let better = best.as_ref().is_none_or(|(b, _)| {
            outcome.summary.final_objective < b.summary.final_objective
        });
        if better {
            best = Some((outcome, r));
        }
    }
    let (best, best_restart) = best.expect("restarts ≥ 1");
    Ok(MultiStartOutcome {
        best,
        best_restart,
        restarts: summaries,
    })
}
