//! Objective evaluation and single-flip deltas.
//!
//! The objective is f(X) = Σ |U[i][j][t]/T|^p over the index set ℐ that
//! takes every shift of each i < j pair plus the nonzero shifts of each
//! diagonal. Because correlations are integers in [−T, T], |u/T|^p is
//! precomputed once into a lookup table ([`Kernel`]), so the hot loops do
//! table lookups instead of `powf` calls.
//!
//! A single flip at (a, b) only perturbs correlations involving code a, so
//! its exact objective change Δ_{a,b} is a sum of nT−1 terms (O(nT)), and
//! the full n×T matrix of deltas can be maintained across committed flips
//! in O(nT²) instead of recomputed in O(n²T²).

use rayon::prelude::*;

use crate::correlation::CorrelationSet;
use crate::model::{BitIndex, CodeMatrix};
use crate::{Error, Result};

/// Objective parameters: the exponent p ≥ 1 (default 6).
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct ObjectiveSpec {
    pub p: f64,
}

impl Default for ObjectiveSpec {
    fn default() -> Self {
        ObjectiveSpec { p: 6.0 }
    }
}

impl ObjectiveSpec {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidConfig(format!(
                "objective exponent must be a finite real ≥ 1, got {p}"
            )));
        }
        Ok(ObjectiveSpec { p })
    }

    pub fn kernel(self, t: usize) -> Kernel {
        Kernel::new(self, t)
    }
}

/// Table padding beyond ±T: the delta-matrix update speculatively evaluates
/// |u ± 2|^p at the range ends, and diagonal deltas move by up to ±4.
const PAD: i32 = 4;

/// Lookup table for |u/T|^p over integer correlations u ∈ [−T−4, T+4].
#[derive(Clone, Debug)]
pub struct Kernel {
    p: f64,
    t: usize,
    k: Vec<f64>,
    /// d2[u] = |(u+2)/T|^p − |u/T|^p over the same index offset, so the hot
    /// delta loop does one lookup per term instead of two (see [`Self::step2`]).
    d2: Vec<f64>,
}

impl Kernel {
    fn new(spec: ObjectiveSpec, t: usize) -> Self {
        let tf = t as f64;
        let half = t as i32 + PAD;
        let int_p = spec.p.fract() == 0.0 && spec.p <= 60.0;
        let k: Vec<f64> = (-half..=half)
            .map(|u| {
                let x = (f64::from(u) / tf).abs();
                if int_p {
                    x.powi(spec.p as i32)
                } else {
                    x.powf(spec.p)
                }
            })
            .collect();
        let d2 = k.windows(3).map(|w| w[2] - w[0]).collect();
        Kernel { p: spec.p, t, k, d2 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// |u/T|^p.
    #[inline]
    pub fn eval(&self, u: i32) -> f64 {
        self.k[(u + self.t as i32 + PAD) as usize]
    }

    /// |(u+2σ)/T|^p − |u/T|^p for a sign σ ∈ {−1, +1}, looked up by the
    /// sign-folded argument `su` = σ·u: the kernel is even, so the σ = −1
    /// step at u equals the σ = +1 step at −u, and one difference table
    /// serves both. Each entry is the same two table values [`Self::eval`]
    /// would produce, subtracted at build time, so results are bit-identical
    /// to the two-lookup form. Valid for |su| ≤ T + 2.
    #[inline]
    pub fn step2(&self, su: i32) -> f64 {
        self.d2[(su + self.t as i32 + PAD) as usize]
    }
}

/// f(X) from its correlation set: Σ |u/T|^p over ℐ, accumulated in a fixed
/// order (canonical pairs ascending, shifts ascending within each pair).
pub fn objective(u: &CorrelationSet, kernel: &Kernel) -> f64 {
    let mut acc = 0.0;
    for (i, j, slab) in u.iter_canonical() {
        let skip = usize::from(i == j);
        for &v in &slab[skip..] {
            acc += kernel.eval(v);
        }
    }
    acc
}

/// Exact objective change from flipping (a, b), in O(nT) without touching
/// the correlation set: each affected entry's post-flip value comes from the
/// same update rule [`CorrelationSet::apply_flip`] uses, evaluated on the
/// fly. Terms accumulate in a fixed order (r ascending, t ascending, then
/// the diagonal), so repeated evaluations are bit-identical.
pub fn delta(x: &CodeMatrix, u: &CorrelationSet, idx: BitIndex, kernel: &Kernel) -> f64 {
    let (a, b) = (idx.a, idx.b);
    let t = u.t();
    let s = i32::from(x.get(a, b));

    // Each cross-pair entry moves by 2σ with σ = −s·x_r at the aligned
    // position, so the term is kernel.step2(σ·v); the aligned positions walk
    // row r forward (r < a) or backward (r > a) from b, handled as two
    // wrap-free segments per row. Terms land in four accumulator lanes by
    // position so consecutive adds don't serialize on one float dependency
    // chain; the lane pattern is fixed, so results stay deterministic.
    let ns = -s;
    let mut lanes = [0.0f64; 4];

    // Pairs (r, a), r < a: entry moves by −2s·X[r][(b+t) mod T].
    for r in 0..a {
        let row = x.row(r);
        let slab = u.slab(r, a);
        let split = t - b;
        lane_steps_fwd(&mut lanes, kernel, ns, &slab[..split], &row[b..]);
        lane_steps_fwd(&mut lanes, kernel, ns, &slab[split..], &row[..b]);
    }

    // Pairs (a, r), r > a: entry moves by −2s·X[r][(b−t) mod T].
    for r in a + 1..x.n() {
        let row = x.row(r);
        let slab = u.slab(a, r);
        lane_steps_rev(&mut lanes, kernel, ns, &slab[..=b], &row[..=b]);
        lane_steps_rev(&mut lanes, kernel, ns, &slab[b + 1..], &row[b + 1..]);
    }

    let mut acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);

    // Diagonal, t ≠ 0: the entry moves by −2s·(fwd + bwd neighbor), which
    // can be ±4 or 0, outside step2's reach.
    let s2 = 2 * s;
    let row = x.row(a);
    let slab = u.slab(a, a);
    let mut fwd = b;
    let mut bwd = b;
    for &v in &slab[1..] {
        fwd = if fwd + 1 == t { 0 } else { fwd + 1 };
        bwd = if bwd == 0 { t - 1 } else { bwd - 1 };
        let d = -s2 * (i32::from(row[fwd]) + i32::from(row[bwd]));
        acc += kernel.eval(v + d) - kernel.eval(v);
    }

    acc
}

/// Accumulate kernel.step2(ns·xs[i]·vs[i]) into `lanes`, pairing the slices
/// index-aligned. Unrolled four wide with one lane per offset.
#[inline(always)]
fn lane_steps_fwd(lanes: &mut [f64; 4], kernel: &Kernel, ns: i32, vs: &[i32], xs: &[i8]) {
    debug_assert_eq!(vs.len(), xs.len());
    for (vq, xq) in vs.chunks_exact(4).zip(xs.chunks_exact(4)) {
        lanes[0] += kernel.step2(ns * i32::from(xq[0]) * vq[0]);
        lanes[1] += kernel.step2(ns * i32::from(xq[1]) * vq[1]);
        lanes[2] += kernel.step2(ns * i32::from(xq[2]) * vq[2]);
        lanes[3] += kernel.step2(ns * i32::from(xq[3]) * vq[3]);
    }
    let vr = vs.chunks_exact(4).remainder();
    let xr = xs.chunks_exact(4).remainder();
    for (lane, (&v, &xv)) in vr.iter().zip(xr).enumerate() {
        lanes[lane] += kernel.step2(ns * i32::from(xv) * v);
    }
}

/// As [`lane_steps_fwd`], but pairing vs[i] with xs[len−1−i] (a backward walk
/// of the row, as the r > a alignment requires).
#[inline(always)]
fn lane_steps_rev(lanes: &mut [f64; 4], kernel: &Kernel, ns: i32, vs: &[i32], xs: &[i8]) {
    debug_assert_eq!(vs.len(), xs.len());
    for (vq, xq) in vs.chunks_exact(4).zip(xs.rchunks_exact(4)) {
        lanes[0] += kernel.step2(ns * i32::from(xq[3]) * vq[0]);
        lanes[1] += kernel.step2(ns * i32::from(xq[2]) * vq[1]);
        lanes[2] += kernel.step2(ns * i32::from(xq[1]) * vq[2]);
        lanes[3] += kernel.step2(ns * i32::from(xq[0]) * vq[3]);
    }
    let vr = vs.chunks_exact(4).remainder();
    let xr = xs.rchunks_exact(4).remainder();
    for (lane, (&v, &xv)) in vr.iter().zip(xr.iter().rev()).enumerate() {
        lanes[lane] += kernel.step2(ns * i32::from(xv) * v);
    }
}

/// All nT single-flip deltas: Δ[a][b] = f(flip(X, a, b)) − f(X).
///
/// Entries are +∞-compatible: the optimizer may overwrite entries whose flip
/// is constraint-illegal with +∞, and [`DeltaMatrix::commit_flip`] preserves
/// such sentinels in untouched rows.
#[derive(Clone, Debug)]
pub struct DeltaMatrix {
    n: usize,
    t: usize,
    d: Vec<f64>,
}

impl DeltaMatrix {
    /// Build from scratch, O(n²T²). Rows are independent and computed in
    /// parallel; each entry is a self-contained [`delta`] call, so the
    /// result is identical to sequential evaluation.
    pub fn full(x: &CodeMatrix, u: &CorrelationSet, kernel: &Kernel) -> Self {
        let (n, t) = (x.n(), x.t());
        let mut d = vec![0.0; n * t];
        d.par_chunks_mut(t).enumerate().for_each(|(a, row)| {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = delta(x, u, BitIndex::new(a, b), kernel);
            }
        });
        DeltaMatrix { n, t, d }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.d[a * self.t + b]
    }

    pub fn row_mut(&mut self, a: usize) -> &mut [f64] {
        &mut self.d[a * self.t..(a + 1) * self.t]
    }

    /// Minimum entry with lexicographic (a, b) tie-break: scanning in flat
    /// order and keeping the first strict minimum makes the result
    /// deterministic.
    pub fn argmin(&self) -> (BitIndex, f64) {
        let mut best = f64::INFINITY;
        let mut at = 0;
        for (i, &v) in self.d.iter().enumerate() {
            if v < best {
                best = v;
                at = i;
            }
        }
        (BitIndex::new(at / self.t, at % self.t), best)
    }

    /// Commit the flip at `idx` and bring the delta matrix along: rows
    /// a′ ≠ a are corrected in O(T) per entry using only the pair-(a, a′)
    /// correlation terms, then the flip is applied to `x`/`u`, and row a is
    /// recomputed entrywise against the post-flip state. O(nT²) total —
    /// a factor n cheaper than [`DeltaMatrix::full`].
    pub fn commit_flip(
        &mut self,
        x: &mut CodeMatrix,
        u: &mut CorrelationSet,
        idx: BitIndex,
        kernel: &Kernel,
    ) {
        let (a, b) = (idx.a, idx.b);
        let t = self.t;
        let s = i32::from(x.get(a, b));
        let s2 = 2 * s;
        let xa: Vec<i8> = x.row(a).to_vec();

        // Scratch tables, rebuilt per row pair (see commit_row_correction).
        let mut d_avg = vec![0.0f64; t];
        let mut d_diff = vec![0.0f64; t];
        let mut qd = vec![0.0f64; t];

        for ap in 0..self.n {
            if ap == a {
                continue;
            }
            // Per shift t, the pair-(a, a′) entry sits at v and moves to
            // v′ = v + δ_c under the committed flip. A candidate flip at
            // (a′, b′) perturbs the same entry by w = ±2, with the sign
            // read from row a at a b′-dependent position. Precompute, for
            // w ∈ {+2, −2}:
            //   P_w = |v+w|ᵖ − |v|ᵖ        (term before the commit)
            //   Q_w = |v′+w|ᵖ − |v′|ᵖ      (term after the commit)
            //   D_w = Q_w − P_w            (per-shift correction)
            // folded as d_avg = (D₊+D₋)/2, d_diff = (D₊−D₋)/2 so the b′
            // loop is sign·lookup, plus qd = Q₊ − Q₋ for the single shift
            // where the sign itself flipped (position b of row a).
            let xap = x.row(ap);
            let slab = if ap < a { u.slab(ap, a) } else { u.slab(a, ap) };
            let mut base = 0.0;
            let mut pos = b; // (b+t) mod T for ap < a, (b−t) mod T for ap > a
            for (ti, &v) in slab.iter().enumerate() {
                if ti > 0 {
                    pos = if ap < a {
                        if pos + 1 == t {
                            0
                        } else {
                            pos + 1
                        }
                    } else if pos == 0 {
                        t - 1
                    } else {
                        pos - 1
                    };
                }
                let dc = -s2 * i32::from(xap[pos]);
                let vp = v + dc;
                let kv = kernel.eval(v);
                let kvp = kernel.eval(vp);
                let p_p = kernel.eval(v + 2) - kv;
                let p_m = kernel.eval(v - 2) - kv;
                let q_p = kernel.eval(vp + 2) - kvp;
                let q_m = kernel.eval(vp - 2) - kvp;
                let dp = q_p - p_p;
                let dm = q_m - p_m;
                d_avg[ti] = 0.5 * (dp + dm);
                d_diff[ti] = 0.5 * (dp - dm);
                qd[ti] = q_p - q_m;
                base += d_avg[ti];
            }

            // For candidate (a′, b′): w(t) = −2·s_q·X[a][(b′∓t) mod T] with
            // s_q = X[a′][b′], so Σ_t D_{w(t)} = base − s_q·Σ_t σ(t)·d_diff
            // where σ walks row a from b′. The committed flip negates row a
            // at position b, which lands at exactly one shift t*; that term
            // gets the qd fix-up.
            let row_d = &mut self.d[ap * t..(ap + 1) * t];
            for (bp, slot) in row_d.iter_mut().enumerate() {
                let sq = i32::from(xap[bp]);
                let mut corr = 0.0;
                let tstar;
                if ap < a {
                    // σ(t) = xa[(b′−t) mod T]; sign flip at t* = (b′−b) mod T.
                    for (&dd, &xv) in d_diff[..=bp].iter().zip(xa[..=bp].iter().rev()) {
                        corr += f64::from(xv) * dd;
                    }
                    for (&dd, &xv) in d_diff[bp + 1..].iter().zip(xa[bp + 1..].iter().rev()) {
                        corr += f64::from(xv) * dd;
                    }
                    tstar = (bp + t - b) % t;
                } else {
                    // σ(t) = xa[(b′+t) mod T]; sign flip at t* = (b−b′) mod T.
                    let split = t - bp;
                    for (&dd, &xv) in d_diff[..split].iter().zip(&xa[bp..]) {
                        corr += f64::from(xv) * dd;
                    }
                    for (&dd, &xv) in d_diff[split..].iter().zip(&xa[..bp]) {
                        corr += f64::from(xv) * dd;
                    }
                    tstar = (b + t - bp) % t;
                }
                let sqf = f64::from(sq);
                *slot += base - sqf * corr + sqf * f64::from(s) * qd[tstar];
            }
        }

        u.apply_flip(x, idx);
        x.flip(idx).expect("flip index validated by caller");

        for (bp, slot) in self.row_mut(a).iter_mut().enumerate() {
            *slot = delta(x, u, BitIndex::new(a, bp), kernel);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::correlate_naive;
    use proptest::prelude::*;

    fn e1() -> CodeMatrix {
        CodeMatrix::from_rows(vec![vec![1, 1, 1, -1], vec![1, -1, 1, 1]]).unwrap()
    }

    /// From-scratch objective over the index set, bypassing the kernel table.
    fn objective_brute(x: &CodeMatrix, p: f64) -> f64 {
        let u = correlate_naive(x);
        let tf = x.t() as f64;
        let mut acc = 0.0;
        for (i, j, slab) in u.iter_canonical() {
            let skip = usize::from(i == j);
            for &v in &slab[skip..] {
                acc += (f64::from(v) / tf).abs().powf(p);
            }
        }
        acc
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= f64::max(1e-12, 1e-9 * a.abs().max(b.abs()))
    }

    #[test]
    fn objective_spec_validation() {
        assert!(ObjectiveSpec::new(1.0).is_ok());
        assert!(ObjectiveSpec::new(2.5).is_ok());
        assert!(ObjectiveSpec::new(0.5).is_err());
        assert!(ObjectiveSpec::new(f64::NAN).is_err());
    }

    #[test]
    fn objective_on_e1() {
        let x = e1();
        let u = correlate_naive(&x);
        let k6 = ObjectiveSpec::new(6.0).unwrap().kernel(4);
        assert!((objective(&u, &k6) - 1.0).abs() < 1e-15);

        // After flipping (1,1): four cross values 1/2 and three unit
        // sidelobes, so at p=2 the objective is 4/4 + 3 = 4.
        let mut x2 = x.clone();
        let mut u2 = u.clone();
        u2.apply_flip(&x2, BitIndex::new(1, 1));
        x2.flip(BitIndex::new(1, 1)).unwrap();
        let k2 = ObjectiveSpec::new(2.0).unwrap().kernel(4);
        assert!((objective(&u2, &k2) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn objective_all_ones_sidelobes() {
        let x = CodeMatrix::from_rows(vec![vec![1; 5]]).unwrap();
        let u = correlate_naive(&x);
        for p in [1.0, 2.0, 6.0] {
            let k = ObjectiveSpec::new(p).unwrap().kernel(5);
            assert!((objective(&u, &k) - 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn delta_on_e1() {
        let x = e1();
        let u = correlate_naive(&x);
        let k2 = ObjectiveSpec::new(2.0).unwrap().kernel(4);
        let d = delta(&x, &u, BitIndex::new(1, 1), &k2);
        assert!(close(d, 3.0));
    }

    #[test]
    fn delta_flip_back_antisymmetry() {
        let mut x = CodeMatrix::random(4, 11, 17).unwrap();
        let mut u = correlate_naive(&x);
        let k = ObjectiveSpec::default().kernel(11);
        let idx = BitIndex::new(2, 7);
        let fwd = delta(&x, &u, idx, &k);
        u.apply_flip(&x, idx);
        x.flip(idx).unwrap();
        let back = delta(&x, &u, idx, &k);
        assert_eq!(fwd + back, 0.0);
    }

    #[test]
    fn delta_matrix_all_ones_single_code() {
        // One all-ones code of length 4 at p=2: each sidelobe drops from
        // 1 to 0 under any flip, so every delta is −3.
        let x = CodeMatrix::from_rows(vec![vec![1; 4]]).unwrap();
        let u = correlate_naive(&x);
        let k = ObjectiveSpec::new(2.0).unwrap().kernel(4);
        let dm = DeltaMatrix::full(&x, &u, &k);
        for b in 0..4 {
            assert!(close(dm.get(0, b), -3.0));
        }
    }

    #[test]
    fn argmin_prefers_lexicographic_on_ties() {
        let x = CodeMatrix::from_rows(vec![vec![1; 4]]).unwrap();
        let u = correlate_naive(&x);
        let k = ObjectiveSpec::new(2.0).unwrap().kernel(4);
        let dm = DeltaMatrix::full(&x, &u, &k);
        let (idx, d) = dm.argmin();
        assert_eq!((idx.a, idx.b), (0, 0));
        assert!(close(d, -3.0));
    }

    #[test]
    fn single_code_commit_recomputes_whole_row() {
        let mut x = CodeMatrix::random(1, 12, 3).unwrap();
        let mut u = correlate_naive(&x);
        let k = ObjectiveSpec::default().kernel(12);
        let mut dm = DeltaMatrix::full(&x, &u, &k);
        dm.commit_flip(&mut x, &mut u, dm.argmin().0, &k);
        let fresh = DeltaMatrix::full(&x, &u, &k);
        for b in 0..12 {
            assert!(close(dm.get(0, b), fresh.get(0, b)));
        }
    }

    #[test]
    fn commit_chain_matches_full_rebuild() {
        // 50 committed flips on (n=3, T=16, p=2); the maintained matrix must
        // track the from-scratch rebuild throughout.
        let mut x = CodeMatrix::random(3, 16, 23).unwrap();
        let mut u = correlate_naive(&x);
        let k = ObjectiveSpec::new(2.0).unwrap().kernel(16);
        let mut dm = DeltaMatrix::full(&x, &u, &k);
        let mut rng = crate::rng::Prng::new(99, 0);
        for _ in 0..50 {
            let flat = rng.below((3 * 16) as u64) as usize;
            let idx = BitIndex::new(flat / 16, flat % 16);
            dm.commit_flip(&mut x, &mut u, idx, &k);
            assert_eq!(&u, &correlate_naive(&x));
        }
        let fresh = DeltaMatrix::full(&x, &u, &k);
        for a in 0..3 {
            for b in 0..16 {
                assert!(
                    close(dm.get(a, b), fresh.get(a, b)),
                    "drift at ({a},{b}): {} vs {}",
                    dm.get(a, b),
                    fresh.get(a, b)
                );
            }
        }
    }

    #[test]
    fn infinity_sentinels_survive_commits_in_untouched_rows() {
        let mut x = CodeMatrix::random(3, 8, 5).unwrap();
        let mut u = correlate_naive(&x);
        let k = ObjectiveSpec::default().kernel(8);
        let mut dm = DeltaMatrix::full(&x, &u, &k);
        dm.row_mut(2)[3] = f64::INFINITY;
        dm.commit_flip(&mut x, &mut u, BitIndex::new(0, 1), &k);
        assert!(dm.get(2, 3).is_infinite());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn objective_matches_brute(n in 1usize..=5, t in 2usize..=12,
                                   pi in 0usize..3, seed in any::<u64>()) {
            let p = [1.0, 2.0, 6.0][pi];
            let x = CodeMatrix::random(n, t, seed).unwrap();
            let u = correlate_naive(&x);
            let k = ObjectiveSpec::new(p).unwrap().kernel(t);
            prop_assert!(close(objective(&u, &k), objective_brute(&x, p)));
        }

        #[test]
        fn delta_matches_scratch_difference(n in 1usize..=5, t in 2usize..=16,
                                            pi in 0usize..3, seed in any::<u64>(),
                                            pick in any::<(u64, u64)>()) {
            let p = [1.0, 2.0, 6.0][pi];
            let mut x = CodeMatrix::random(n, t, seed).unwrap();
            let u = correlate_naive(&x);
            let k = ObjectiveSpec::new(p).unwrap().kernel(t);
            let idx = BitIndex::new((pick.0 % n as u64) as usize, (pick.1 % t as u64) as usize);
            let d = delta(&x, &u, idx, &k);
            let before = objective(&u, &k);
            x.flip(idx).unwrap();
            let after = objective(&correlate_naive(&x), &k);
            prop_assert!(close(d, after - before),
                         "delta {d} vs scratch {}", after - before);
        }

        #[test]
        fn commit_matches_full(n in 1usize..=4, t in 2usize..=12,
                               seed in any::<u64>(), pick in any::<(u64, u64)>()) {
            let mut x = CodeMatrix::random(n, t, seed).unwrap();
            let mut u = correlate_naive(&x);
            let k = ObjectiveSpec::default().kernel(t);
            let mut dm = DeltaMatrix::full(&x, &u, &k);
            let idx = BitIndex::new((pick.0 % n as u64) as usize, (pick.1 % t as u64) as usize);
            dm.commit_flip(&mut x, &mut u, idx, &k);
            let fresh = DeltaMatrix::full(&x, &u, &k);
            for a in 0..n {
                for b in 0..t {
                    prop_assert!(close(dm.get(a, b), fresh.get(a, b)),
                                 "mismatch at ({a},{b}): {} vs {}",
                                 dm.get(a, b), fresh.get(a, b));
                }
            }
        }

        #[test]
        fn objective_nonincreasing_in_p(n in 1usize..=4, t in 2usize..=10, seed in any::<u64>()) {
            let x = CodeMatrix::random(n, t, seed).unwrap();
            let u = correlate_naive(&x);
            let f2 = objective(&u, &ObjectiveSpec::new(2.0).unwrap().kernel(t));
            let f4 = objective(&u, &ObjectiveSpec::new(4.0).unwrap().kernel(t));
            let f6 = objective(&u, &ObjectiveSpec::new(6.0).unwrap().kernel(t));
            prop_assert!(f2 >= f4 - 1e-12 && f4 >= f6 - 1e-12);
        }
    }
}
