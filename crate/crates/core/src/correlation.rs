//! Periodic correlation of a code family, stored exactly.
//!
//! For codes i, j and shift t the unnormalized correlation is
//!
//! ```text
//! U[i][j][t] = Σ_{τ=0}^{T−1} X[i][τ] · X[j][(τ−t) mod T]
//! ```
//!
//! i.e. T times the normalized correlation. Keeping U in integers makes every
//! incremental update exact: no float drift accumulates over millions of
//! committed flips. Normalization by T happens only when evaluating the
//! objective or reporting statistics.
//!
//! Only the i ≤ j triangle is stored; the mirrored entry follows from
//! `U[i][j][t] = U[j][i][(T−t) mod T]`.

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use crate::model::{BitIndex, CodeMatrix};
use crate::{Error, Result};

/// Bin count for correlation histograms: uniform bins over [−1, 1].
pub const HISTOGRAM_BINS: usize = 201;

/// All shift-correlation values of a code family, unnormalized (×T),
/// canonical triangle only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationSet {
    n: usize,
    t: usize,
    data: Vec<i32>,
}

impl CorrelationSet {
    fn zeroed(n: usize, t: usize) -> Self {
        let pairs = n * (n + 1) / 2;
        CorrelationSet {
            n,
            t,
            data: vec![0; pairs * t],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Slab offset of canonical pair (i, j), i ≤ j (upper triangle,
    /// row-major).
    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        debug_assert!(i <= j && j < self.n);
        (i * (2 * self.n - i + 1) / 2 + (j - i)) * self.t
    }

    /// Shift-vector of canonical pair (i, j); requires i ≤ j.
    #[inline]
    pub fn slab(&self, i: usize, j: usize) -> &[i32] {
        let off = self.offset(i, j);
        &self.data[off..off + self.t]
    }

    #[inline]
    fn slab_mut(&mut self, i: usize, j: usize) -> &mut [i32] {
        let off = self.offset(i, j);
        &mut self.data[off..off + self.t]
    }

    /// U[i][j][t] for arbitrary order, resolving through symmetry.
    #[inline]
    pub fn value(&self, i: usize, j: usize, t: usize) -> i32 {
        if i <= j {
            self.slab(i, j)[t]
        } else {
            self.slab(j, i)[(self.t - t) % self.t]
        }
    }

    /// Canonical slabs in fixed (i, j) order, i ≤ j.
    pub fn iter_canonical(&self) -> impl Iterator<Item = (usize, usize, &[i32])> {
        (0..self.n).flat_map(move |i| (i..self.n).map(move |j| (i, j, self.slab(i, j))))
    }

    /// Exact single-flip update: after this call `self` is the correlation
    /// set of `flip_bit(x_pre, idx)`. `x_pre` must be the matrix *before*
    /// the flip and `self` its exact correlation set. O(nT).
    ///
    /// With s = X[a][b], flipping (a, b) changes the correlations to
    ///   row a:    U[a][j][t] −= 2s·X[j][(b−t) mod T]   (j ≠ a)
    ///   column a: U[i][a][t] −= 2s·X[i][(b+t) mod T]   (i ≠ a)
    ///   diagonal: U[a][a][t] −= 2s·(X[a][(b+t) mod T] + X[a][(b−t) mod T]), t ≠ 0
    /// and U[a][a][0] stays at T. In canonical storage the column rule covers
    /// pairs (r, a) with r < a and the row rule pairs (a, r) with r > a.
    pub fn apply_flip(&mut self, x_pre: &CodeMatrix, idx: BitIndex) {
        let (a, b) = (idx.a, idx.b);
        let t = self.t;
        let s2 = 2 * i32::from(x_pre.get(a, b));

        // Pairs (r, a), r < a: subtract 2s·X[r][(b+t) mod T]. As t runs
        // 0..T, the position b+t wraps once, giving two contiguous runs.
        for r in 0..a {
            let row = x_pre.row(r);
            let slab = self.slab_mut(r, a);
            let split = t - b; // t < split ⇒ position b+t; afterwards it wraps
            for (u, &x) in slab[..split].iter_mut().zip(&row[b..]) {
                *u -= s2 * i32::from(x);
            }
            for (u, &x) in slab[split..].iter_mut().zip(&row[..b]) {
                *u -= s2 * i32::from(x);
            }
        }

        // Pairs (a, r), r > a: subtract 2s·X[r][(b−t) mod T]. Position b−t
        // walks backwards from b, wrapping to T−1 after t = b.
        for r in a + 1..self.n {
            let row = x_pre.row(r);
            let slab = self.slab_mut(a, r);
            for (u, &x) in slab[..=b].iter_mut().zip(row[..=b].iter().rev()) {
                *u -= s2 * i32::from(x);
            }
            for (u, &x) in slab[b + 1..].iter_mut().zip(row[b + 1..].iter().rev()) {
                *u -= s2 * i32::from(x);
            }
        }

        // Diagonal, t ≠ 0: both the row-a and column-a occurrences hit the
        // same stored entry.
        let row = x_pre.row(a);
        let slab = self.slab_mut(a, a);
        let mut fwd = b; // (b+t) mod T
        let mut bwd = b; // (b−t) mod T
        for u in slab.iter_mut().skip(1) {
            fwd = if fwd + 1 == t { 0 } else { fwd + 1 };
            bwd = if bwd == 0 { t - 1 } else { bwd - 1 };
            *u -= s2 * (i32::from(row[fwd]) + i32::from(row[bwd]));
        }
    }

    /// Verify the structural invariants: diagonal U[i][i][0] = T, |U| ≤ T,
    /// U ≡ T (mod 2), and symmetry. O(n²T); intended for tests and audits.
    pub fn check_invariants(&self) -> Result<()> {
        let t = self.t as i32;
        for (i, j, slab) in self.iter_canonical() {
            for (shift, &v) in slab.iter().enumerate() {
                if v.abs() > t || (v - t).rem_euclid(2) != 0 {
                    return Err(Error::Numerical(format!(
                        "correlation U[{i}][{j}][{shift}] = {v} out of range for T = {t}"
                    )));
                }
                if self.value(j, i, (self.t - shift) % self.t) != v {
                    return Err(Error::Numerical(format!(
                        "correlation symmetry broken at ({i},{j},{shift})"
                    )));
                }
            }
            if i == j && slab[0] != t {
                return Err(Error::Numerical(format!(
                    "zero-shift autocorrelation of code {i} is {} ≠ T",
                    slab[0]
                )));
            }
        }
        Ok(())
    }
}

/// Ground-truth correlation by direct summation, O(n²T²). Exact; serves as
/// the oracle for the FFT path and the flip update.
pub fn correlate_naive(x: &CodeMatrix) -> CorrelationSet {
    let (n, t) = (x.n(), x.t());
    let mut set = CorrelationSet::zeroed(n, t);
    for i in 0..n {
        for j in i..n {
            let (xi, xj) = (x.row(i), x.row(j));
            let slab = set.slab_mut(i, j);
            for (shift, u) in slab.iter_mut().enumerate() {
                // Σ_τ xi[τ]·xj[(τ−shift) mod T]: xj index runs t−shift..T
                // then 0..t−shift as two contiguous runs.
                let mut acc = 0i32;
                for (&p, &q) in xi[..shift].iter().zip(&xj[t - shift..]) {
                    acc += i32::from(p) * i32::from(q);
                }
                for (&p, &q) in xi[shift..].iter().zip(&xj[..t - shift]) {
                    acc += i32::from(p) * i32::from(q);
                }
                *u = acc;
            }
        }
    }
    set
}

/// Correlation via FFT, O(n²T log T): forward transform per code, spectral
/// product with conjugate per pair, one inverse transform per pair. Equals
/// [`correlate_naive`] exactly after rounding; a rounding residual above
/// 10⁻⁶·T on any entry is reported as a numerical failure rather than
/// silently rounded.
pub fn correlate_fft(x: &CodeMatrix) -> Result<CorrelationSet> {
    let (n, t) = (x.n(), x.t());
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(t);
    let inv = planner.plan_fft_inverse(t);

    let spectra: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut buf: Vec<Complex64> = x
                .row(i)
                .iter()
                .map(|&v| Complex64::new(f64::from(v), 0.0))
                .collect();
            fwd.process(&mut buf);
            buf
        })
        .collect();

    let mut set = CorrelationSet::zeroed(n, t);
    let mut buf = vec![Complex64::new(0.0, 0.0); t];
    let scale = 1.0 / t as f64; // rustfft's inverse is unnormalized
    let tol = 1e-6 * t as f64;
    for i in 0..n {
        for j in i..n {
            for ((c, &p), &q) in buf.iter_mut().zip(&spectra[i]).zip(&spectra[j]) {
                *c = p * q.conj();
            }
            inv.process(&mut buf);
            let slab = set.slab_mut(i, j);
            for (shift, (u, c)) in slab.iter_mut().zip(&buf).enumerate() {
                let raw = c.re * scale;
                let rounded = raw.round();
                if (raw - rounded).abs() > tol || (c.im * scale).abs() > tol {
                    return Err(Error::Numerical(format!(
                        "FFT correlation residual {:.3e} at ({i},{j},{shift}) exceeds {tol:.3e}",
                        (raw - rounded).abs().max((c.im * scale).abs())
                    )));
                }
                if rounded.abs() > t as f64 {
                    return Err(Error::Numerical(format!(
                        "FFT correlation value {rounded} at ({i},{j},{shift}) exceeds T = {t}"
                    )));
                }
                *u = rounded as i32;
            }
        }
    }
    Ok(set)
}

/// Statistics over the objective's index set ℐ: all shifts of each i < j
/// pair plus the nonzero-shift diagonal entries, as normalized values U/T.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CorrelationStats {
    pub max_abs: f64,
    pub mean: f64,
    pub std: f64,
    pub count: u64,
    /// Counts per bin, [`HISTOGRAM_BINS`] uniform bins over [−1, 1].
    pub histogram: Vec<u64>,
}

pub fn correlation_stats(u: &CorrelationSet) -> CorrelationStats {
    let inv_t = 1.0 / u.t() as f64;
    let mut max_abs = 0.0f64;
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    let mut count = 0u64;
    let mut histogram = vec![0u64; HISTOGRAM_BINS];
    for (i, j, slab) in u.iter_canonical() {
        let skip = usize::from(i == j); // diagonal shift 0 is fixed at T
        for &v in &slab[skip..] {
            let s = f64::from(v) * inv_t;
            max_abs = max_abs.max(s.abs());
            sum += s;
            sum_sq += s * s;
            count += 1;
            let bin = (((s + 1.0) / 2.0) * HISTOGRAM_BINS as f64) as usize;
            histogram[bin.min(HISTOGRAM_BINS - 1)] += 1;
        }
    }
    let mean = sum / count as f64;
    let std = (sum_sq / count as f64 - mean * mean).max(0.0).sqrt();
    CorrelationStats {
        max_abs,
        mean,
        std,
        count,
        histogram,
    }
}
