//! Code-family representation: the ±1 matrix, bit indexing, and constraint
//! predicates.

use serde::{Deserialize, Serialize};

use crate::rng::{Prng, STREAM_INIT};
use crate::{Error, Result};

/// Position of a single chip: code `a`, chip `b`.
///
/// Both axes are 0-based; all shift arithmetic is `(b ± t) mod T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitIndex {
    pub a: usize,
    pub b: usize,
}

impl BitIndex {
    pub fn new(a: usize, b: usize) -> Self {
        BitIndex { a, b }
    }
}

/// Structural constraints a code family may be required to satisfy.
///
/// `balanced`: each code has equal counts of −1 and +1 (row sum zero), which
/// requires even T. `acz`: each code's shift-1 periodic autocorrelation is as
/// small as parity allows — exactly 0 for even T, ±1 for odd T.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub balanced: bool,
    pub acz: bool,
}

impl ConstraintSpec {
    pub fn none() -> Self {
        ConstraintSpec::default()
    }

    pub fn any(&self) -> bool {
        self.balanced || self.acz
    }

    /// Smallest attainable |shift-1 autocorrelation sum| for length `t`.
    ///
    /// The sum has T terms of ±1, so it shares T's parity: 0 is reachable
    /// only for even T, and odd T can do no better than ±1.
    pub fn acz_target_abs(t: usize) -> i32 {
        if t % 2 == 0 {
            0
        } else {
            1
        }
    }

    pub fn validate(&self, t: usize) -> Result<()> {
        if self.balanced && t % 2 != 0 {
            return Err(Error::Infeasible(format!(
                "balanced constraint requires even code length, got T={t}"
            )));
        }
        Ok(())
    }
}

/// Per-code outcome of a constraint check. Raw sums are always reported;
/// a disabled check passes vacuously.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeCheck {
    pub row_sum: i32,
    pub shift1_autocorr: i32,
    pub balanced_ok: bool,
    pub acz_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintReport {
    pub codes: Vec<CodeCheck>,
}

impl ConstraintReport {
    pub fn all_ok(&self) -> bool {
        self.codes.iter().all(|c| c.balanced_ok && c.acz_ok)
    }
}

/// Family of `n` binary codes of length `T`, entries in {−1, +1}, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeMatrix {
    n: usize,
    t: usize,
    entries: Vec<i8>,
}

impl CodeMatrix {
    pub fn new(n: usize, t: usize, entries: Vec<i8>) -> Result<Self> {
        if n < 1 || t < 2 {
            return Err(Error::InvalidDimensions { n, t });
        }
        if entries.len() != n * t {
            return Err(Error::InvalidConfig(format!(
                "expected {} entries for a {n}×{t} matrix, got {}",
                n * t,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::InvalidConfig(format!(
                "matrix entries must be ±1, found {bad}"
            )));
        }
        Ok(CodeMatrix { n, t, entries })
    }

    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n = rows.len();
        let t = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != t) {
            return Err(Error::InvalidConfig(
                "all codes must have the same length".into(),
            ));
        }
        CodeMatrix::new(n, t, rows.into_iter().flatten().collect())
    }

    /// Matrix with every entry ±1 with equal probability, drawn row-major
    /// from the given generator.
    pub fn random_with(n: usize, t: usize, rng: &mut Prng) -> Result<Self> {
        if n < 1 || t < 2 {
            return Err(Error::InvalidDimensions { n, t });
        }
        let entries = (0..n * t).map(|_| rng.sign()).collect();
        Ok(CodeMatrix { n, t, entries })
    }

    /// Convenience wrapper: fresh generator on the initialization stream.
    /// Identical (n, T, seed) always produces the identical matrix.
    pub fn random(n: usize, t: usize, seed: u64) -> Result<Self> {
        CodeMatrix::random_with(n, t, &mut Prng::new(seed, STREAM_INIT))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> i8 {
        self.entries[a * self.t + b]
    }

    #[inline]
    pub fn row(&self, a: usize) -> &[i8] {
        &self.entries[a * self.t..(a + 1) * self.t]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks_exact(self.t)
    }

    /// Negate entry (a, b). Applying twice restores the matrix.
    pub fn flip(&mut self, idx: BitIndex) -> Result<()> {
        if idx.a >= self.n || idx.b >= self.t {
            return Err(Error::IndexOutOfRange {
                code: idx.a,
                chip: idx.b,
                n: self.n,
                t: self.t,
            });
        }
        self.entries[idx.a * self.t + idx.b] *= -1;
        Ok(())
    }

    /// Per-code constraint report: row sums and shift-1 autocorrelation,
    /// each O(T), computed without any correlation matrices.
    pub fn check_constraints(&self, spec: ConstraintSpec) -> ConstraintReport {
        let target = ConstraintSpec::acz_target_abs(self.t);
        let codes = self
            .rows()
            .map(|row| {
                let row_sum: i32 = row.iter().map(|&v| i32::from(v)).sum();
                let shift1 = shift1_autocorr(row);
                CodeCheck {
                    row_sum,
                    shift1_autocorr: shift1,
                    balanced_ok: !spec.balanced || row_sum == 0,
                    acz_ok: !spec.acz || shift1.abs() == target,
                }
            })
            .collect();
        ConstraintReport { codes }
    }
}

/// Periodic autocorrelation sum at shift 1: Σ_τ x[τ]·x[(τ+1) mod T].
pub fn shift1_autocorr(row: &[i8]) -> i32 {
    let t = row.len();
    (0..t)
        .map(|tau| i32::from(row[tau]) * i32::from(row[(tau + 1) % t]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_reproducible() {
        let a = CodeMatrix::random(1, 4, 3).unwrap();
        let b = CodeMatrix::random(1, 4, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.rows().next().unwrap().iter().all(|&v| v == 1 || v == -1));
    }

    #[test]
    fn random_seeds_differ() {
        // n·T = 128 ≥ 64, so distinct seeds colliding would be astonishing.
        let a = CodeMatrix::random(4, 32, 1).unwrap();
        let b = CodeMatrix::random(4, 32, 2).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn random_full_problem_size() {
        let m = CodeMatrix::random(63, 1023, 5).unwrap();
        assert_eq!(m.n() * m.t(), 64_449);
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(CodeMatrix::random(0, 4, 1).is_err());
        assert!(CodeMatrix::random(1, 1, 1).is_err());
        assert!(CodeMatrix::new(2, 2, vec![1, 1, 1]).is_err());
        assert!(CodeMatrix::new(1, 2, vec![1, 0]).is_err());
    }

    #[test]
    fn flip_negates_and_is_involution() {
        let mut m = CodeMatrix::from_rows(vec![vec![1, 1, 1, -1], vec![1, -1, 1, 1]]).unwrap();
        let orig = m.clone();
        m.flip(BitIndex::new(1, 1)).unwrap();
        assert_eq!(m.row(1), &[1, 1, 1, 1]);
        assert_eq!(m.row(0), orig.row(0));
        m.flip(BitIndex::new(1, 1)).unwrap();
        assert_eq!(m, orig);
    }

    #[test]
    fn flip_rejects_out_of_range() {
        let mut m = CodeMatrix::random(2, 4, 0).unwrap();
        assert!(m.flip(BitIndex::new(2, 0)).is_err());
        assert!(m.flip(BitIndex::new(0, 4)).is_err());
    }

    #[test]
    fn constraint_checks_on_known_codes() {
        let spec = ConstraintSpec {
            balanced: true,
            acz: true,
        };

        // Alternating code: perfectly balanced, worst possible shift-1 sum.
        let m = CodeMatrix::from_rows(vec![vec![1, -1, 1, -1]]).unwrap();
        let r = &m.check_constraints(spec).codes[0];
        assert_eq!((r.row_sum, r.shift1_autocorr), (0, -4));
        assert!(r.balanced_ok && !r.acz_ok);

        let m = CodeMatrix::from_rows(vec![vec![1, 1, 1, 1]]).unwrap();
        let r = &m.check_constraints(spec).codes[0];
        assert_eq!((r.row_sum, r.shift1_autocorr), (4, 4));
        assert!(!r.balanced_ok && !r.acz_ok);

        let m = CodeMatrix::from_rows(vec![vec![1, 1, -1, -1]]).unwrap();
        let r = &m.check_constraints(spec).codes[0];
        assert_eq!((r.row_sum, r.shift1_autocorr), (0, 0));
        assert!(r.balanced_ok && r.acz_ok);
        assert!(m.check_constraints(spec).all_ok());
    }

    #[test]
    fn disabled_checks_pass_vacuously() {
        let m = CodeMatrix::from_rows(vec![vec![1, 1, 1, 1]]).unwrap();
        assert!(m.check_constraints(ConstraintSpec::none()).all_ok());
    }

    #[test]
    fn odd_length_acz_target_is_one() {
        assert_eq!(ConstraintSpec::acz_target_abs(1023), 1);
        assert_eq!(ConstraintSpec::acz_target_abs(4092), 0);
    }

    #[test]
    fn balanced_requires_even_length() {
        let spec = ConstraintSpec {
            balanced: true,
            acz: false,
        };
        assert!(spec.validate(1023).is_err());
        assert!(spec.validate(1024).is_ok());
    }
}
