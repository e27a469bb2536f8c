//! Optimization of binary spreading code families by bit-flip descent.
//!
//! A family of `n` codes of length `T` is a matrix with entries in {-1, +1}.
//! The quality of a family is measured by the periodic auto- and
//! cross-correlation values of its codes; this crate minimizes a p-norm-like
//! objective over those values by flipping one code bit at a time, using
//! exact incremental update rules so a flip costs O(nT) instead of a full
//! O(n^2 T log T) re-evaluation.
//!
//! Modules:
//! - [`model`]: the code matrix, constraint predicates, random initialization
//! - [`correlation`]: shift-correlation matrices (naive and FFT paths) and
//!   the exact single-flip update
//! - [`objective`]: objective evaluation, single-flip deltas, and the
//!   incrementally maintained delta matrix
//! - [`optimizer`]: the descent loop with greedy / fixed / adaptive search
//!   strategies, constraint handling, and multi-start
//! - [`io`]: code-family file formats (text and packed binary)

pub mod correlation;
pub mod error;
pub mod io;
pub mod model;
pub mod objective;
pub mod optimizer;
pub mod rng;

pub use error::Error;
pub use model::{BitIndex, CodeMatrix, ConstraintSpec};

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
