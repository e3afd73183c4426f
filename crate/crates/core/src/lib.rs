//! Exact enumeration of raised k-Dyck paths.
//!
//! A k-Dyck path uses up steps `(1,1)` and down steps `(1,1-k)` and never
//! goes below the x-axis. A raised path of shape `(α,β)` starts at height
//! `α` and ends at height `β`; classes are indexed by the number `n` of down
//! steps. Counts come from closed formulas, the defining recurrence, or
//! truncated generating functions, and [`oracle`] provides independent
//! brute-force and lattice DP ground truth.

pub mod bounded;
pub mod error;
pub mod filters;
pub mod oeis;
pub mod oracle;
pub mod series;
pub mod shape;

pub use error::{Error, Result};
pub use series::{binom, catalan_series, raney, ExactInt, TruncatedSeries, K};
pub use shape::{PathClassQuery, Shape};
