//! Truncated arithmetic in Novikov completions of `Z[Z^n]`, matrix inversion
//! by leading-level decomposition, and acyclicity of based complexes.
//!
//! The completion for a grading `phi` consists of series whose support is
//! bounded below in `phi`. [`Direction::Minus`] selects the opposite
//! completion (bounded below in `-phi`). With these conventions a Laurent
//! polynomial is invertible in the `Plus` completion iff its lowest slice is
//! `±` a monomial, and monic iff it is invertible in both.
//!
//! Verdicts never depend on the horizon; the horizon only bounds how much of
//! an inverse series is written out.

mod acyclic;
mod invert;
mod oracle;
mod series;

use thiserror::Error;

use crate::laurent::LaurentError;

pub use acyclic::{
    acyclic_by_rank, acyclicity_test, b_prime_leading_test, fraction_rank, AcyclicityReport, BasedComplex, CompletionRing, FractionField,
    NovikovCompletion,
};
pub use invert::{
    adjugate, decompose, invert_matrix, invert_series, laurent_invertible, leading_slice_test, mat_mul, unit_inverse, Invertibility,
    LevelDecomposition,
};
pub use oracle::{truncated_inverse_oracle, OracleOutcome};
pub use series::{exact_matrix, is_identity_to_precision, series_matrix_mul, Direction, NovikovSeries};

/// Number of `phi`-levels written out for inverse series unless configured.
pub const DEFAULT_HORIZON: i64 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error("zero matrix has no leading level")]
    ZeroMatrix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("not invertible: {reason}")]
    NotInvertible { reason: String },
    #[error("leading slice is degenerate; the leading-level test is inconclusive")]
    Degenerate,
    #[error("complex has the wrong shape: {0}")]
    BadShape(String),
    #[error("consecutive differentials do not compose to zero")]
    NotAComplex,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}
