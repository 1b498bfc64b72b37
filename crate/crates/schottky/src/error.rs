//! Error type shared across the crate.
//!
//! Every variant carries a short machine-parsable code (see [`Error::code`])
//! so the CLI can emit single-line diagnostics of the form
//! `error[CODE]: message` and scripts can dispatch on the code alone.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input matrix is not symmetric within the 1e-12 max-norm budget.
    #[error("matrix asymmetry {max_asym:.3e} exceeds 1e-12 at entry ({i},{j})")]
    Asymmetry { i: usize, j: usize, max_asym: f64 },

    /// The imaginary part failed its positive-definiteness factorization.
    #[error("imaginary part is not positive definite")]
    NotPositiveDefinite,

    /// Smallest eigenvalue of the imaginary part is below the policy floor.
    #[error("smallest eigenvalue of Im tau ({lambda_min:.3e}) is below the floor {floor:.3e}")]
    EigenFloor { lambda_min: f64, floor: f64 },

    /// The certified truncation radius would exceed the configured cap.
    #[error("truncation radius {needed} exceeds the cap {max_radius}")]
    RadiusExceeded { needed: usize, max_radius: usize },

    /// Vector or matrix dimensions do not match the jet's genus.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Bernoulli numbers are only defined here for even indices.
    #[error("odd Bernoulli index {0} rejected (only even indices are exposed)")]
    OddBernoulliIndex(u32),

    /// The Jacobian-locus degree table stops at genus 7.
    #[error("no tabulated Jacobian degree for genus {0} (table covers 1..=7)")]
    TableAbsent(u32),

    /// relation_test requires a homogeneous polynomial.
    #[error("polynomial is not homogeneous: monomial degrees {0} and {1} differ")]
    NonHomogeneous(u64, u64),

    /// Malformed user input (CLI arguments, JSON files, parameter ranges).
    #[error("{0}")]
    BadInput(String),
}

impl Error {
    /// Stable machine-parsable code for scripting against CLI stderr.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Asymmetry { .. } => "ASYMMETRY",
            Error::NotPositiveDefinite => "NOT_POSITIVE_DEFINITE",
            Error::EigenFloor { .. } => "EIGEN_FLOOR",
            Error::RadiusExceeded { .. } => "RADIUS_EXCEEDED",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::OddBernoulliIndex(_) => "ODD_BERNOULLI_INDEX",
            Error::TableAbsent(_) => "TABLE_ABSENT",
            Error::NonHomogeneous(_, _) => "NON_HOMOGENEOUS",
            Error::BadInput(_) => "BAD_INPUT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
