//! Sparse precision matrix estimation for tensor-valued data.
//!
//! Observations are i.i.d. K-way tensors whose vectorization is Gaussian with a
//! Kronecker-structured covariance `Σ_K ⊗ ⋯ ⊗ Σ_1`. The [`estimator`] module fits
//! one sparse precision matrix per tensor mode by alternating graphical-lasso
//! solves (the tensor lasso), and the [`inference`] module turns the fitted
//! matrices into entrywise test statistics and an FDR-controlled edge set.
//!
//! The remaining modules supply the machinery: dense tensor algebra
//! ([`tensor`]), symmetric-matrix routines ([`linalg`]), the penalized
//! log-likelihood solver ([`glasso`]), synthetic ground truths and samplers
//! ([`simulate`]), evaluation criteria ([`metrics`]), and scalar normal-law
//! helpers ([`stats`]).

pub mod estimator;
pub mod glasso;
pub mod inference;
pub mod linalg;
pub mod metrics;
pub mod oracles;
pub mod simulate;
pub mod stats;
pub mod tensor;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("mode {mode} out of range for a {ndim}-way tensor")]
    ModeOutOfRange { mode: usize, ndim: usize },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use estimator::{InitStrategy, PrecisionSet, TlassoConfig};
pub use glasso::{GlassoConfig, GlassoResult};
pub use inference::InferenceReport;
pub use linalg::{kron, Matrix, SymMatrix};
pub use metrics::EvalResult;
pub use simulate::{GraphKind, GroundTruth, RngStream};
pub use tensor::DenseTensor;
