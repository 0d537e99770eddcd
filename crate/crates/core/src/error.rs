use thiserror::Error;

/// Errors produced by parameter validation and the numerical kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid does not cover the packet support: {0}")]
    DomainCoverage(String),
    #[error("energy must be non-negative, got {0}")]
    NegativeEnergy(f64),
    #[error("scattering amplitudes are indeterminate at k = 0 with zero coupling")]
    Threshold,
    #[error("degenerate pole configuration: {0}")]
    DegeneratePoles(String),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("linear solve failed: {0}")]
    LinearSolve(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
