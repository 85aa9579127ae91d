use thiserror::Error;

/// Failures raised by the identification library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("signals live on different sampling grids")]
    GridMismatch,

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("fractional order must be positive, got {0}")]
    NonPositiveOrder(f64),

    #[error("stepping denominator a1*T^-alpha + a2*T^-beta + a3 vanishes")]
    DegenerateDenominator,

    #[error("simulated response diverged at sample {0}")]
    NonFiniteResponse(usize),

    #[error("equation system is singular (pivot {pivot:e} below threshold {threshold:e})")]
    SingularSystem { pivot: f64, threshold: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidSearch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
