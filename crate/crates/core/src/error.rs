use thiserror::Error;

/// Errors produced by the spectral toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient {name} must be positive and finite, got {value}")]
    NonPositiveCoefficient { name: &'static str, value: f64 },

    /// The distance of `2 sqrt(alpha) / (pi beta) - 1/2` to the nearest
    /// natural number is too small: the spectrum is close to defective.
    #[error("non-degeneracy margin {margin:.3e} is not above the rejection tolerance {tol:.3e}")]
    AssumptionViolated { margin: f64, tol: f64 },

    #[error("Riesz constant C = {value} is not in (0, 1)")]
    RieszConstantDegenerate { value: f64 },

    #[error("states live on different grids ({left} vs {right} intervals)")]
    GridMismatch { left: usize, right: usize },

    #[error("grid with {intervals} intervals is too coarse (need at least {min})")]
    GridTooCoarse { intervals: usize, min: usize },

    #[error("grid must have an even, nonzero number of intervals, got {0}")]
    OddIntervals(usize),

    #[error("boundary trace of the initial state differs from d(0) by {mismatch:.3e} (tolerance {tol:.3e})")]
    CompatibilityViolated { mismatch: f64, tol: f64 },

    #[error("truncation tail bound {bound:.3e} exceeds the requested accuracy {limit:.3e}")]
    TruncationInsufficient { bound: f64, limit: f64 },

    #[error("finite-difference step is singular or unstable: {0}")]
    StepUnstableOrSingular(String),

    #[error("horizon {t_end} is shorter than 3/kappa0 = {required}")]
    HorizonTooShort { t_end: f64, required: f64 },

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
