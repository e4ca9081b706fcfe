use thiserror::Error;

/// Errors produced by the library.
///
/// Variants split into input/validation problems (bad dimensions, malformed
/// data) and mathematical failures (singular matrices, missing solutions).
/// The CLI maps the first group to exit code 2 and the second to 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate symmetry data: {0}")]
    Degenerate(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("series did not converge within {terms} terms")]
    SeriesDiverged { terms: usize },

    #[error("quadrature did not reach tolerance (estimate {estimate:.3e}, error {error:.3e})")]
    Quadrature { estimate: f64, error: f64 },
}

impl Error {
    /// True for failures of the mathematics (as opposed to bad input).
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::Singular(_)
                | Error::NoSolution(_)
                | Error::SeriesDiverged { .. }
                | Error::Quadrature { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
