use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("state not normalized: |amplitudes|^2 sums to {0}")]
    NotNormalized(f64),

    #[error("matrix not Hermitian: max asymmetry {0:e}")]
    NotHermitian(f64),

    #[error("trace is {got}, expected {expected}")]
    BadTrace { got: f64, expected: f64 },

    #[error("positivity violation: eigenvalue {0:e} below tolerance")]
    NotPositive(f64),

    #[error("superoperator is not trace-preserving (defect {0:e})")]
    NotTracePreserving(f64),

    #[error("superoperator is not Hermiticity-preserving (defect {0:e})")]
    NotHermiticityPreserving(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: last two estimates {previous:e}, {last:e}")]
    QuadratureNotConverged { previous: f64, last: f64 },

    #[error("eigensolver did not converge after {0} sweeps")]
    EigensolverNotConverged(usize),

    #[error("inequality chain violated: {0}")]
    InequalityViolation(String),

    #[error("register size {0} out of range 1..=3")]
    RegisterSize(usize),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
