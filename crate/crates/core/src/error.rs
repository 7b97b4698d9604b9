use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("negative eigenvalue {0:.3e}")]
    NegativeEigenvalue(f64),

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("bases are not mutually unbiased")]
    NotMutuallyUnbiased,

    #[error("unknown channel '{0}' (expected IB, IF, IBF, DP or AD)")]
    UnknownChannel(String),

    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),

    #[error("eigendecomposition failed to converge")]
    EigenFailure,
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<f64> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(value)
    } else {
        Err(Error::OutOfRange { name, value, range })
    }
}
