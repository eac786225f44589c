use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid spin quantum number: {0}")]
    InvalidSpin(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot normalize a zero vector")]
    ZeroNorm,

    #[error("state is not normalized (|norm^2 - 1| = {0:e})")]
    NotNormalized(f64),

    #[error("amplitude is not finite")]
    NonFinite,

    #[error("expectation value has an imaginary part of {0:e}; operator is not Hermitian")]
    NonRealExpectation(f64),

    #[error("operation requires spin {expected}, got spin {found}")]
    WrongSpin { expected: String, found: String },

    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("invalid rational number: {0}")]
    InvalidRational(String),

    #[error("frequency set is empty: the spectrum is static and has no revival time")]
    StaticSpectrum,

    #[error("anisotropy must be positive and finite, got {0}")]
    InvalidAnisotropy(f64),

    #[error("revival time is infinite")]
    InfiniteRevival,

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),

    #[error("norm drift {drift:e} at t = {time} exceeds the limit; use a smaller dt")]
    NormDrift { time: f64, drift: f64 },

    #[error("no {0} found in trajectory; increase t_end")]
    MissingFeature(&'static str),

    #[error("transverse field is zero: the quantity is unbounded")]
    ZeroTransverseField,
}
