use thiserror::Error;

/// Every failure the library reports. Vacuous bounds are not errors; they
/// come back as a zero value with a flag on the result.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(f64),
    #[error("alpha = 1 is the KL limit; use the KL divergence instead")]
    AlphaOne,
    #[error("alpha must exceed 1, got {0}")]
    AlphaAtMostOne(f64),
    #[error("hellinger order must exceed 1, got {0}")]
    OrderAtMostOne(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("lambda must lie in [0, 1/2], got {0}")]
    LambdaOutOfRange(f64),
    #[error("eta must lie in [0, 1], got {0}")]
    EtaOutOfRange(f64),
    #[error("divergence is infinite for these parameters")]
    DivergenceInfinite,
    #[error("inverse of phi is undefined at {0}")]
    InverseDomainError(f64),
    #[error("quadrature did not reach tolerance (estimate {estimate}, error {error})")]
    QuadratureFailure { estimate: f64, error: f64 },
    #[error("ratio undefined: reference and perturbed measures coincide")]
    ZeroDenominator,
    #[error("estimator {0} is not available for this model")]
    UnsupportedEstimator(&'static str),
    #[error("joint has {0} cells, enumeration limit is 10000")]
    TooLarge(usize),
    #[error("at least 10000 trials are required, got {0}")]
    TooFewTrials(usize),
    #[error("empty parameter grid")]
    EmptyGrid,
    #[error("phi must be {0} for this branch of the bound")]
    WrongMonotonicity(&'static str),
    #[error("callback failed: {0}")]
    CallbackFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
