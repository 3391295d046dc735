use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i64, modulus: u64 },
    #[error("moduli {0} and {1} are not coprime")]
    ModuliNotCoprime(u64, u64),
    #[error("unsupported modulus {0}")]
    UnsupportedModulus(u64),
    #[error("character index {index} out of range for modulus {modulus}")]
    IndexOutOfRange { index: u64, modulus: u64 },
    #[error("a primitive character is required: {0}")]
    PrimitivityRequired(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("quadrature did not reach tolerance: estimate {estimate:e} > {tolerance:e}")]
    QuadratureFailure { estimate: f64, tolerance: f64 },
    #[error("did not converge: {0}")]
    NonConvergent(String),
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("no stationary point in the support")]
    NoStationaryPoint,
    #[error("more than one stationary point in the support")]
    MultipleStationaryPoints,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("degenerate function: {0}")]
    DegenerateFunction(String),
    #[error("root number inconsistent: |eps| = {modulus_of_eps}")]
    RootNumberInconsistent { modulus_of_eps: f64 },
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
