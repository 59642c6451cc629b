use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("all coordinates are zero")]
    AllZero,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("component degrees differ: {0:?}")]
    DegreeMismatch(Vec<u32>),
    #[error("form is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero form")]
    ZeroDivisor,
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("requested degree {requested} is below the total degree {actual}")]
    DegreeTooSmall { requested: u32, actual: u32 },
    #[error("point lies on the support of the divisor")]
    OnDivisor,
    #[error("form must have coprime integer coefficients")]
    NotPrimitive,
    #[error("pencil parameter [0:0] is not a point of P^1")]
    ZeroParameter,
    #[error("factorization does not match the member form: {0}")]
    FactorizationMismatch(String),
    #[error("base point witness {0} is not on the divisor")]
    BaseWitnessOffDivisor(String),
    #[error("invalid pencil: {0}")]
    InvalidPencil(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("coefficient vector is too short")]
    EmptyVector,
    #[error("parameter constraint violated: {0}")]
    ParameterViolation(String),
    #[error("{0} has no rational fifth root")]
    IrrationalRoot(String),
    #[error("congruence check failed for u = {0}")]
    CongruenceFailure(String),
    #[error("unit search exhausted after {found} of {requested} points")]
    ExhaustedSearch { found: usize, requested: usize },
    #[error("endomorphism is undefined at the point (orbit index {index})")]
    IndeterminatePoint { index: usize },
    #[error("form is not linear")]
    NotALine,
    #[error("at most three lines can be completely invariant, got {0}")]
    TooManyLines(usize),
    #[error("point is not a singular point of the curve")]
    NotSingular,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
