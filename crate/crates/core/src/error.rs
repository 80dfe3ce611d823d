use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("field modulus is not a monic irreducible polynomial over F_{0}")]
    ReducibleModulus(u64),
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("cannot raise precision from {from} to {to}")]
    PrecisionIncrease { from: u32, to: u32 },
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("no monic solution of degree at most {0}")]
    SearchExhausted(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("no solution of a^2 + b^2 = -1 modulo {0}")]
    NoSolution(u64),
    #[error("unexpected vanishing: {0}")]
    UnexpectedVanishing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
