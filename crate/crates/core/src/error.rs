use thiserror::Error;

/// Everything that can go wrong while building fields, geometries and embeddings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{what} = {value} exceeds the supported bound {bound}")]
    SizeExceeded {
        what: &'static str,
        value: u128,
        bound: u128,
    },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("modulus {0:?} is not monic irreducible of the stated degree")]
    InvalidModulus(Vec<u32>),
    #[error("element {value} is outside GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },

    #[error("projective dimension must be at least {min}, got {got}")]
    DimensionTooSmall { min: usize, got: usize },
    #[error("zero vector does not define a point")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    EqualPoints,
    #[error("expected projective dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("vector length {got} does not match ambient dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point is not contained in the subspace")]
    NotInSubspace,

    #[error("invalid flag: {0}")]
    FlagInvalid(&'static str),
    #[error("no element of the stabilizer moves the endpoint off the forbidden set")]
    NoValidMove,

    #[error("cycle length {k} outside [{min}, {max}]")]
    OutOfRange { k: usize, min: usize, max: usize },
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("gluing case violated: {0}")]
    CaseViolation(String),
    #[error("not part of the cycle: {0}")]
    NotInCycle(&'static str),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("brute-force count over budget: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
