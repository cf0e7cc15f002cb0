use thiserror::Error;

/// Errors raised by the algebra, divisor, pairing and Arakelov layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the factorization bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("root certification failed at working precision: {0}")]
    PrecisionFailure(String),
    #[error("factor {0} is not certified irreducible and meets the queried place")]
    UncertifiedFactor(String),
    #[error("prime is not of degree one in x: {0}")]
    NotDegreeOne(String),
    #[error("the two isomorphisms are equal")]
    EqualIsoms,
    #[error("divisors are not coprime: both contain {0}")]
    NotCoprime(String),
    #[error("multiplicities cannot be read off at {0}: the specialization is not certified regular")]
    NonGeneric(String),
    #[error("pointwise residue at {0} needs number-field arithmetic")]
    PointwiseUnavailable(String),
    #[error("no valid Mobius shift c with |c| <= {0}")]
    ShiftExhausted(i64),
    #[error("horizontal supports intersect at {0}")]
    CommonSupport(String),
    #[error("no disjoint-support move found within the schedule")]
    MoveFailure,
    #[error(transparent)]
    Parse(#[from] crate::parse::ParseError),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
