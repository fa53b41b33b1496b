use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope {p}/{q}: {reason}")]
    InvalidSlope { p: i64, q: i64, reason: &'static str },

    #[error("degeneracy locus 0/0 is undefined")]
    ZeroLocus,

    #[error("invalid lens space L({p},{q}): {reason}")]
    InvalidLens { p: i64, q: i64, reason: &'static str },

    #[error("continued fraction input ({p},{q}) requires 0 < q < p with gcd 1")]
    InvalidFractionInput { p: i64, q: i64 },

    #[error("continued fraction terms must all be >= 2")]
    InvalidContinuedFraction,

    #[error("vector must be nonnegative and nondecreasing: {0:?}")]
    NotSortedNonnegative(Vec<i64>),

    #[error("{0:?} is not a changemaker vector")]
    NotChangemaker(Vec<i64>),

    #[error("zero vector has no proper orthogonal complement")]
    ZeroVector,

    #[error("plumbing weights must all be >= 2: {0:?}")]
    InvalidPlumbingWeight(Vec<i64>),

    #[error("Gram matrix is not square and symmetric")]
    MalformedGram,

    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("norm of {sigma:?} is {norm}, expected {p}")]
    NormMismatch { sigma: Vec<i64>, norm: i64, p: i64 },

    #[error("p - |sigma|_1 = {0} is negative or odd")]
    GenusParity(i64),

    #[error("Laurent polynomial is not symmetric")]
    AsymmetricPolynomial,

    #[error("invalid torus knot T({r},{s}): {reason}")]
    InvalidTorusKnot { r: i64, s: i64, reason: &'static str },

    #[error("genus must be >= 1")]
    InvalidGenus,

    #[error("invalid cable parameters: {0}")]
    InvalidCable(&'static str),

    #[error("winding number {w} must be >= 2 and coprime to p = {p}")]
    InvalidWinding { p: i64, w: i64 },

    #[error("ambient dimension {given} does not match plumbing rank + 1 = {expected}")]
    DimensionMismatch { given: usize, expected: usize },

    #[error("arithmetic overflow")]
    Overflow,
}
