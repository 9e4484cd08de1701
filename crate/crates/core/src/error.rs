use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {size} exceeds the bound {bound}")]
    SizeBound { size: u128, bound: u64 },
    #[error("gcd({q}, {n}) != 1")]
    NotCoprime { q: u64, n: u64 },
    #[error("no primitive {n}-th root of unity satisfies theta^{exponent} = {value}")]
    PinUnsatisfiable { n: u64, exponent: u64, value: i64 },
    #[error("malformed theta pin {0:?}, expected theta^E=C")]
    BadPin(String),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient of X^{degree} is not in the base field")]
    CoefficientNotInBaseField { degree: usize },
    #[error("subset is not invariant under multiplication by {q} mod {n}")]
    NotInvariant { q: u64, n: u64 },
    #[error("invalid q-permutation: {0}")]
    InvalidPermutation(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("{s} is not a unit modulo {n}")]
    NotUnit { s: u64, n: u64 },
    #[error("{q}*{t} != {t} mod {n}")]
    NotQTranslation { q: u64, t: u64, n: u64 },
    #[error("q-permutations act on different (n, q)")]
    Mismatch,
    #[error("no Type-I duadic splitting of Z_{n} over q = {q}")]
    NoSplitting { q: u64, n: u64 },
    #[error("dimension {dimension} is not half the length {n}")]
    DimensionMismatch { dimension: usize, n: u64 },
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{what} needs {size} steps, above the bound {bound}")]
    TooLarge { what: &'static str, size: u128, bound: u128 },
    #[error("q = {0} is not congruent to 1 mod 4")]
    BadResidue(u64),
    #[error("degree {degree} is not below {bound}")]
    DegreeTooHigh { degree: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
