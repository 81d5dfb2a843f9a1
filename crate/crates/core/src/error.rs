use thiserror::Error;

/// Errors raised anywhere in the counting pipeline.
///
/// `NonIntegerSolution`, `NegativeCount` and `BoundViolation` are never a
/// valid outcome: they mean an identity that must hold did not.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element has no inverse (zero)")]
    ZeroInverse,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("polynomial is not monic")]
    NonMonic,
    #[error("modulus is not irreducible over F_{0}")]
    Reducible(u64),
    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: usize, found: usize },
    #[error("cannot parse polynomial: {0}")]
    PolyParse(String),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("value is not rational")]
    NotRational,
    #[error("value is not real")]
    NotReal,
    #[error("{k} is not a unit mod {p}")]
    BadAutomorphism { k: i64, p: u64 },
    #[error("{g} is not a primitive root mod {p}")]
    NotPrimitive { g: u64, p: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("inverse is not left-circulant")]
    NotCirculant,
    #[error("field of order {q} exceeds the enumeration guard {guard}")]
    TooLarge { q: u128, guard: u128 },
    #[error("field order {p}^{m} does not fit in 128 bits")]
    Overflow { p: u64, m: u32 },
    #[error("solution component {index} is not an integer")]
    NonIntegerSolution { index: usize },
    #[error("solution component {index} is negative")]
    NegativeCount { index: usize },
    #[error("table invariant violated: {0}")]
    TableInvariant(String),
    #[error("jobs do not partition [1, {q}): {reason}")]
    BadPartition { q: u128, reason: String },
    #[error("|K^(m)({u})| = {value} exceeds the Weil bound {bound}")]
    WeilViolation { u: u64, value: f64, bound: f64 },
    #[error("deviation {deviation} exceeds bound {bound} at m={m}, cell {cell}")]
    BoundViolation {
        m: u32,
        cell: String,
        deviation: f64,
        bound: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
