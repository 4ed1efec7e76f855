use thiserror::Error;

/// Errors raised by the constructors and engines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("p = {p} is too small here (need p >= {min})")]
    PrimeTooSmall { p: u32, min: u32 },
    #[error("{{{m}}} is undefined: {m} is divisible by p - 1 = {modulus}")]
    DegenerateBracket { m: i64, modulus: u32 },
    #[error("exponent {m} is divisible by p + 1; the character has niveau 1")]
    ScalarNiveau2 { m: u32 },
    #[error("principal series characters must be distinct (both exponents are {0})")]
    EqualCharacters(u32),
    #[error("symmetric power degree {n} out of range [0, {max}]")]
    DegreeOutOfRange { n: i64, max: u32 },
    #[error("invalid local representation: {0}")]
    InvalidLocalRep(String),
    #[error("weight list for the places above p is empty")]
    EmptyPlaceList,
    #[error("mixed primes: expected p = {expected}, found p = {found}")]
    PrimeMismatch { expected: u32, found: u32 },
    #[error("weight sigma_({m},{n}) is not in the predicted weight set")]
    NotInWeightSet { m: u32, n: u32 },
    #[error("polynomial degrees differ ({left} vs {right})")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cyclotomic degree {degree} for p = {p} exceeds the configured bound {bound}")]
    UnsupportedPrime { p: u32, degree: usize, bound: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed record: {0}")]
    InvalidRecord(String),
    #[error("trace replay failed at step {step}: {reason}")]
    ReplayMismatch { step: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
