use thiserror::Error;

/// Errors raised by precondition checks and internal consistency assertions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: i64, n: u64 },
    #[error("modulus {0} must be >= 2")]
    ModulusTooSmall(u64),
    #[error("Jacobi symbol needs an odd modulus, got {0}")]
    EvenModulus(u64),
    #[error("length {0} must be odd")]
    EvenLength(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is a perfect square")]
    PerfectSquare(i64),
    #[error("invalid discriminant {0}: must be negative and 0 or 1 mod 4")]
    InvalidDiscriminant(i64),
    #[error("multiplier {a} does not act as an involution on the cosets mod {n}")]
    MultiplierNotInvolution { a: i64, n: u64 },
    #[error("multiplier {t} mod {n} fails the splitting precondition: {reason}")]
    MultiplierPrecondition { t: i64, n: u64, reason: &'static str },
    #[error("set is not closed under multiplication by {base} mod {n}")]
    NotCosetClosed { base: u64, n: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("codes have different length or field")]
    CodeMismatch,
    #[error("gamma does not satisfy 1 + gamma^(q+1) * n = 0")]
    BadGamma,
    #[error("root field GF({p}^{degree}) is too large for exact enumeration")]
    RootFieldTooLarge { p: u64, degree: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
