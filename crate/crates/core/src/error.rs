use std::fmt;

/// Errors shared across the library. Construction-time violations are
/// reported here; mathematical impossibilities (e.g. a determinant that the
/// theory forces into the prime subfield landing outside it) panic instead.
#[derive(Debug)]
pub enum Error {
    /// The given modulus is not an odd prime (or, for field construction
    /// from q, not an odd prime power).
    NotOddPrime(u64),
    /// p^n exceeds the supported field size.
    Overflow { p: u64, n: u32 },
    /// Multiplicative inverse of zero requested.
    DivisionByZero,
    /// k does not divide q - 1.
    NotADivisor { k: u64, qm1: u64 },
    /// The construction needs an odd k.
    KMustBeOdd(u64),
    /// The formula is undefined for fields this small.
    QTooSmall(u64),
    /// An input lies in the wrong residue class for the claim.
    BadResidueClass { value: u64, requirement: &'static str },
    /// An exact integer division left a remainder; indicates a bug.
    NonIntegralResult(String),
    /// Input exceeds a configured exact-computation bound.
    BoundExceeded { value: u64, bound: u64 },
    /// The theorem's applicability condition does not hold for this input.
    ConditionFailed(String),
    /// A theorem tag string that names no known theorem.
    UnknownTheorem(String),
    Io(std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOddPrime(v) => write!(f, "{v} is not an odd prime (or odd prime power)"),
            Error::Overflow { p, n } => {
                write!(f, "{p}^{n} exceeds the supported field size")
            }
            Error::DivisionByZero => write!(f, "division by zero in a finite field"),
            Error::NotADivisor { k, qm1 } => write!(f, "k = {k} does not divide q - 1 = {qm1}"),
            Error::KMustBeOdd(k) => write!(f, "k = {k} must be odd"),
            Error::QTooSmall(q) => write!(f, "q = {q} is too small for this formula"),
            Error::BadResidueClass { value, requirement } => {
                write!(f, "{value} violates the residue condition: {requirement}")
            }
            Error::NonIntegralResult(what) => {
                write!(f, "expected an exact integer result: {what}")
            }
            Error::BoundExceeded { value, bound } => {
                write!(f, "{value} exceeds the exact-computation bound {bound}")
            }
            Error::ConditionFailed(what) => write!(f, "applicability condition failed: {what}"),
            Error::UnknownTheorem(s) => write!(f, "unknown theorem tag: {s}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
