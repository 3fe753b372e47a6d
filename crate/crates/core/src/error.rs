use crate::Natural;
use thiserror::Error;

/// Crate-wide error type. Incomplete factorizations are signalled, never
/// silently absorbed: callers that need them (σ, the classifier) decide
/// whether to retry with a bigger budget or report Inconclusive.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be nonzero")]
    ZeroModulus,

    #[error("input must be >= 1")]
    ZeroValue,

    #[error("exponent {p} is not prime")]
    CompositeExponent { p: u64 },

    #[error("operation requires an odd prime exponent, got {p}")]
    RequiresOddPrime { p: u64 },

    #[error("2^{p}-1 is not a Mersenne prime")]
    MersenneComposite { p: u64, factor: Option<Natural> },

    #[error("factorization of {n} incomplete: cofactor {cofactor} unresolved")]
    IncompleteFactorization { n: Natural, cofactor: Natural },

    #[error("{value} is not a perfect number")]
    NotPerfect { value: Natural },

    #[error("inputs must be distinct")]
    NotDistinct,

    #[error("inputs must satisfy x < y")]
    NotIncreasing,

    #[error("2^(p-1) must exceed 2m+1 (p = {p})")]
    ExponentTooSmall { p: u64 },

    #[error("A and B are not coprime (gcd = {gcd})")]
    NotCoprime { gcd: Natural },

    #[error("s = {s} lies in the excluded residue class s = 2 (mod 3)")]
    ExcludedResidueClass { s: Natural },

    #[error("screening prime l = {l} is composite")]
    ScreeningPrimeComposite { l: Natural },

    #[error("bound {bound} exceeds the configured budget {max}")]
    BudgetExceeded { bound: u64, max: u64 },

    #[error("candidate p = {p} could not be excluded")]
    CandidateNotExcluded { p: u64 },

    #[error("certificate parse error at line {line}: {message}")]
    CertificateSyntax { line: usize, message: String },

    #[error("statement failed at issue time: {statement}: {reason}")]
    StatementFailed { statement: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
