//! Exclusion certificates for distances between perfect numbers.
//!
//! Given a candidate distance `delta`, the library decides whether known
//! modular and triangular-family criteria rule out two perfect numbers at
//! that distance, and emits a replayable certificate when they do. A
//! brute-force divisor-sum sieve provides ground truth to validate every
//! rule empirically.
//!
//! Module map:
//! - [`arith`], [`primality`], [`factor`] — the bignum kernel (isqrt,
//!   squares, gcd, modular exponentiation, Miller-Rabin/BPSW,
//!   Lucas-Lehmer, Pollard rho).
//! - [`perfect`] — sum of divisors, perfectness, Euclid-Euler and odd
//!   Euler-form classification, mod-12 residue classes.
//! - [`gaps`] — the distance rules as executable checks: minimal gap,
//!   non-divisibility, the +/-1 mod 12 exclusion, triangular
//!   decomposition, family membership, the A*B split and its shape checks.
//! - [`trail`], [`certificate`], [`engine`], [`verify`] — certificate
//!   statements, the `.gapcert` format, the classifier, and the
//!   independent verifier.
//! - [`sieve`] — segmented divisor-sum sieve, gap table, claim validation.

pub mod arith;
pub mod certificate;
pub mod engine;
pub mod error;
pub mod factor;
pub mod gaps;
pub mod perfect;
pub mod primality;
pub mod sieve;
pub mod trail;
pub mod verify;

/// Arbitrary-precision non-negative integer; every quantity in the
/// library lives here unless a machine word provably suffices.
pub type Natural = num_bigint::BigUint;

pub use certificate::{ExclusionCertificate, ExclusionRule};
pub use engine::{classify, ClassifyOptions, GapVerdict};
pub use error::{Error, Result};
pub use verify::{verify_certificate, VerificationReport};
