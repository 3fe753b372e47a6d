//! Primality testing.
//!
//! Below 2^64 the answer is deterministic (fixed Miller-Rabin witness set);
//! above it we run BPSW plus a configurable number of extra Miller-Rabin
//! rounds with fixed bases, so repeated runs always agree. Certificates
//! record which method produced a verdict.

use crate::arith::{mod_pow_u64, mulmod_u64, nat, to_u64};
use crate::factor::{factorize, FactorBudget};
use crate::{Error, Natural, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Seven-base deterministic witness set for n < 2^64 (Sinclair's set).
pub const MR_BASES_U64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Trial-division screen applied before anything else.
const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Fixed extra Miller-Rabin bases used above 2^64 (after BPSW).
const EXTRA_BASES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimalityStatus {
    Prime,
    ProbablePrime,
    Composite,
    /// 0 and 1: not prime, but carrying no compositeness witness either.
    BelowTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimalityMethod {
    Trial,
    DeterministicMillerRabin,
    Bpsw,
    LucasLehmer,
}

impl PrimalityMethod {
    pub fn label(self) -> &'static str {
        match self {
            PrimalityMethod::Trial => "trial",
            PrimalityMethod::DeterministicMillerRabin => "deterministic-mr",
            PrimalityMethod::Bpsw => "bpsw",
            PrimalityMethod::LucasLehmer => "lucas-lehmer",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        match s {
            "trial" => Some(PrimalityMethod::Trial),
            "deterministic-mr" => Some(PrimalityMethod::DeterministicMillerRabin),
            "bpsw" => Some(PrimalityMethod::Bpsw),
            "lucas-lehmer" => Some(PrimalityMethod::LucasLehmer),
            _ => None,
        }
    }
}

/// Outcome of a primality check. Composite verdicts below 2^64 always carry
/// a witness: either a proper factor or a Miller-Rabin base that exposed
/// compositeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalityVerdict {
    pub status: PrimalityStatus,
    pub witness: Option<Natural>,
    pub method: PrimalityMethod,
}

impl PrimalityVerdict {
    pub fn is_prime(&self) -> bool {
        matches!(
            self.status,
            PrimalityStatus::Prime | PrimalityStatus::ProbablePrime
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimalityConfig {
    /// Extra fixed-base Miller-Rabin rounds on top of BPSW (above 2^64).
    pub extra_rounds: u32,
}

impl Default for PrimalityConfig {
    fn default() -> Self {
        PrimalityConfig { extra_rounds: 2 }
    }
}

pub fn is_prime(n: &Natural) -> PrimalityVerdict {
    is_prime_with(n, &PrimalityConfig::default())
}

pub fn is_prime_with(n: &Natural, cfg: &PrimalityConfig) -> PrimalityVerdict {
    match to_u64(n) {
        Some(v) => is_prime_u64(v),
        None => is_prime_big(n, cfg),
    }
}

pub fn is_prime_u64(n: u64) -> PrimalityVerdict {
    if n < 2 {
        return PrimalityVerdict {
            status: PrimalityStatus::BelowTwo,
            witness: None,
            method: PrimalityMethod::Trial,
        };
    }
    for p in SMALL_PRIMES {
        if n == p {
            return PrimalityVerdict {
                status: PrimalityStatus::Prime,
                witness: None,
                method: PrimalityMethod::Trial,
            };
        }
        if n.is_multiple_of(p) {
            return PrimalityVerdict {
                status: PrimalityStatus::Composite,
                witness: Some(nat(p)),
                method: PrimalityMethod::Trial,
            };
        }
    }
    if n < 101 * 101 {
        // trial screen is already exhaustive here
        return PrimalityVerdict {
            status: PrimalityStatus::Prime,
            witness: None,
            method: PrimalityMethod::Trial,
        };
    }
    for base in MR_BASES_U64 {
        if !mr_round_u64(n, base) {
            return PrimalityVerdict {
                status: PrimalityStatus::Composite,
                witness: Some(nat(base)),
                method: PrimalityMethod::DeterministicMillerRabin,
            };
        }
    }
    PrimalityVerdict {
        status: PrimalityStatus::Prime,
        witness: None,
        method: PrimalityMethod::DeterministicMillerRabin,
    }
}

/// One Miller-Rabin round; true means "passes" (no compositeness seen).
pub fn mr_round_u64(n: u64, base: u64) -> bool {
    debug_assert!(n > 2 && n % 2 == 1);
    let base = base % n;
    if base == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = mod_pow_u64(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// One Miller-Rabin round on a big odd n.
pub fn mr_round(n: &Natural, base: &Natural) -> bool {
    if let (Some(n64), Some(b64)) = (to_u64(n), to_u64(base)) {
        return mr_round_u64(n64, b64);
    }
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s as usize;
    let base = base % n;
    if base.is_zero() {
        return true;
    }
    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn is_prime_big(n: &Natural, cfg: &PrimalityConfig) -> PrimalityVerdict {
    debug_assert!(to_u64(n).is_none());
    for p in SMALL_PRIMES {
        if (n % p).is_zero() {
            return PrimalityVerdict {
                status: PrimalityStatus::Composite,
                witness: Some(nat(p)),
                method: PrimalityMethod::Trial,
            };
        }
    }
    if !mr_round(n, &nat(2)) {
        return PrimalityVerdict {
            status: PrimalityStatus::Composite,
            witness: Some(nat(2)),
            method: PrimalityMethod::Bpsw,
        };
    }
    if !strong_lucas_selfridge(n) {
        return PrimalityVerdict {
            status: PrimalityStatus::Composite,
            witness: None,
            method: PrimalityMethod::Bpsw,
        };
    }
    for base in EXTRA_BASES.iter().take(cfg.extra_rounds as usize) {
        if !mr_round(n, &nat(*base)) {
            return PrimalityVerdict {
                status: PrimalityStatus::Composite,
                witness: Some(nat(*base)),
                method: PrimalityMethod::Bpsw,
            };
        }
    }
    PrimalityVerdict {
        status: PrimalityStatus::ProbablePrime,
        witness: None,
        method: PrimalityMethod::Bpsw,
    }
}

/// Jacobi symbol (d / n) for odd n > 0 and small signed d.
fn jacobi_i64(d: i64, n: &Natural) -> i32 {
    debug_assert!(n.is_odd());
    let n_int = BigInt::from(n.clone());
    let mut a = BigInt::from(d).mod_floor(&n_int).to_biguint().unwrap();
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32().unwrap() == 3 && (&n % 4u32).to_u32().unwrap() == 3 {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Divide by 2 mod odd n, in BigInt arithmetic.
fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = x.mod_floor(n);
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}

/// Strong Lucas probable-prime test with the Selfridge parameters
/// (D = 5, -7, 9, -11, ... with (D/n) = -1; P = 1, Q = (1-D)/4).
fn strong_lucas_selfridge(n: &Natural) -> bool {
    // square numbers have no D with (D/n) = -1
    if crate::arith::is_square(n).is_some() {
        return false;
    }
    let mut d: i64 = 5;
    loop {
        match jacobi_i64(d, n) {
            -1 => break,
            0 => return false, // shares a factor with n (|d| << n here)
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -(d - 2) };
    }
    let q: i64 = (1 - d) / 4;
    let n_int = BigInt::from(n.clone());

    // n + 1 = d0 * 2^s with d0 odd
    let n_plus_1 = n + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap();
    let d0 = &n_plus_1 >> s as usize;

    // binary ladder for (U_k, V_k, Q^k) starting at k = 1
    let mut u = BigInt::one();
    let mut v = BigInt::one(); // P = 1
    let mut qk = BigInt::from(q).mod_floor(&n_int);
    let bits = d0.bits();
    for i in (0..bits - 1).rev() {
        // k -> 2k
        u = (&u * &v).mod_floor(&n_int);
        v = (&v * &v - (&qk << 1u32)).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if d0.bit(i) {
            // k -> k + 1 (P = 1)
            let u1 = half_mod(&u + &v, &n_int);
            let v1 = half_mod(BigInt::from(d) * &u + &v, &n_int);
            u = u1;
            v = v1;
            qk = (qk * q).mod_floor(&n_int);
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - (&qk << 1u32)).mod_floor(&n_int);
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk).mod_floor(&n_int);
    }
    false
}

/// Lucas-Lehmer test: decides whether 2^p - 1 is prime, for prime p.
///
/// Composite results carry a proper factor as witness when a cheap trial
/// split of 2^p - 1 finds one (it always does for p <= 63).
pub fn lucas_lehmer(p: u64) -> Result<PrimalityVerdict> {
    if !is_prime(&nat(p)).is_prime() {
        return Err(Error::CompositeExponent { p });
    }
    if p == 2 {
        return Ok(PrimalityVerdict {
            status: PrimalityStatus::Prime,
            witness: None,
            method: PrimalityMethod::LucasLehmer,
        });
    }
    let m: Natural = (Natural::one() << p as usize) - 1u32;
    let mut s = nat(4);
    for _ in 0..(p - 2) {
        if s < nat(2) {
            s += &m;
        }
        s = &s * &s - 2u32;
        s = mersenne_reduce(s, p, &m);
    }
    if s.is_zero() {
        Ok(PrimalityVerdict {
            status: PrimalityStatus::Prime,
            witness: None,
            method: PrimalityMethod::LucasLehmer,
        })
    } else {
        let witness = mersenne_factor_witness(&m);
        Ok(PrimalityVerdict {
            status: PrimalityStatus::Composite,
            witness,
            method: PrimalityMethod::LucasLehmer,
        })
    }
}

/// Reduce mod 2^p - 1 using shift-and-mask folding.
fn mersenne_reduce(mut x: Natural, p: u64, m: &Natural) -> Natural {
    while x.bits() > p {
        x = (&x & m) + (&x >> p as usize);
    }
    if &x == m {
        Natural::zero()
    } else {
        x
    }
}

fn mersenne_factor_witness(m: &Natural) -> Option<Natural> {
    let budget = FactorBudget {
        rho_iterations: 200_000,
        ..FactorBudget::default()
    };
    let f = factorize(m, &budget);
    f.factors
        .first()
        .map(|(p, _)| p.clone())
        .filter(|p| p != m)
}
