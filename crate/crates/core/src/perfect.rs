//! Sum of divisors, perfectness, and the two Euler shape results: even
//! perfect numbers are 2^(p-1) * (2^p - 1) with 2^p - 1 prime, and any odd
//! perfect number would be q^(4b+1) * (product of even prime powers) with
//! q = 1 (mod 4). Classification here is shape only; it never asserts that
//! a number is perfect.

use crate::arith::{nat, to_u64};
use crate::factor::{factorize, FactorBudget, Factorization};
use crate::primality::{is_prime, lucas_lehmer, PrimalityStatus};
use crate::{Error, Natural, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Shape classification of an integer against the Euclid-Euler and odd
/// Euler forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerfectForm {
    /// value = 2^(p-1) * (2^p - 1) with the Mersenne factor prime.
    EvenPerfect { p: u64 },
    /// value odd, value = q^(4*beta+1) * square_part with q prime = 1 (mod 4)
    /// and every square_part exponent even.
    OddEulerCandidate {
        q: Natural,
        beta: u32,
        square_part: Factorization,
    },
    NotEulerShaped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mod12Compatibility {
    /// residue 4 or 6: possible for an even perfect number.
    EvenPerfectResidue,
    /// residue 1 or 9: possible for an odd perfect number (Touchard).
    OddPerfectResidue,
    IncompatibleWithPerfect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mod12Class {
    pub residue: u8,
    pub compatibility: Mod12Compatibility,
}

pub const EVEN_PERFECT_RESIDUES_MOD12: [u8; 2] = [4, 6];
pub const ODD_PERFECT_RESIDUES_MOD12: [u8; 2] = [1, 9];

/// Sum of divisors via a complete factorization.
pub fn sigma(n: &Natural) -> Result<Natural> {
    sigma_with(n, &FactorBudget::default())
}

pub fn sigma_with(n: &Natural, budget: &FactorBudget) -> Result<Natural> {
    if n.is_zero() {
        return Err(Error::ZeroValue);
    }
    let f = factorize(n, budget);
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            n: n.clone(),
            cofactor: f.cofactor,
        });
    }
    Ok(sigma_of_factorization(&f))
}

/// sigma is multiplicative: product of (p^(e+1) - 1) / (p - 1).
pub fn sigma_of_factorization(f: &Factorization) -> Natural {
    let mut acc = Natural::one();
    for (p, e) in &f.factors {
        let num = p.pow(e + 1) - 1u32;
        let den = p - 1u32;
        acc *= num / den;
    }
    acc
}

pub fn is_perfect(n: &Natural) -> Result<bool> {
    is_perfect_with(n, &FactorBudget::default())
}

pub fn is_perfect_with(n: &Natural, budget: &FactorBudget) -> Result<bool> {
    Ok(sigma_with(n, budget)? == n * 2u32)
}

/// 2^(p-1) * (2^p - 1) for a Lucas-Lehmer-verified exponent.
pub fn even_perfect(p: u64) -> Result<Natural> {
    let verdict = match lucas_lehmer(p) {
        Ok(v) => v,
        Err(Error::CompositeExponent { p }) => {
            // composite exponent forces a composite Mersenne number
            return Err(Error::MersenneComposite { p, factor: None });
        }
        Err(e) => return Err(e),
    };
    if verdict.status != PrimalityStatus::Prime {
        return Err(Error::MersenneComposite {
            p,
            factor: verdict.witness,
        });
    }
    let mersenne: Natural = (Natural::one() << p as usize) - 1u32;
    Ok((Natural::one() << (p - 1) as usize) * mersenne)
}

pub fn euler_form(n: &Natural) -> Result<PerfectForm> {
    euler_form_with(n, &FactorBudget::default())
}

pub fn euler_form_with(n: &Natural, budget: &FactorBudget) -> Result<PerfectForm> {
    if n.is_zero() {
        return Err(Error::ZeroValue);
    }
    if n.is_even() {
        // n = 2^(p-1) * odd; the odd part must be exactly 2^p - 1 and prime
        let e = n.trailing_zeros().unwrap();
        let odd = n >> e as usize;
        let p = e + 1;
        let expected: Natural = (Natural::one() << p as usize) - 1u32;
        if odd == expected && is_prime(&odd).is_prime() {
            return Ok(PerfectForm::EvenPerfect { p });
        }
        return Ok(PerfectForm::NotEulerShaped);
    }

    let f = factorize(n, budget);
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            n: n.clone(),
            cofactor: f.cofactor,
        });
    }
    let odd_exponents: Vec<&(Natural, u32)> =
        f.factors.iter().filter(|(_, e)| e % 2 == 1).collect();
    if odd_exponents.len() != 1 {
        return Ok(PerfectForm::NotEulerShaped);
    }
    let (q, e) = odd_exponents[0];
    // the special exponent is 4*beta + 1 and the special prime is 1 mod 4
    if e % 4 != 1 || (q % 4u32) != nat(1) {
        return Ok(PerfectForm::NotEulerShaped);
    }
    let beta = (e - 1) / 4;
    let square_part = Factorization {
        factors: f
            .factors
            .iter()
            .filter(|(p, _)| p != q)
            .cloned()
            .collect(),
        cofactor: Natural::one(),
        complete: true,
    };
    Ok(PerfectForm::OddEulerCandidate {
        q: q.clone(),
        beta,
        square_part,
    })
}

pub fn mod12_class(n: &Natural) -> Mod12Class {
    let residue = to_u64(&(n % 12u32)).unwrap() as u8;
    let compatibility = if EVEN_PERFECT_RESIDUES_MOD12.contains(&residue) {
        Mod12Compatibility::EvenPerfectResidue
    } else if ODD_PERFECT_RESIDUES_MOD12.contains(&residue) {
        Mod12Compatibility::OddPerfectResidue
    } else {
        Mod12Compatibility::IncompatibleWithPerfect
    };
    Mod12Class {
        residue,
        compatibility,
    }
}
