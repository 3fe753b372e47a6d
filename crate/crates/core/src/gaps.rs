//! The distance rules as executable checks.
//!
//! A distance delta between two perfect numbers must exceed 2, never
//! divides the smaller member, and never lands on +/-1 mod 12. Triangular
//! deltas b(b-1)/2 with b = 48s+46 (s not 2 mod 3) form the certified
//! family; the A*B split below carries the square-shape obstructions that
//! exclude them once l = 8m+3 is prime.

use crate::arith::{gcd, isqrt, nat, to_u64};
use crate::factor::FactorBudget;
use crate::perfect::is_perfect_with;
use crate::primality::is_prime;
use crate::{Error, Natural, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Outcome of a pairwise distance check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub delta: Natural,
    pub passed: bool,
    /// For even deltas: whether delta > smaller was observed (the shortcut
    /// in the even-distance argument). None for odd deltas.
    pub delta_exceeds_smaller: Option<bool>,
}

/// gap > 2 check for two distinct perfect numbers.
pub fn min_gap_check(x: &Natural, y: &Natural) -> Result<CheckResult> {
    if x == y {
        return Err(Error::NotDistinct);
    }
    for v in [x, y] {
        if !is_perfect_with(v, &FactorBudget::default())? {
            return Err(Error::NotPerfect { value: v.clone() });
        }
    }
    let delta = if x > y { x - y } else { y - x };
    let passed = delta > nat(2);
    Ok(CheckResult {
        delta,
        passed,
        delta_exceeds_smaller: None,
    })
}

/// delta = y - x does not divide x, for perfect x < y. Even deltas also
/// record whether the stronger fact delta > x holds; the divisibility test
/// itself always runs.
pub fn nondivisibility_check(x: &Natural, y: &Natural) -> Result<CheckResult> {
    if x >= y {
        return Err(Error::NotIncreasing);
    }
    for v in [x, y] {
        if !is_perfect_with(v, &FactorBudget::default())? {
            return Err(Error::NotPerfect { value: v.clone() });
        }
    }
    let delta = y - x;
    let passed = !(x % &delta).is_zero();
    let delta_exceeds_smaller = delta.is_even().then(|| &delta > x);
    Ok(CheckResult {
        delta,
        passed,
        delta_exceeds_smaller,
    })
}

/// The residues mod 12 an even or odd perfect number can occupy.
pub const PERFECT_RESIDUES_MOD12: [u8; 4] = [1, 4, 6, 9];

/// Residues mod 12 that a difference of two perfect numbers can occupy,
/// derived by enumerating ordered pairs over [`PERFECT_RESIDUES_MOD12`].
pub fn perfect_difference_residues_mod12() -> Vec<u8> {
    let mut set = [false; 12];
    for a in PERFECT_RESIDUES_MOD12 {
        for b in PERFECT_RESIDUES_MOD12 {
            set[((12 + a as usize) - b as usize) % 12] = true;
        }
    }
    (0u8..12).filter(|r| set[*r as usize]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod12Certificate {
    pub delta: Natural,
    pub residue: u8,
}

/// Present exactly when delta = +/-1 (mod 12); no pair of perfect-number
/// residues differs by 1 or 11 mod 12.
pub fn mod12_exclusion(delta: &Natural) -> Option<Mod12Certificate> {
    let residue = to_u64(&(delta % 12u32)).unwrap() as u8;
    (residue == 1 || residue == 11).then(|| Mod12Certificate {
        delta: delta.clone(),
        residue,
    })
}

/// b with b(b-1)/2 = delta, present iff 8*delta + 1 is a perfect square.
pub fn triangular_decompose(delta: &Natural) -> Option<Natural> {
    if delta.is_zero() {
        return None;
    }
    let disc = delta * 8u32 + 1u32;
    let root = isqrt(&disc);
    if &root * &root != disc {
        return None;
    }
    // disc is odd, so the root is odd and b is exact
    let b = (root + 1u32) >> 1;
    debug_assert!(&b * (&b - 1u32) == delta * 2u32);
    Some(b)
}

/// The tuple (s, m, b, l, delta) of the triangular family, with
/// m = 12s+11, b = 4m+2 = 48s+46, l = 8m+3 = 96s+91 = 2b-1,
/// delta = b(b-1)/2 = (24s+23)(48s+45), and s not 2 (mod 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub s: Natural,
    pub m: Natural,
    pub b: Natural,
    pub l: Natural,
    pub delta: Natural,
}

impl FamilyParams {
    /// Build the family member at parameter s.
    pub fn from_s(s: &Natural) -> Result<Self> {
        if to_u64(&(s % 3u32)) == Some(2) {
            return Err(Error::ExcludedResidueClass { s: s.clone() });
        }
        let m = s * 12u32 + 11u32;
        let b = s * 48u32 + 46u32;
        let l = s * 96u32 + 91u32;
        let delta = (s * 24u32 + 23u32) * (s * 48u32 + 45u32);
        let params = FamilyParams {
            s: s.clone(),
            m,
            b,
            l,
            delta,
        };
        debug_assert!(params.identities_hold());
        Ok(params)
    }

    /// Every linking identity of the notation block, plus the derived
    /// l = 2b-1 and l^2 = 8*delta + 1.
    pub fn identities_hold(&self) -> bool {
        let s = &self.s;
        self.m == s * 12u32 + 11u32
            && self.b == s * 48u32 + 46u32
            && self.b == &self.m * 4u32 + 2u32
            && self.l == s * 96u32 + 91u32
            && self.l == &self.m * 8u32 + 3u32
            && self.l == &self.b * 2u32 - 1u32
            && &self.delta * 2u32 == &self.b * (&self.b - 1u32)
            && self.delta == (s * 24u32 + 23u32) * (s * 48u32 + 45u32)
            && &self.l * &self.l == &self.delta * 8u32 + 1u32
            && to_u64(&(s % 3u32)) != Some(2)
            && to_u64(&(&self.delta % 12u32)) == Some(3)
    }
}

/// Parametric family membership. Does not require l prime: certification
/// is a separate step, so the density experiment over s stays expressible.
pub fn family_membership(delta: &Natural) -> Option<FamilyParams> {
    let b = triangular_decompose(delta)?;
    if b < nat(46) {
        return None;
    }
    let offset = &b - 46u32;
    let (s, rem) = offset.div_rem(&nat(48));
    if !rem.is_zero() {
        return None;
    }
    if to_u64(&(&s % 3u32)) == Some(2) {
        return None;
    }
    let params = FamilyParams::from_s(&s).ok()?;
    debug_assert_eq!(&params.delta, delta);
    Some(params)
}

/// The split n = A * B with A = 2^(p-1) - 2m - 1 and B = 2^p + 4m + 1,
/// so that B - 2A = 8m + 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgenSplit {
    pub p: u64,
    pub m: Natural,
    pub a: Natural,
    pub b: Natural,
    /// gcd(A, B); 1 or l = 8m+3 whenever l is prime.
    pub gcd: Natural,
}

impl IgenSplit {
    pub fn n(&self) -> Natural {
        &self.a * &self.b
    }

    pub fn gcd_is_one(&self) -> bool {
        self.gcd.is_one()
    }

    pub fn gcd_is_l(&self) -> bool {
        self.gcd == &self.m * 8u32 + 3u32
    }
}

/// Build the A*B split for an odd prime exponent p. p = 2 is rejected:
/// the square arguments need p - 1 even, and callers dispose of p = 2 by
/// direct size comparison.
pub fn igen_split(m: &Natural, p: u64) -> Result<IgenSplit> {
    if p == 2 || !is_prime(&nat(p)).is_prime() {
        return Err(Error::RequiresOddPrime { p });
    }
    let pow_half: Natural = Natural::one() << (p - 1) as usize;
    let t = m * 2u32 + 1u32;
    if pow_half <= t {
        return Err(Error::ExponentTooSmall { p });
    }
    let a = &pow_half - &t;
    let b = (pow_half << 1) + m * 4u32 + 1u32;
    debug_assert_eq!(&b - &a * 2u32, m * 8u32 + 3u32);
    let g = gcd(&a, &b);
    Ok(IgenSplit {
        p,
        m: m.clone(),
        a,
        b,
        gcd: g,
    })
}

/// Shape report for the two square equations: A = u^2, and B = q * v^2
/// with q prime = 5 (mod 8).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    /// u with u^2 = A, when A is a perfect square.
    pub a_root: Option<Natural>,
    /// (q, v) with B = q * v^2, q prime = 5 (mod 8), when B has that shape.
    pub b_special: Option<(Natural, Natural)>,
}

impl ShapeReport {
    pub fn eq1_holds(&self) -> bool {
        self.a_root.is_some()
    }

    pub fn eq2_holds(&self) -> bool {
        self.b_special.is_some()
    }

    /// Either equation failing is a usable obstruction.
    pub fn obstruction(&self) -> bool {
        !self.eq1_holds() || !self.eq2_holds()
    }
}

/// Check both square equations on a coprime split.
pub fn eq1_eq2_shape_check(split: &IgenSplit, budget: &FactorBudget) -> Result<ShapeReport> {
    if !split.gcd_is_one() {
        return Err(Error::NotCoprime {
            gcd: split.gcd.clone(),
        });
    }
    let a_root = crate::arith::is_square(&split.a);

    let f = crate::factor::factorize(&split.b, budget);
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            n: split.b.clone(),
            cofactor: f.cofactor,
        });
    }
    let odd_exp: Vec<&(Natural, u32)> = f.factors.iter().filter(|(_, e)| e % 2 == 1).collect();
    let b_special = if odd_exp.len() == 1 {
        let q = odd_exp[0].0.clone();
        if to_u64(&(&q % 8u32)) == Some(5) {
            let v2 = &split.b / &q;
            crate::arith::is_square(&v2).map(|v| (q, v))
        } else {
            None
        }
    } else {
        None
    };
    Ok(ShapeReport { a_root, b_special })
}
