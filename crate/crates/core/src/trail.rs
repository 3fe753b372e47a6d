//! Certificate trail statements.
//!
//! A certificate is a list of statements, each of which an independent
//! verifier can re-execute from the numbers it carries. Finite arithmetic
//! facts (residues, identities, primality, sigma values) replay directly;
//! consumed theorems appear as named cited facts from a fixed whitelist, so
//! a certificate never smuggles in an unrecognized assumption.

use crate::arith::{gcd, is_square, isqrt, mod_pow_u64, nat, to_u64};
use crate::factor::{factorize, FactorBudget};
use crate::perfect::sigma_with;
use crate::primality::{is_prime, lucas_lehmer, PrimalityStatus};
use crate::{Error, Natural, Result};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// Theorems the certificates consume without re-proving. The verifier
/// accepts exactly these.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactId {
    /// Distinct perfect numbers differ by more than 2.
    MinGapBound,
    /// Every even perfect number is 4 or 6 mod 12.
    EvenPerfectResidues,
    /// Every odd perfect number is 1 or 9 mod 12 (Touchard).
    TouchardOddResidues,
    /// Even perfect numbers are 2^(p-1)(2^p-1); all but 6 are 0 mod 4.
    EuclidEulerForm,
    /// Odd perfect numbers are q^(4b+1) * (square); in particular 1 mod 4.
    EulerOddForm,
    /// An odd perfect number divisible by 3 is divisible by 9.
    OddPerfectThreeSquared,
    /// The n = A*B split and the square/special-prime assignment between
    /// A and B once gcd(A, B) = 1 is forced.
    IgenStructure,
    /// Infinitude of primes in coprime arithmetic progressions.
    DirichletProgressions,
}

impl FactId {
    pub const ALL: [FactId; 8] = [
        FactId::MinGapBound,
        FactId::EvenPerfectResidues,
        FactId::TouchardOddResidues,
        FactId::EuclidEulerForm,
        FactId::EulerOddForm,
        FactId::OddPerfectThreeSquared,
        FactId::IgenStructure,
        FactId::DirichletProgressions,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FactId::MinGapBound => "min-gap-bound",
            FactId::EvenPerfectResidues => "even-perfect-residues",
            FactId::TouchardOddResidues => "touchard-odd-residues",
            FactId::EuclidEulerForm => "euclid-euler-form",
            FactId::EulerOddForm => "euler-odd-form",
            FactId::OddPerfectThreeSquared => "odd-perfect-three-squared",
            FactId::IgenStructure => "igen-structure",
            FactId::DirichletProgressions => "dirichlet-progressions",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        FactId::ALL.into_iter().find(|f| f.label() == s)
    }
}

/// One replayable statement. Field names follow the roles in the checks:
/// `m`, `b`, `l`, `s` are the family parameters, `a`/`b` in the candidate
/// statements are the two halves of the A*B split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatement {
    /// delta <= 2, the arithmetic side of the minimal-gap exclusion.
    GapAtMostTwo { delta: Natural },
    CitedFact { id: FactId },
    ResidueIs { value: Natural, modulus: u64, residue: u64 },
    /// residue is unreachable as a difference of perfect-number residues
    /// mod 12 (16-pair enumeration).
    Mod12TableExcludes { residue: u8 },
    TriangularDecomposition { delta: Natural, b: Natural },
    FamilyForm { s: Natural, m: Natural, b: Natural, l: Natural, delta: Natural },
    SNotTwoModThree { s: Natural },
    LSquareIdentity { l: Natural, delta: Natural },
    PrimeCheck { value: Natural },
    DirichletClass { s: Natural, class: char, a: Natural, l: Natural },
    EvenBForm { b: Natural, m: Natural },
    LForm { m: Natural, l: Natural },
    MTwoModThree { m: Natural },
    /// 3*2^(p-1) + 2m = 1 (mod 3) reduces to 2m = 1 (mod 3).
    SumEquationResidue { m: Natural },
    /// Squares mod 3 land in {0, 1}.
    SquaresModThree,
    /// Case x^2 = 0 (mod 3): would force 2^(p-1) = 2 (mod 3), but even
    /// powers of 2 are 1 mod 3.
    CaseXZero { m: Natural },
    /// Case y^2 = 0 (mod 3): would force 2^p = 0 (mod 3).
    CaseYZero { m: Natural },
    /// Case x^2 = y^2 = 1 (mod 3): would force q = 3, but 3 != 1 (mod 4).
    CaseBothOne,
    /// The three cases cover all of {0,1} x {0,1}.
    Mod3Exhaustive,
    /// 3 | 6+delta but 9 does not divide 6+delta.
    EdgeSixNine { delta: Natural },
    /// sigma(6+delta) recomputed and differs from 2*(6+delta).
    EdgeSixDirect { delta: Natural, sum: Natural, sigma: Natural },
    /// The even member cannot be the larger one at value 6: delta >= 6.
    EdgeEvenLarger { delta: Natural },
    /// delta = 3 (mod 4), so an even smaller member must be 2 mod 4,
    /// hence 6.
    EvenSmallerForcesSix { delta: Natural },
    OddSquareModEight,
    LResidueModEight { l: Natural },
    /// For odd m and p >= 3: 2^p + 4m + 1 = 5 (mod 8).
    MersenneResidueModEight { m: Natural },
    ThreePowOddModEight,
    /// 3q = 5 (mod 8) forces q = 7 (mod 8), impossible for q = 1 (mod 4).
    QResidueContradiction,
    /// The divisor-pair enumeration of t = 2m+1 yields exactly these
    /// exponents p with 2^(p-1) - t a perfect square.
    CandidateComplete { t: Natural, candidates: Vec<u64> },
    CandidateSplit { p: u64, m: Natural, a: Natural, b: Natural },
    CandidateMersennePrime { p: u64, mersenne: Natural },
    CandidateMersenneComposite { p: u64, mersenne: Natural, factor: Option<Natural> },
    CandidateNotPerfect { p: u64, n: Natural, sigma: Natural },
    CandidateNotSquareA { p: u64, a: Natural, root: Natural },
    /// B fails the q * v^2 shape with q prime = 5 (mod 8).
    CandidateShapeViolation { p: u64, b: Natural },
    /// n + delta reproduces the even perfect number at exponent p.
    CandidateConsistency { p: u64, n: Natural, delta: Natural, perfect: Natural },
}

fn pow2(e: u64) -> Natural {
    Natural::one() << e as usize
}

impl CheckStatement {
    /// Re-execute the statement from its own numbers. Err carries the
    /// reason the arithmetic did not hold.
    pub fn replay(&self, budget: &FactorBudget) -> std::result::Result<(), String> {
        use CheckStatement::*;
        let fail = |msg: &str| Err(msg.to_string());
        match self {
            GapAtMostTwo { delta } => {
                if delta >= &Natural::one() && delta <= &nat(2) {
                    Ok(())
                } else {
                    fail("delta is not in {1, 2}")
                }
            }
            CitedFact { .. } => Ok(()),
            ResidueIs { value, modulus, residue } => {
                if *modulus == 0 {
                    return fail("zero modulus");
                }
                if to_u64(&(value % *modulus)) == Some(*residue) {
                    Ok(())
                } else {
                    fail("residue mismatch")
                }
            }
            Mod12TableExcludes { residue } => {
                if *residue >= 12 {
                    return fail("residue out of range");
                }
                let reachable = crate::gaps::perfect_difference_residues_mod12();
                if reachable.contains(residue) {
                    fail("residue is reachable by some pair of perfect residues")
                } else {
                    Ok(())
                }
            }
            TriangularDecomposition { delta, b } => {
                match crate::gaps::triangular_decompose(delta) {
                    Some(found) if &found == b => Ok(()),
                    _ => fail("delta is not the triangular number b(b-1)/2"),
                }
            }
            FamilyForm { s, m, b, l, delta } => {
                let params = crate::gaps::FamilyParams::from_s(s)
                    .map_err(|e| format!("invalid family parameter: {e}"))?;
                if &params.m == m && &params.b == b && &params.l == l && &params.delta == delta {
                    Ok(())
                } else {
                    fail("family identities do not hold")
                }
            }
            SNotTwoModThree { s } => {
                if to_u64(&(s % 3u32)) == Some(2) {
                    fail("s = 2 (mod 3)")
                } else {
                    Ok(())
                }
            }
            LSquareIdentity { l, delta } => {
                if l * l == delta * 8u32 + 1u32 {
                    Ok(())
                } else {
                    fail("l^2 != 8*delta + 1")
                }
            }
            PrimeCheck { value } => {
                if is_prime(value).is_prime() {
                    Ok(())
                } else {
                    fail("value is not prime")
                }
            }
            DirichletClass { s, class, a, l } => {
                let (mult, offset): (u32, u32) = match class {
                    'A' => (0, 91),
                    'B' => (1, 187),
                    _ => return fail("unknown progression class"),
                };
                if s != &(a * 3u32 + mult) {
                    return fail("s does not match the progression class");
                }
                if l != &(a * 288u32 + offset) {
                    return fail("l does not match the progression formula");
                }
                if l != &(s * 96u32 + 91u32) {
                    return fail("l != 96s + 91");
                }
                if gcd(&nat(288), &nat(offset as u64)) != Natural::one() {
                    return fail("progression offset shares a factor with 288");
                }
                Ok(())
            }
            EvenBForm { b, m } => {
                if b == &(m * 4u32 + 2u32) {
                    Ok(())
                } else {
                    fail("b != 4m + 2")
                }
            }
            LForm { m, l } => {
                if l == &(m * 8u32 + 3u32) {
                    Ok(())
                } else {
                    fail("l != 8m + 3")
                }
            }
            MTwoModThree { m } => {
                if to_u64(&(m % 3u32)) == Some(2) {
                    Ok(())
                } else {
                    fail("m != 2 (mod 3)")
                }
            }
            SumEquationResidue { m } => {
                // 3*2^(p-1) vanishes mod 3; the surviving term is 2m
                if mod_pow_u64(3, 1, 3) == 0 && to_u64(&(m * 2u32 % 3u32)) == Some(1) {
                    Ok(())
                } else {
                    fail("2m != 1 (mod 3)")
                }
            }
            SquaresModThree => {
                let set: std::collections::BTreeSet<u64> =
                    (0u64..3).map(|r| (r * r) % 3).collect();
                if set == [0u64, 1].into_iter().collect() {
                    Ok(())
                } else {
                    fail("squares mod 3 are not {0, 1}")
                }
            }
            CaseXZero { m } => {
                // x^2 = 0 forces 2^(p-1) = 2m+1 = 2 (mod 3); but p-1 even
                // and 2^2 = 1 (mod 3), so even powers of 2 are 1 mod 3
                let forced = to_u64(&((m * 2u32 + 1u32) % 3u32)) == Some(2);
                // even powers of 2 mod 3 collapse to (2^2 mod 3)^k = 1
                let even_pow = mod_pow_u64(2, 2, 3);
                if forced && even_pow == 1 && even_pow != 2 {
                    Ok(())
                } else {
                    fail("case x^2 = 0 not refuted")
                }
            }
            CaseYZero { m } => {
                // y^2 = 0 forces 2^p = -(4m+1) = 0 (mod 3); impossible as
                // gcd(2, 3) = 1
                let forced = ((m * 4u32 + 1u32) % 3u32).is_zero();
                if forced && crate::arith::gcd_u64(2, 3) == 1 {
                    Ok(())
                } else {
                    fail("case y^2 = 0 not refuted")
                }
            }
            CaseBothOne => {
                // 1 = 1 + q (mod 3) forces q = 0 (mod 3), so q = 3; but the
                // special prime is 1 mod 4
                if is_prime(&nat(3)).is_prime() && mod_pow_u64(3, 1, 4) != 1 {
                    Ok(())
                } else {
                    fail("case x^2 = y^2 = 1 not refuted")
                }
            }
            Mod3Exhaustive => {
                for x2 in [0u64, 1] {
                    for y2 in [0u64, 1] {
                        let covered = x2 == 0 || y2 == 0 || (x2 == 1 && y2 == 1);
                        if !covered {
                            return fail("uncovered square-residue combination");
                        }
                    }
                }
                Ok(())
            }
            EdgeSixNine { delta } => {
                let sum = delta + 6u32;
                if !(&sum % 3u32).is_zero() {
                    return fail("3 does not divide 6 + delta");
                }
                if (&sum % 9u32).is_zero() {
                    return fail("9 divides 6 + delta; the square argument is unavailable");
                }
                Ok(())
            }
            EdgeSixDirect { delta, sum, sigma } => {
                if sum != &(delta + 6u32) {
                    return fail("sum != 6 + delta");
                }
                let s = sigma_with(sum, budget)
                    .map_err(|e| format!("sigma recomputation failed: {e}"))?;
                if &s != sigma {
                    return fail("recorded sigma disagrees with recomputation");
                }
                if s == sum * 2u32 {
                    return fail("6 + delta is perfect");
                }
                Ok(())
            }
            EdgeEvenLarger { delta } => {
                if delta >= &nat(6) {
                    Ok(())
                } else {
                    fail("delta < 6: the larger member could be 6")
                }
            }
            EvenSmallerForcesSix { delta } => {
                if to_u64(&(delta % 4u32)) == Some(3) {
                    Ok(())
                } else {
                    fail("delta != 3 (mod 4)")
                }
            }
            OddSquareModEight => {
                if [1u64, 3, 5, 7].iter().all(|r| (r * r) % 8 == 1) {
                    Ok(())
                } else {
                    fail("odd squares mod 8 are not all 1")
                }
            }
            LResidueModEight { l } => {
                if to_u64(&(l % 8u32)) == Some(3) {
                    Ok(())
                } else {
                    fail("l != 3 (mod 8)")
                }
            }
            MersenneResidueModEight { m } => {
                if m.is_even() {
                    return fail("m is even");
                }
                if to_u64(&((m * 4u32 + 1u32) % 8u32)) != Some(5) {
                    return fail("4m + 1 != 5 (mod 8)");
                }
                if mod_pow_u64(2, 3, 8) != 0 {
                    return fail("2^p != 0 (mod 8) for p >= 3");
                }
                Ok(())
            }
            ThreePowOddModEight => {
                if mod_pow_u64(3, 1, 8) == 3 && mod_pow_u64(3, 2, 8) == 1 {
                    Ok(())
                } else {
                    fail("powers of 3 mod 8 do not alternate 3, 1")
                }
            }
            QResidueContradiction => {
                let solutions: Vec<u64> =
                    [1u64, 3, 5, 7].into_iter().filter(|q| (3 * q) % 8 == 5).collect();
                if solutions == vec![7] && 7 % 4 != 1 {
                    Ok(())
                } else {
                    fail("3q = 5 (mod 8) does not force q = 7 (mod 8)")
                }
            }
            CandidateComplete { t, candidates } => {
                if t.is_even() || t < &nat(3) {
                    return fail("t must be odd and >= 3");
                }
                let m = (t - 1u32) / 2u32;
                let derived = crate::engine::square_obstruction_candidates(&m, budget)
                    .map_err(|e| format!("candidate enumeration failed: {e}"))?;
                let derived_p: Vec<u64> = derived.iter().map(|(p, _)| *p).collect();
                if &derived_p == candidates {
                    Ok(())
                } else {
                    fail("candidate list disagrees with the divisor-pair enumeration")
                }
            }
            CandidateSplit { p, m, a, b } => {
                if *p < 3 || *p % 2 == 0 {
                    return fail("p must be odd and >= 3");
                }
                let t = m * 2u32 + 1u32;
                let half = pow2(p - 1);
                if half <= t {
                    return fail("2^(p-1) <= 2m + 1");
                }
                if a != &(&half - &t) {
                    return fail("A != 2^(p-1) - 2m - 1");
                }
                if b != &(pow2(*p) + m * 4u32 + 1u32) {
                    return fail("B != 2^p + 4m + 1");
                }
                if b - a * 2u32 != m * 8u32 + 3u32 {
                    return fail("B - 2A != 8m + 3");
                }
                Ok(())
            }
            CandidateMersennePrime { p, mersenne } => {
                if mersenne != &(pow2(*p) - 1u32) {
                    return fail("mersenne != 2^p - 1");
                }
                if is_prime(mersenne).is_prime() {
                    Ok(())
                } else {
                    fail("2^p - 1 is not prime")
                }
            }
            CandidateMersenneComposite { p, mersenne, factor } => {
                if mersenne != &(pow2(*p) - 1u32) {
                    return fail("mersenne != 2^p - 1");
                }
                match factor {
                    Some(f) => {
                        if f > &Natural::one() && f < mersenne && (mersenne % f).is_zero() {
                            Ok(())
                        } else {
                            fail("factor does not divide 2^p - 1 properly")
                        }
                    }
                    None => match lucas_lehmer(*p) {
                        Ok(v) if v.status == PrimalityStatus::Composite => Ok(()),
                        Ok(_) => fail("Lucas-Lehmer reports 2^p - 1 prime"),
                        Err(e) => Err(format!("Lucas-Lehmer unavailable: {e}")),
                    },
                }
            }
            CandidateNotPerfect { p: _, n, sigma } => {
                let s = sigma_with(n, budget)
                    .map_err(|e| format!("sigma recomputation failed: {e}"))?;
                if &s != sigma {
                    return fail("recorded sigma disagrees with recomputation");
                }
                if s == n * 2u32 {
                    return fail("n is perfect");
                }
                Ok(())
            }
            CandidateNotSquareA { p: _, a, root } => {
                if root != &isqrt(a) {
                    return fail("root is not floor(sqrt(A))");
                }
                if &(root * root) == a {
                    return fail("A is a perfect square");
                }
                Ok(())
            }
            CandidateShapeViolation { p: _, b } => {
                let f = factorize(b, budget);
                if !f.complete {
                    return fail("factorization budget exhausted on B");
                }
                let odd_exp: Vec<&(Natural, u32)> =
                    f.factors.iter().filter(|(_, e)| e % 2 == 1).collect();
                let shaped = odd_exp.len() == 1
                    && to_u64(&(odd_exp[0].0.clone() % 8u32)) == Some(5)
                    && is_square(&(b / &odd_exp[0].0)).is_some();
                if shaped {
                    fail("B has the q*v^2 shape after all")
                } else {
                    Ok(())
                }
            }
            CandidateConsistency { p, n, delta, perfect } => {
                if perfect != &(pow2(p - 1) * (pow2(*p) - 1u32)) {
                    return fail("perfect != 2^(p-1) * (2^p - 1)");
                }
                if &(n + delta) == perfect {
                    Ok(())
                } else {
                    fail("n + delta does not reach the even perfect number")
                }
            }
        }
    }

    pub fn render(&self) -> String {
        use CheckStatement::*;
        match self {
            GapAtMostTwo { delta } => format!("gap-at-most-two delta={delta}"),
            CitedFact { id } => format!("cited-fact id={}", id.label()),
            ResidueIs { value, modulus, residue } => {
                format!("residue-is value={value} modulus={modulus} residue={residue}")
            }
            Mod12TableExcludes { residue } => format!("mod12-table-excludes residue={residue}"),
            TriangularDecomposition { delta, b } => {
                format!("triangular-decomposition delta={delta} b={b}")
            }
            FamilyForm { s, m, b, l, delta } => {
                format!("family-form s={s} m={m} b={b} l={l} delta={delta}")
            }
            SNotTwoModThree { s } => format!("s-not-two-mod-three s={s}"),
            LSquareIdentity { l, delta } => format!("l-square-identity l={l} delta={delta}"),
            PrimeCheck { value } => format!("prime-check value={value}"),
            DirichletClass { s, class, a, l } => {
                format!("dirichlet-class s={s} class={class} a={a} l={l}")
            }
            EvenBForm { b, m } => format!("even-b-form b={b} m={m}"),
            LForm { m, l } => format!("l-form m={m} l={l}"),
            MTwoModThree { m } => format!("m-two-mod-three m={m}"),
            SumEquationResidue { m } => format!("sum-equation-residue m={m}"),
            SquaresModThree => "squares-mod-three".to_string(),
            CaseXZero { m } => format!("case-x-zero m={m}"),
            CaseYZero { m } => format!("case-y-zero m={m}"),
            CaseBothOne => "case-both-one".to_string(),
            Mod3Exhaustive => "mod3-exhaustive".to_string(),
            EdgeSixNine { delta } => format!("edge-six-nine delta={delta}"),
            EdgeSixDirect { delta, sum, sigma } => {
                format!("edge-six-direct delta={delta} sum={sum} sigma={sigma}")
            }
            EdgeEvenLarger { delta } => format!("edge-even-larger delta={delta}"),
            EvenSmallerForcesSix { delta } => format!("even-smaller-forces-six delta={delta}"),
            OddSquareModEight => "odd-square-mod-eight".to_string(),
            LResidueModEight { l } => format!("l-residue-mod-eight l={l}"),
            MersenneResidueModEight { m } => format!("mersenne-residue-mod-eight m={m}"),
            ThreePowOddModEight => "three-pow-odd-mod-eight".to_string(),
            QResidueContradiction => "q-residue-contradiction".to_string(),
            CandidateComplete { t, candidates } => {
                let list = if candidates.is_empty() {
                    "none".to_string()
                } else {
                    candidates
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                format!("candidate-complete t={t} candidates={list}")
            }
            CandidateSplit { p, m, a, b } => {
                format!("candidate-split p={p} m={m} a={a} b={b}")
            }
            CandidateMersennePrime { p, mersenne } => {
                format!("candidate-mersenne-prime p={p} mersenne={mersenne}")
            }
            CandidateMersenneComposite { p, mersenne, factor } => {
                let f = factor
                    .as_ref()
                    .map(|f| f.to_string())
                    .unwrap_or_else(|| "none".to_string());
                format!("candidate-mersenne-composite p={p} mersenne={mersenne} factor={f}")
            }
            CandidateNotPerfect { p, n, sigma } => {
                format!("candidate-not-perfect p={p} n={n} sigma={sigma}")
            }
            CandidateNotSquareA { p, a, root } => {
                format!("candidate-not-square-a p={p} a={a} root={root}")
            }
            CandidateShapeViolation { p, b } => {
                format!("candidate-shape-violation p={p} b={b}")
            }
            CandidateConsistency { p, n, delta, perfect } => {
                format!("candidate-consistency p={p} n={n} delta={delta} perfect={perfect}")
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |msg: &str| Error::CertificateSyntax {
            line: 0,
            message: format!("{msg}: {text}"),
        };
        let mut tokens = text.split_whitespace();
        let kind = tokens.next().ok_or_else(|| syntax("empty statement"))?;
        let args: Vec<(&str, &str)> = tokens
            .map(|t| t.split_once('=').ok_or_else(|| syntax("argument is not key=value")))
            .collect::<Result<_>>()?;
        let expect = |keys: &[&str]| -> Result<Vec<&str>> {
            if args.len() != keys.len() {
                return Err(syntax("wrong argument count"));
            }
            keys.iter()
                .zip(&args)
                .map(|(want, (key, value))| {
                    if key == want {
                        Ok(*value)
                    } else {
                        Err(syntax("unexpected argument key"))
                    }
                })
                .collect()
        };
        let natural = |v: &str| -> Result<Natural> {
            v.parse::<Natural>()
                .map_err(|_| syntax("invalid natural number"))
        };
        let word = |v: &str| -> Result<u64> {
            v.parse::<u64>().map_err(|_| syntax("invalid integer"))
        };

        use CheckStatement::*;
        let statement = match kind {
            "gap-at-most-two" => {
                let v = expect(&["delta"])?;
                GapAtMostTwo { delta: natural(v[0])? }
            }
            "cited-fact" => {
                let v = expect(&["id"])?;
                CitedFact {
                    id: FactId::from_label(v[0]).ok_or_else(|| syntax("unknown fact id"))?,
                }
            }
            "residue-is" => {
                let v = expect(&["value", "modulus", "residue"])?;
                ResidueIs {
                    value: natural(v[0])?,
                    modulus: word(v[1])?,
                    residue: word(v[2])?,
                }
            }
            "mod12-table-excludes" => {
                let v = expect(&["residue"])?;
                Mod12TableExcludes {
                    residue: word(v[0])? as u8,
                }
            }
            "triangular-decomposition" => {
                let v = expect(&["delta", "b"])?;
                TriangularDecomposition {
                    delta: natural(v[0])?,
                    b: natural(v[1])?,
                }
            }
            "family-form" => {
                let v = expect(&["s", "m", "b", "l", "delta"])?;
                FamilyForm {
                    s: natural(v[0])?,
                    m: natural(v[1])?,
                    b: natural(v[2])?,
                    l: natural(v[3])?,
                    delta: natural(v[4])?,
                }
            }
            "s-not-two-mod-three" => {
                let v = expect(&["s"])?;
                SNotTwoModThree { s: natural(v[0])? }
            }
            "l-square-identity" => {
                let v = expect(&["l", "delta"])?;
                LSquareIdentity {
                    l: natural(v[0])?,
                    delta: natural(v[1])?,
                }
            }
            "prime-check" => {
                let v = expect(&["value"])?;
                PrimeCheck { value: natural(v[0])? }
            }
            "dirichlet-class" => {
                let v = expect(&["s", "class", "a", "l"])?;
                let class = match v[1] {
                    "A" => 'A',
                    "B" => 'B',
                    _ => return Err(syntax("unknown progression class")),
                };
                DirichletClass {
                    s: natural(v[0])?,
                    class,
                    a: natural(v[2])?,
                    l: natural(v[3])?,
                }
            }
            "even-b-form" => {
                let v = expect(&["b", "m"])?;
                EvenBForm {
                    b: natural(v[0])?,
                    m: natural(v[1])?,
                }
            }
            "l-form" => {
                let v = expect(&["m", "l"])?;
                LForm {
                    m: natural(v[0])?,
                    l: natural(v[1])?,
                }
            }
            "m-two-mod-three" => {
                let v = expect(&["m"])?;
                MTwoModThree { m: natural(v[0])? }
            }
            "sum-equation-residue" => {
                let v = expect(&["m"])?;
                SumEquationResidue { m: natural(v[0])? }
            }
            "squares-mod-three" => {
                expect(&[])?;
                SquaresModThree
            }
            "case-x-zero" => {
                let v = expect(&["m"])?;
                CaseXZero { m: natural(v[0])? }
            }
            "case-y-zero" => {
                let v = expect(&["m"])?;
                CaseYZero { m: natural(v[0])? }
            }
            "case-both-one" => {
                expect(&[])?;
                CaseBothOne
            }
            "mod3-exhaustive" => {
                expect(&[])?;
                Mod3Exhaustive
            }
            "edge-six-nine" => {
                let v = expect(&["delta"])?;
                EdgeSixNine { delta: natural(v[0])? }
            }
            "edge-six-direct" => {
                let v = expect(&["delta", "sum", "sigma"])?;
                EdgeSixDirect {
                    delta: natural(v[0])?,
                    sum: natural(v[1])?,
                    sigma: natural(v[2])?,
                }
            }
            "edge-even-larger" => {
                let v = expect(&["delta"])?;
                EdgeEvenLarger { delta: natural(v[0])? }
            }
            "even-smaller-forces-six" => {
                let v = expect(&["delta"])?;
                EvenSmallerForcesSix { delta: natural(v[0])? }
            }
            "odd-square-mod-eight" => {
                expect(&[])?;
                OddSquareModEight
            }
            "l-residue-mod-eight" => {
                let v = expect(&["l"])?;
                LResidueModEight { l: natural(v[0])? }
            }
            "mersenne-residue-mod-eight" => {
                let v = expect(&["m"])?;
                MersenneResidueModEight { m: natural(v[0])? }
            }
            "three-pow-odd-mod-eight" => {
                expect(&[])?;
                ThreePowOddModEight
            }
            "q-residue-contradiction" => {
                expect(&[])?;
                QResidueContradiction
            }
            "candidate-complete" => {
                let v = expect(&["t", "candidates"])?;
                let candidates = if v[1] == "none" {
                    Vec::new()
                } else {
                    v[1].split(',')
                        .map(|x| x.parse::<u64>().map_err(|_| syntax("invalid candidate")))
                        .collect::<Result<_>>()?
                };
                CandidateComplete {
                    t: natural(v[0])?,
                    candidates,
                }
            }
            "candidate-split" => {
                let v = expect(&["p", "m", "a", "b"])?;
                CandidateSplit {
                    p: word(v[0])?,
                    m: natural(v[1])?,
                    a: natural(v[2])?,
                    b: natural(v[3])?,
                }
            }
            "candidate-mersenne-prime" => {
                let v = expect(&["p", "mersenne"])?;
                CandidateMersennePrime {
                    p: word(v[0])?,
                    mersenne: natural(v[1])?,
                }
            }
            "candidate-mersenne-composite" => {
                let v = expect(&["p", "mersenne", "factor"])?;
                CandidateMersenneComposite {
                    p: word(v[0])?,
                    mersenne: natural(v[1])?,
                    factor: if v[2] == "none" {
                        None
                    } else {
                        Some(natural(v[2])?)
                    },
                }
            }
            "candidate-not-perfect" => {
                let v = expect(&["p", "n", "sigma"])?;
                CandidateNotPerfect {
                    p: word(v[0])?,
                    n: natural(v[1])?,
                    sigma: natural(v[2])?,
                }
            }
            "candidate-not-square-a" => {
                let v = expect(&["p", "a", "root"])?;
                CandidateNotSquareA {
                    p: word(v[0])?,
                    a: natural(v[1])?,
                    root: natural(v[2])?,
                }
            }
            "candidate-shape-violation" => {
                let v = expect(&["p", "b"])?;
                CandidateShapeViolation {
                    p: word(v[0])?,
                    b: natural(v[1])?,
                }
            }
            "candidate-consistency" => {
                let v = expect(&["p", "n", "delta", "perfect"])?;
                CandidateConsistency {
                    p: word(v[0])?,
                    n: natural(v[1])?,
                    delta: natural(v[2])?,
                    perfect: natural(v[3])?,
                }
            }
            _ => return Err(syntax("unknown statement kind")),
        };
        Ok(statement)
    }
}

impl fmt::Display for CheckStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A statement plus the flag recorded when the certificate was issued.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailEntry {
    pub statement: CheckStatement,
    pub verified: bool,
}

impl TrailEntry {
    pub fn render(&self) -> String {
        let flag = if self.verified { "ok" } else { "fail" };
        format!("{flag} {}", self.statement.render())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (flag, rest) = text.split_once(' ').ok_or(Error::CertificateSyntax {
            line: 0,
            message: format!("trail entry missing flag: {text}"),
        })?;
        let verified = match flag {
            "ok" => true,
            "fail" => false,
            _ => {
                return Err(Error::CertificateSyntax {
                    line: 0,
                    message: format!("unknown trail flag: {flag}"),
                })
            }
        };
        Ok(TrailEntry {
            statement: CheckStatement::parse(rest)?,
            verified,
        })
    }
}
