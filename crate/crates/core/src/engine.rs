//! Exclusion machinery: family enumeration with progression bookkeeping,
//! the finite mod-3 contradiction, the divisor-pair square obstruction,
//! per-candidate exclusion, the top-level classifier, and certificate
//! construction. Every issued certificate has its whole trail replayed
//! before it leaves this module.

use crate::arith::{is_square, isqrt, nat, to_u64};
use crate::certificate::{
    CandidateExclusion, ExclusionCertificate, ExclusionReason, ExclusionRule,
};
use crate::factor::{factorize, FactorBudget};
use crate::gaps::{
    eq1_eq2_shape_check, family_membership, igen_split, mod12_exclusion, triangular_decompose,
    FamilyParams, Mod12Certificate,
};
use crate::perfect::sigma_with;
use crate::primality::{is_prime, lucas_lehmer, PrimalityStatus, PrimalityVerdict};
use crate::sieve::{perfects_upto, SieveBudget};
use crate::trail::{CheckStatement, FactId, TrailEntry};
use crate::{Error, Natural, Result};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// The two Dirichlet progressions that cover admissible s: l = 288a + 91
/// for s = 3a, and l = 288a + 187 for s = 3a + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirichletClassId {
    A,
    B,
}

impl DirichletClassId {
    pub fn letter(self) -> char {
        match self {
            DirichletClassId::A => 'A',
            DirichletClassId::B => 'B',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressionClass {
    pub class: DirichletClassId,
    pub a: Natural,
    pub l: Natural,
}

/// Place s in its progression class. Rejects s = 2 (mod 3).
pub fn dirichlet_split(s: &Natural) -> Result<ProgressionClass> {
    let (quot, rem) = s.div_rem(&nat(3));
    let (class, offset) = match to_u64(&rem) {
        Some(0) => (DirichletClassId::A, 91u32),
        Some(1) => (DirichletClassId::B, 187u32),
        _ => return Err(Error::ExcludedResidueClass { s: s.clone() }),
    };
    let l = &quot * 288u32 + offset;
    debug_assert_eq!(l, s * 96u32 + 91u32);
    debug_assert!(crate::arith::gcd_u64(288, offset as u64) == 1);
    Ok(ProgressionClass { class, a: quot, l })
}

/// All odd exponents p for which 2^(p-1) - t is a perfect square, with the
/// square root x. Complete by the divisor-pair argument: a solution forces
/// (2^((p-1)/2) - x)(2^((p-1)/2) + x) = t, so the pair sums to a power of
/// two, and each divisor pair of t yields at most one p.
pub fn square_obstruction_candidates(
    m: &Natural,
    budget: &FactorBudget,
) -> Result<Vec<(u64, Natural)>> {
    let t = m * 2u32 + 1u32;
    let f = factorize(&t, budget);
    if !f.complete {
        return Err(Error::IncompleteFactorization {
            n: t.clone(),
            cofactor: f.cofactor,
        });
    }
    let mut out: Vec<(u64, Natural)> = Vec::new();
    for d1 in f.divisors() {
        if &d1 * &d1 > t {
            break;
        }
        let d2 = &t / &d1;
        let sum = &d1 + &d2;
        if sum.count_ones() != 1 || sum < nat(4) {
            continue;
        }
        // sum = 2^(k+1), p = 2k + 1
        let k = sum.bits() - 2;
        let p = 2 * k + 1;
        let x = (&d2 - &d1) >> 1;
        debug_assert_eq!(
            (Natural::one() << (p - 1) as usize) - &t,
            &x * &x,
            "candidate does not satisfy 2^(p-1) - t = x^2"
        );
        out.push((p, x));
    }
    out.sort_by_key(|(p, _)| *p);
    Ok(out)
}

/// Replayed trail of the three-case mod-3 refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContradictionTrail {
    pub statements: Vec<TrailEntry>,
    /// True when every case is refuted: no (x, y) satisfies the sum
    /// equation mod 3.
    pub unsat: bool,
}

impl ContradictionTrail {
    pub fn refuted_cases(&self) -> usize {
        self.statements
            .iter()
            .filter(|e| {
                matches!(
                    e.statement,
                    CheckStatement::CaseXZero { .. }
                        | CheckStatement::CaseYZero { .. }
                        | CheckStatement::CaseBothOne
                )
            })
            .count()
    }

    pub fn has_exhaustiveness_check(&self) -> bool {
        self.statements
            .iter()
            .any(|e| e.statement == CheckStatement::Mod3Exhaustive)
    }
}

/// Replay the sum-equation contradiction for a family member with prime l.
pub fn mod3_contradiction(params: &FamilyParams) -> Result<ContradictionTrail> {
    if !params.identities_hold() {
        return Err(Error::ExcludedResidueClass {
            s: params.s.clone(),
        });
    }
    if !is_prime(&params.l).is_prime() {
        return Err(Error::ScreeningPrimeComposite {
            l: params.l.clone(),
        });
    }
    let budget = FactorBudget::default();
    let m = &params.m;
    let statements = vec![
        CheckStatement::MTwoModThree { m: m.clone() },
        CheckStatement::SumEquationResidue { m: m.clone() },
        CheckStatement::SquaresModThree,
        CheckStatement::CaseXZero { m: m.clone() },
        CheckStatement::CaseYZero { m: m.clone() },
        CheckStatement::CaseBothOne,
        CheckStatement::Mod3Exhaustive,
    ];
    let entries: Vec<TrailEntry> = statements
        .into_iter()
        .map(|statement| {
            let verified = statement.replay(&budget).is_ok();
            TrailEntry {
                statement,
                verified,
            }
        })
        .collect();
    let unsat = entries.iter().all(|e| e.verified);
    Ok(ContradictionTrail {
        statements: entries,
        unsat,
    })
}

/// Exclude one candidate exponent p for the distance delta at parameter m.
pub fn exclude_candidate(
    delta: &Natural,
    m: &Natural,
    p: u64,
    budget: &FactorBudget,
) -> Result<CandidateExclusion> {
    exclude_candidate_with_trail(delta, m, p, budget).map(|(c, _)| c)
}

/// As [`exclude_candidate`], also returning the trail statements that an
/// independent verifier replays.
pub fn exclude_candidate_with_trail(
    delta: &Natural,
    m: &Natural,
    p: u64,
    budget: &FactorBudget,
) -> Result<(CandidateExclusion, Vec<TrailEntry>)> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::RequiresOddPrime { p });
    }
    let mut trail = TrailSink::new(budget);
    let mersenne = (Natural::one() << p as usize) - 1u32;
    let t = m * 2u32 + 1u32;
    let pow_half: Natural = Natural::one() << (p - 1) as usize;
    if pow_half <= t {
        return Err(Error::ExponentTooSmall { p });
    }
    let a = &pow_half - &t;
    let b: Natural = (&pow_half << 1) + m * 4u32 + 1u32;
    let n = &a * &b;
    trail.push(CheckStatement::CandidateSplit {
        p,
        m: m.clone(),
        a: a.clone(),
        b: b.clone(),
    })?;

    // fixed order: Mersenne screen, then the square obstruction, then the
    // sigma test, then the q*v^2 shape
    let p_prime = is_prime(&nat(p)).is_prime();
    let mersenne_prime = if p_prime {
        lucas_lehmer(p)?.status == PrimalityStatus::Prime
    } else {
        false
    };
    let exclusion = if !mersenne_prime {
        let factor = mersenne_factor(p, &mersenne, budget);
        trail.push(CheckStatement::CandidateMersenneComposite {
            p,
            mersenne: mersenne.clone(),
            factor: factor.clone(),
        })?;
        let mut evidence = vec![mersenne.clone()];
        evidence.extend(factor);
        CandidateExclusion {
            p,
            reason: ExclusionReason::MersenneComposite,
            evidence,
        }
    } else {
        trail.push(CheckStatement::CandidateMersennePrime {
            p,
            mersenne: mersenne.clone(),
        })?;
        if is_square(&a).is_none() {
            let root = isqrt(&a);
            trail.push(CheckStatement::CandidateNotSquareA {
                p,
                a: a.clone(),
                root: root.clone(),
            })?;
            CandidateExclusion {
                p,
                reason: ExclusionReason::NotSquareA,
                evidence: vec![a.clone(), root],
            }
        } else {
            let sigma = sigma_with(&n, budget)?;
            if sigma != &n * 2u32 {
                trail.push(CheckStatement::CandidateNotPerfect {
                    p,
                    n: n.clone(),
                    sigma: sigma.clone(),
                })?;
                CandidateExclusion {
                    p,
                    reason: ExclusionReason::NotPerfectN,
                    evidence: vec![n.clone(), sigma],
                }
            } else {
                // n really is perfect; the only exclusion left is the
                // special-prime shape of B
                let split = igen_split(m, p)?;
                let report = eq1_eq2_shape_check(&split, budget)?;
                if report.eq2_holds() {
                    return Err(Error::CandidateNotExcluded { p });
                }
                trail.push(CheckStatement::CandidateShapeViolation {
                    p,
                    b: b.clone(),
                })?;
                CandidateExclusion {
                    p,
                    reason: ExclusionReason::ShapeViolation,
                    evidence: vec![b.clone()],
                }
            }
        }
    };
    let perfect = &pow_half * &mersenne;
    trail.push(CheckStatement::CandidateConsistency {
        p,
        n,
        delta: delta.clone(),
        perfect,
    })?;
    Ok((exclusion, trail.entries))
}

/// A proper factor of a composite 2^p - 1, when one is cheap to obtain.
fn mersenne_factor(p: u64, mersenne: &Natural, budget: &FactorBudget) -> Option<Natural> {
    if p >= 3 && !is_prime(&nat(p)).is_prime() {
        // 2^d - 1 divides 2^p - 1 for any divisor d of p
        let d = (2..=p).find(|d| p.is_multiple_of(*d)).unwrap();
        if d < p {
            return Some((Natural::one() << d as usize) - 1u32);
        }
    }
    let f = factorize(mersenne, budget);
    f.factors
        .first()
        .map(|(q, _)| q.clone())
        .filter(|q| q != mersenne)
}

/// One enumerated family member: parameters, progression class, the
/// screening verdict on l, and the certificate when l is prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEntry {
    pub params: FamilyParams,
    pub class: ProgressionClass,
    pub l_verdict: PrimalityVerdict,
    pub certificate: Option<ExclusionCertificate>,
}

impl FamilyEntry {
    pub fn certified(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Enumerate s = 0..=s_max with s != 2 (mod 3), screen l = 96s + 91, and
/// certify every member whose l is prime. The s-range is partitioned
/// across workers; results come back in s-order.
pub fn generate_family(s_max: u64, budget: &FactorBudget) -> Vec<FamilyEntry> {
    let admissible: Vec<u64> = (0..=s_max).filter(|s| s % 3 != 2).collect();
    admissible
        .into_par_iter()
        .map(|s| {
            let s = nat(s);
            let params = FamilyParams::from_s(&s).expect("admissible s");
            let class = dirichlet_split(&s).expect("admissible s");
            let l_verdict = is_prime(&params.l);
            let certificate = if l_verdict.is_prime() {
                Some(
                    build_family_certificate(&params, budget)
                        .expect("family certificate construction"),
                )
            } else {
                None
            };
            FamilyEntry {
                params,
                class,
                l_verdict,
                certificate,
            }
        })
        .collect()
}

/// Why a rule did not fire during classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSkip {
    pub rule: &'static str,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapVerdict {
    Excluded(Box<ExclusionCertificate>),
    Realized { smaller: Natural, larger: Natural },
    Inconclusive { reasons: Vec<RuleSkip> },
}

impl GapVerdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, GapVerdict::Excluded(_))
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub budget: FactorBudget,
    /// Enables Realized detection against the sieve oracle up to this bound.
    pub oracle_bound: Option<u64>,
    pub sieve_budget: SieveBudget,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: FactorBudget::default(),
            oracle_bound: None,
            sieve_budget: SieveBudget::default(),
        }
    }
}

/// Decide whether the known rules exclude delta as a distance between two
/// perfect numbers. Rule order: the +/-1 mod 12 exclusion, the minimal
/// gap, the certified triangular family, the square obstruction, then the
/// oracle for Realized witnesses. Inconclusive verdicts list why each rule
/// passed.
pub fn classify(delta: &Natural, opts: &ClassifyOptions) -> GapVerdict {
    let mut reasons: Vec<RuleSkip> = Vec::new();

    if delta.is_zero() {
        return GapVerdict::Inconclusive {
            reasons: vec![RuleSkip {
                rule: "input",
                reason: "delta must be at least 1".to_string(),
            }],
        };
    }

    match mod12_exclusion(delta) {
        Some(cert) => {
            return GapVerdict::Excluded(Box::new(
                build_mod12_certificate(&cert).expect("mod12 certificate construction"),
            ))
        }
        None => reasons.push(RuleSkip {
            rule: ExclusionRule::Mod12.label(),
            reason: format!("delta = {} (mod 12), not +/-1", delta % 12u32),
        }),
    }

    if delta <= &nat(2) {
        return GapVerdict::Excluded(Box::new(
            build_min_gap_certificate(delta).expect("min-gap certificate construction"),
        ));
    }
    reasons.push(RuleSkip {
        rule: ExclusionRule::MinGap.label(),
        reason: "delta exceeds 2".to_string(),
    });

    match family_membership(delta) {
        Some(params) => {
            let verdict = is_prime(&params.l);
            if verdict.is_prime() {
                match build_family_certificate(&params, &opts.budget) {
                    Ok(cert) => return GapVerdict::Excluded(Box::new(cert)),
                    Err(e) => reasons.push(RuleSkip {
                        rule: ExclusionRule::TriangularFamily.label(),
                        reason: format!("certificate construction failed: {e}"),
                    }),
                }
            } else {
                reasons.push(RuleSkip {
                    rule: ExclusionRule::TriangularFamily.label(),
                    reason: format!("screening prime l = {} is composite", params.l),
                });
            }
        }
        None => reasons.push(RuleSkip {
            rule: ExclusionRule::TriangularFamily.label(),
            reason: "delta is not of the family form b = 48s+46, s != 2 (mod 3)".to_string(),
        }),
    }

    match adhoc_gate(delta) {
        Ok((b, m, l)) => {
            if is_prime(&l).is_prime() {
                match build_adhoc_certificate(delta, &b, &m, &l, &opts.budget) {
                    Ok(cert) => return GapVerdict::Excluded(Box::new(cert)),
                    Err(e) => reasons.push(RuleSkip {
                        rule: ExclusionRule::AdHocSquare.label(),
                        reason: format!("certificate construction failed: {e}"),
                    }),
                }
            } else {
                reasons.push(RuleSkip {
                    rule: ExclusionRule::AdHocSquare.label(),
                    reason: format!("l = {l} is composite"),
                });
            }
        }
        Err(why) => reasons.push(RuleSkip {
            rule: ExclusionRule::AdHocSquare.label(),
            reason: why,
        }),
    }

    if let Some(bound) = opts.oracle_bound {
        match perfects_upto(bound, &opts.sieve_budget) {
            Ok(perfects) => {
                if let Some(d) = to_u64(delta) {
                    for (i, &x) in perfects.iter().enumerate() {
                        for &y in &perfects[i + 1..] {
                            if y - x == d {
                                return GapVerdict::Realized {
                                    smaller: nat(x),
                                    larger: nat(y),
                                };
                            }
                        }
                    }
                }
                reasons.push(RuleSkip {
                    rule: "oracle",
                    reason: format!("no witness pair below {bound}"),
                });
            }
            Err(e) => reasons.push(RuleSkip {
                rule: "oracle",
                reason: format!("oracle unavailable: {e}"),
            }),
        }
    } else {
        reasons.push(RuleSkip {
            rule: "oracle",
            reason: "no oracle bound supplied".to_string(),
        });
    }

    GapVerdict::Inconclusive { reasons }
}

/// The square-obstruction rule applies to triangular delta = 3 (mod 12)
/// with b = 2 (mod 4) and l = 8m + 3 prime; returns (b, m, l) or the
/// reason the gate fails.
fn adhoc_gate(delta: &Natural) -> std::result::Result<(Natural, Natural, Natural), String> {
    let b = triangular_decompose(delta)
        .ok_or_else(|| "delta is not triangular".to_string())?;
    if to_u64(&(&b % 4u32)) != Some(2) {
        return Err(format!("b = {b} is not 2 (mod 4)"));
    }
    if to_u64(&(delta % 12u32)) != Some(3) {
        return Err(format!("delta = {} (mod 12), not 3", delta % 12u32));
    }
    let m = (&b - 2u32) / 4u32;
    let l = &m * 8u32 + 3u32;
    Ok((b, m, l))
}

struct TrailSink<'a> {
    budget: &'a FactorBudget,
    entries: Vec<TrailEntry>,
}

impl<'a> TrailSink<'a> {
    fn new(budget: &'a FactorBudget) -> Self {
        TrailSink {
            budget,
            entries: Vec::new(),
        }
    }

    /// Replay a statement and append it; a failing replay aborts
    /// certificate construction.
    fn push(&mut self, statement: CheckStatement) -> Result<()> {
        match statement.replay(self.budget) {
            Ok(()) => {
                self.entries.push(TrailEntry {
                    statement,
                    verified: true,
                });
                Ok(())
            }
            Err(reason) => Err(Error::StatementFailed {
                statement: statement.render(),
                reason,
            }),
        }
    }

    fn extend(&mut self, entries: Vec<TrailEntry>) {
        self.entries.extend(entries);
    }
}

pub fn build_min_gap_certificate(delta: &Natural) -> Result<ExclusionCertificate> {
    let budget = FactorBudget::default();
    let mut trail = TrailSink::new(&budget);
    trail.push(CheckStatement::CitedFact {
        id: FactId::MinGapBound,
    })?;
    trail.push(CheckStatement::GapAtMostTwo {
        delta: delta.clone(),
    })?;
    Ok(ExclusionCertificate {
        delta: delta.clone(),
        rule: ExclusionRule::MinGap,
        extended: false,
        params: None,
        l_value: None,
        l_primality: None,
        candidate_exclusions: Vec::new(),
        check_trail: trail.entries,
    })
}

pub fn build_mod12_certificate(cert: &Mod12Certificate) -> Result<ExclusionCertificate> {
    let budget = FactorBudget::default();
    let mut trail = TrailSink::new(&budget);
    trail.push(CheckStatement::ResidueIs {
        value: cert.delta.clone(),
        modulus: 12,
        residue: cert.residue as u64,
    })?;
    trail.push(CheckStatement::CitedFact {
        id: FactId::EvenPerfectResidues,
    })?;
    trail.push(CheckStatement::CitedFact {
        id: FactId::TouchardOddResidues,
    })?;
    trail.push(CheckStatement::Mod12TableExcludes {
        residue: cert.residue,
    })?;
    Ok(ExclusionCertificate {
        delta: cert.delta.clone(),
        rule: ExclusionRule::Mod12,
        extended: false,
        params: None,
        l_value: None,
        l_primality: None,
        candidate_exclusions: Vec::new(),
        check_trail: trail.entries,
    })
}

/// Statements shared by both square-argument rules: the parity dispatch of
/// the two members, the n = 6 edge, and the residue chain that forces
/// A = u^2 and B = q v^2 with q = 5 (mod 8).
fn push_igen_chain(
    trail: &mut TrailSink,
    delta: &Natural,
    m: &Natural,
    l: &Natural,
    budget: &FactorBudget,
    direct_required: bool,
) -> Result<()> {
    trail.push(CheckStatement::CitedFact {
        id: FactId::EuclidEulerForm,
    })?;
    trail.push(CheckStatement::CitedFact {
        id: FactId::EulerOddForm,
    })?;
    trail.push(CheckStatement::EvenSmallerForcesSix {
        delta: delta.clone(),
    })?;

    // n = 6: the square argument when 9 does not divide 6 + delta, the
    // direct sigma test otherwise (and alongside, when it is cheap)
    let sum = delta + 6u32;
    let nine_free = !(&sum % 9u32).is_zero();
    if nine_free {
        trail.push(CheckStatement::CitedFact {
            id: FactId::OddPerfectThreeSquared,
        })?;
        trail.push(CheckStatement::EdgeSixNine {
            delta: delta.clone(),
        })?;
    }
    match sigma_with(&sum, budget) {
        Ok(sigma) => {
            trail.push(CheckStatement::EdgeSixDirect {
                delta: delta.clone(),
                sum,
                sigma,
            })?;
        }
        Err(e) => {
            if !nine_free || direct_required {
                return Err(e);
            }
        }
    }
    trail.push(CheckStatement::EdgeEvenLarger {
        delta: delta.clone(),
    })?;

    trail.push(CheckStatement::CitedFact {
        id: FactId::IgenStructure,
    })?;
    trail.push(CheckStatement::OddSquareModEight)?;
    trail.push(CheckStatement::LResidueModEight { l: l.clone() })?;
    trail.push(CheckStatement::MersenneResidueModEight { m: m.clone() })?;
    trail.push(CheckStatement::ThreePowOddModEight)?;
    trail.push(CheckStatement::QResidueContradiction)?;
    Ok(())
}

/// Certificate for a family member with prime l: the mod-3 contradiction
/// kills every exponent p at once.
pub fn build_family_certificate(
    params: &FamilyParams,
    budget: &FactorBudget,
) -> Result<ExclusionCertificate> {
    let l_verdict = is_prime(&params.l);
    if !l_verdict.is_prime() {
        return Err(Error::ScreeningPrimeComposite {
            l: params.l.clone(),
        });
    }
    let mut trail = TrailSink::new(budget);
    trail.push(CheckStatement::TriangularDecomposition {
        delta: params.delta.clone(),
        b: params.b.clone(),
    })?;
    trail.push(CheckStatement::FamilyForm {
        s: params.s.clone(),
        m: params.m.clone(),
        b: params.b.clone(),
        l: params.l.clone(),
        delta: params.delta.clone(),
    })?;
    trail.push(CheckStatement::SNotTwoModThree {
        s: params.s.clone(),
    })?;
    trail.push(CheckStatement::ResidueIs {
        value: params.delta.clone(),
        modulus: 12,
        residue: 3,
    })?;
    trail.push(CheckStatement::LSquareIdentity {
        l: params.l.clone(),
        delta: params.delta.clone(),
    })?;
    trail.push(CheckStatement::PrimeCheck {
        value: params.l.clone(),
    })?;
    let class = dirichlet_split(&params.s)?;
    trail.push(CheckStatement::CitedFact {
        id: FactId::DirichletProgressions,
    })?;
    trail.push(CheckStatement::DirichletClass {
        s: params.s.clone(),
        class: class.class.letter(),
        a: class.a.clone(),
        l: class.l.clone(),
    })?;

    push_igen_chain(&mut trail, &params.delta, &params.m, &params.l, budget, false)?;

    let contradiction = mod3_contradiction(params)?;
    if !contradiction.unsat {
        return Err(Error::CandidateNotExcluded { p: 0 });
    }
    trail.extend(contradiction.statements);

    Ok(ExclusionCertificate {
        delta: params.delta.clone(),
        rule: ExclusionRule::TriangularFamily,
        extended: false,
        params: Some(params.clone()),
        l_value: Some(params.l.clone()),
        l_primality: Some(l_verdict),
        candidate_exclusions: Vec::new(),
        check_trail: trail.entries,
    })
}

/// Certificate for a triangular delta = 3 (mod 12) with b = 4m + 2 and
/// l = 8m + 3 prime: enumerate the finitely many p with A a square and
/// exclude each.
pub fn build_adhoc_certificate(
    delta: &Natural,
    b: &Natural,
    m: &Natural,
    l: &Natural,
    budget: &FactorBudget,
) -> Result<ExclusionCertificate> {
    let l_verdict = is_prime(l);
    if !l_verdict.is_prime() {
        return Err(Error::ScreeningPrimeComposite { l: l.clone() });
    }
    let mut trail = TrailSink::new(budget);
    trail.push(CheckStatement::TriangularDecomposition {
        delta: delta.clone(),
        b: b.clone(),
    })?;
    trail.push(CheckStatement::EvenBForm {
        b: b.clone(),
        m: m.clone(),
    })?;
    trail.push(CheckStatement::ResidueIs {
        value: delta.clone(),
        modulus: 12,
        residue: 3,
    })?;
    trail.push(CheckStatement::LForm {
        m: m.clone(),
        l: l.clone(),
    })?;
    trail.push(CheckStatement::PrimeCheck { value: l.clone() })?;

    // the n = 6 direct test is mandatory here whenever 9 | 6 + delta
    push_igen_chain(&mut trail, delta, m, l, budget, true)?;

    let candidates = square_obstruction_candidates(m, budget)?;
    let t = m * 2u32 + 1u32;
    trail.push(CheckStatement::CandidateComplete {
        t,
        candidates: candidates.iter().map(|(p, _)| *p).collect(),
    })?;

    let mut exclusions = Vec::new();
    for (p, _x) in &candidates {
        let (exclusion, entries) = exclude_candidate_with_trail(delta, m, *p, budget)?;
        exclusions.push(exclusion);
        trail.extend(entries);
    }

    Ok(ExclusionCertificate {
        delta: delta.clone(),
        rule: ExclusionRule::AdHocSquare,
        extended: delta != &nat(435),
        params: None,
        l_value: Some(l.clone()),
        l_primality: Some(l_verdict),
        candidate_exclusions: exclusions,
        check_trail: trail.entries,
    })
}
