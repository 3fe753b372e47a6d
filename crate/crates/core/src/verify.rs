//! Independent certificate verification.
//!
//! The verifier trusts nothing but the certificate's delta: it recomputes
//! the rule gate from scratch (triangular decomposition, family form,
//! screening-prime primality, candidate enumeration), binds every recorded
//! number to the recomputed one, and replays every trail statement. Any
//! recomputation failure identifies the offending statement.

use crate::arith::{isqrt, nat, to_u64};
use crate::certificate::{CandidateExclusion, ExclusionCertificate, ExclusionReason, ExclusionRule};
use crate::engine::square_obstruction_candidates;
use crate::factor::FactorBudget;
use crate::gaps::{triangular_decompose, FamilyParams};
use crate::primality::is_prime;
use crate::trail::{CheckStatement, FactId};
use crate::Natural;
use num_traits::Zero;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationFailure {
    /// Index into the check trail, when the failure is a trail statement.
    pub index: Option<usize>,
    /// The failing statement (or a description of the missing structure).
    pub statement: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub statements_checked: usize,
    pub failure: Option<VerificationFailure>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn verify_certificate(cert: &ExclusionCertificate) -> VerificationReport {
    verify_certificate_with(cert, &FactorBudget::default())
}

pub fn verify_certificate_with(
    cert: &ExclusionCertificate,
    budget: &FactorBudget,
) -> VerificationReport {
    let mut checked = 0usize;
    let failure = run_verification(cert, budget, &mut checked).err();
    VerificationReport {
        statements_checked: checked,
        failure,
    }
}

type VerifyResult = std::result::Result<(), VerificationFailure>;

fn structural(statement: impl Into<String>, reason: impl Into<String>) -> VerificationFailure {
    VerificationFailure {
        index: None,
        statement: statement.into(),
        reason: reason.into(),
    }
}

fn run_verification(
    cert: &ExclusionCertificate,
    budget: &FactorBudget,
    checked: &mut usize,
) -> VerifyResult {
    // 1. every entry must have been flagged verified at issue time
    for (index, entry) in cert.check_trail.iter().enumerate() {
        if !entry.verified {
            return Err(VerificationFailure {
                index: Some(index),
                statement: entry.statement.render(),
                reason: "entry is flagged unverified".to_string(),
            });
        }
    }

    // 2. replay every statement from its own numbers
    for (index, entry) in cert.check_trail.iter().enumerate() {
        *checked += 1;
        if let Err(reason) = entry.statement.replay(budget) {
            return Err(VerificationFailure {
                index: Some(index),
                statement: entry.statement.render(),
                reason,
            });
        }
    }

    // 3. rule-specific structure, recomputed from delta alone
    match cert.rule {
        ExclusionRule::MinGap => verify_min_gap(cert),
        ExclusionRule::Mod12 => verify_mod12(cert),
        ExclusionRule::TriangularFamily => verify_family(cert),
        ExclusionRule::AdHocSquare => verify_adhoc(cert, budget),
    }
}

struct Statements<'a>(&'a ExclusionCertificate);

impl<'a> Statements<'a> {
    fn require<F>(&self, description: &str, matcher: F) -> VerifyResult
    where
        F: Fn(&CheckStatement) -> bool,
    {
        if self.0.check_trail.iter().any(|e| matcher(&e.statement)) {
            Ok(())
        } else {
            Err(structural(
                format!("<missing: {description}>"),
                "required statement absent or bound to wrong values",
            ))
        }
    }

    fn require_fact(&self, id: FactId) -> VerifyResult {
        self.require(&format!("cited-fact id={}", id.label()), |s| {
            matches!(s, CheckStatement::CitedFact { id: got } if *got == id)
        })
    }

    fn forbid<F>(&self, description: &str, matcher: F) -> VerifyResult
    where
        F: Fn(&CheckStatement) -> bool,
    {
        if self.0.check_trail.iter().any(|e| matcher(&e.statement)) {
            Err(structural(
                format!("<forbidden: {description}>"),
                "statement must not appear under this rule",
            ))
        } else {
            Ok(())
        }
    }
}

fn require_no_candidates(cert: &ExclusionCertificate) -> VerifyResult {
    if cert.candidate_exclusions.is_empty() {
        Ok(())
    } else {
        Err(structural(
            "<candidates>",
            "rule carries no candidate exclusions",
        ))
    }
}

fn require_no_params(cert: &ExclusionCertificate) -> VerifyResult {
    if cert.params.is_none() {
        Ok(())
    } else {
        Err(structural("<family>", "rule carries no family parameters"))
    }
}

fn verify_screening_prime(cert: &ExclusionCertificate, l: &Natural) -> VerifyResult {
    match &cert.l_value {
        Some(got) if got == l => {}
        _ => return Err(structural("<l>", "recorded l disagrees with recomputation")),
    }
    let recomputed = is_prime(l);
    if !recomputed.is_prime() {
        return Err(structural("<l>", "screening prime is not prime"));
    }
    match &cert.l_primality {
        Some(recorded) if *recorded == recomputed => Ok(()),
        Some(_) => Err(structural(
            "<l-primality>",
            "recorded verdict disagrees with recomputation",
        )),
        None => Err(structural("<l-primality>", "missing screening verdict")),
    }
}

fn verify_min_gap(cert: &ExclusionCertificate) -> VerifyResult {
    if cert.delta < Natural::one() || cert.delta > nat(2) {
        return Err(structural("<delta>", "delta is not in {1, 2}"));
    }
    require_no_candidates(cert)?;
    require_no_params(cert)?;
    let st = Statements(cert);
    st.require_fact(FactId::MinGapBound)?;
    st.require("gap-at-most-two", |s| {
        matches!(s, CheckStatement::GapAtMostTwo { delta } if *delta == cert.delta)
    })
}

fn verify_mod12(cert: &ExclusionCertificate) -> VerifyResult {
    let residue = to_u64(&(&cert.delta % 12u32)).unwrap();
    if residue != 1 && residue != 11 {
        return Err(structural("<delta>", "delta is not +/-1 (mod 12)"));
    }
    require_no_candidates(cert)?;
    require_no_params(cert)?;
    let st = Statements(cert);
    st.require("residue-is", |s| {
        matches!(
            s,
            CheckStatement::ResidueIs { value, modulus: 12, residue: r }
                if *value == cert.delta && *r == residue
        )
    })?;
    st.require_fact(FactId::EvenPerfectResidues)?;
    st.require_fact(FactId::TouchardOddResidues)?;
    st.require("mod12-table-excludes", |s| {
        matches!(s, CheckStatement::Mod12TableExcludes { residue: r } if *r as u64 == residue)
    })
}

/// The shared square-argument chain: parity dispatch, n = 6 edge, and the
/// mod-8 residue facts that force A = u^2 and B = q v^2.
fn verify_igen_chain(
    cert: &ExclusionCertificate,
    m: &Natural,
    l: &Natural,
    nine_free: bool,
) -> VerifyResult {
    let st = Statements(cert);
    st.require_fact(FactId::EuclidEulerForm)?;
    st.require_fact(FactId::EulerOddForm)?;
    st.require("even-smaller-forces-six", |s| {
        matches!(s, CheckStatement::EvenSmallerForcesSix { delta } if *delta == cert.delta)
    })?;
    if nine_free {
        st.require_fact(FactId::OddPerfectThreeSquared)?;
        st.require("edge-six-nine", |s| {
            matches!(s, CheckStatement::EdgeSixNine { delta } if *delta == cert.delta)
        })?;
    } else {
        // without the square argument the direct test is mandatory
        st.forbid("edge-six-nine", |s| {
            matches!(s, CheckStatement::EdgeSixNine { .. })
        })?;
        st.require("edge-six-direct", |s| {
            matches!(s, CheckStatement::EdgeSixDirect { delta, sum, .. }
                if *delta == cert.delta && *sum == &cert.delta + 6u32)
        })?;
    }
    // any present direct test must be about this delta
    st.forbid("edge-six-direct for a different delta", |s| {
        matches!(s, CheckStatement::EdgeSixDirect { delta, .. } if *delta != cert.delta)
    })?;
    st.require("edge-even-larger", |s| {
        matches!(s, CheckStatement::EdgeEvenLarger { delta } if *delta == cert.delta)
    })?;
    st.require_fact(FactId::IgenStructure)?;
    st.require("odd-square-mod-eight", |s| {
        matches!(s, CheckStatement::OddSquareModEight)
    })?;
    st.require("l-residue-mod-eight", |s| {
        matches!(s, CheckStatement::LResidueModEight { l: got } if got == l)
    })?;
    st.require("mersenne-residue-mod-eight", |s| {
        matches!(s, CheckStatement::MersenneResidueModEight { m: got } if got == m)
    })?;
    st.require("three-pow-odd-mod-eight", |s| {
        matches!(s, CheckStatement::ThreePowOddModEight)
    })?;
    st.require("q-residue-contradiction", |s| {
        matches!(s, CheckStatement::QResidueContradiction)
    })
}

fn verify_family(cert: &ExclusionCertificate) -> VerifyResult {
    // recompute the family parameters from delta alone
    let b = triangular_decompose(&cert.delta)
        .ok_or_else(|| structural("<delta>", "delta is not triangular"))?;
    if b < nat(46) || !((&b - 46u32) % 48u32).is_zero() {
        return Err(structural("<delta>", "b is not of the form 48s + 46"));
    }
    let s = (&b - 46u32) / 48u32;
    let params = FamilyParams::from_s(&s)
        .map_err(|e| structural("<delta>", format!("family gate fails: {e}")))?;
    if params.delta != cert.delta {
        return Err(structural("<delta>", "family delta mismatch"));
    }
    match &cert.params {
        Some(recorded) if *recorded == params => {}
        _ => {
            return Err(structural(
                "<family>",
                "recorded parameters disagree with recomputation",
            ))
        }
    }
    verify_screening_prime(cert, &params.l)?;
    require_no_candidates(cert)?;
    if cert.extended {
        return Err(structural("<extended>", "family rule is never extended"));
    }

    let st = Statements(cert);
    st.require("triangular-decomposition", |s| {
        matches!(s, CheckStatement::TriangularDecomposition { delta, b: got }
            if *delta == cert.delta && *got == params.b)
    })?;
    st.require("family-form", |s| {
        matches!(s, CheckStatement::FamilyForm { s: fs, m, b, l, delta }
            if *fs == params.s && *m == params.m && *b == params.b
                && *l == params.l && *delta == params.delta)
    })?;
    st.require("s-not-two-mod-three", |s| {
        matches!(s, CheckStatement::SNotTwoModThree { s: got } if *got == params.s)
    })?;
    st.require("residue-is delta=3 mod 12", |s| {
        matches!(s, CheckStatement::ResidueIs { value, modulus: 12, residue: 3 }
            if *value == cert.delta)
    })?;
    st.require("l-square-identity", |s| {
        matches!(s, CheckStatement::LSquareIdentity { l, delta }
            if *l == params.l && *delta == cert.delta)
    })?;
    st.require("prime-check", |s| {
        matches!(s, CheckStatement::PrimeCheck { value } if *value == params.l)
    })?;
    st.require_fact(FactId::DirichletProgressions)?;
    st.require("dirichlet-class", |s| {
        matches!(s, CheckStatement::DirichletClass { s: got, l, .. }
            if *got == params.s && *l == params.l)
    })?;

    // family members always have 9 not dividing 6 + delta
    verify_igen_chain(cert, &params.m, &params.l, true)?;

    let st = Statements(cert);
    st.require("m-two-mod-three", |s| {
        matches!(s, CheckStatement::MTwoModThree { m } if *m == params.m)
    })?;
    st.require("sum-equation-residue", |s| {
        matches!(s, CheckStatement::SumEquationResidue { m } if *m == params.m)
    })?;
    st.require("squares-mod-three", |s| {
        matches!(s, CheckStatement::SquaresModThree)
    })?;
    st.require("case-x-zero", |s| {
        matches!(s, CheckStatement::CaseXZero { m } if *m == params.m)
    })?;
    st.require("case-y-zero", |s| {
        matches!(s, CheckStatement::CaseYZero { m } if *m == params.m)
    })?;
    st.require("case-both-one", |s| matches!(s, CheckStatement::CaseBothOne))?;
    st.require("mod3-exhaustive", |s| {
        matches!(s, CheckStatement::Mod3Exhaustive)
    })
}

fn verify_adhoc(cert: &ExclusionCertificate, budget: &FactorBudget) -> VerifyResult {
    let b = triangular_decompose(&cert.delta)
        .ok_or_else(|| structural("<delta>", "delta is not triangular"))?;
    if to_u64(&(&b % 4u32)) != Some(2) {
        return Err(structural("<delta>", "b is not 2 (mod 4)"));
    }
    if to_u64(&(&cert.delta % 12u32)) != Some(3) {
        return Err(structural("<delta>", "delta is not 3 (mod 12)"));
    }
    let m = (&b - 2u32) / 4u32;
    let l = &m * 8u32 + 3u32;
    verify_screening_prime(cert, &l)?;
    require_no_params(cert)?;
    if cert.extended != (cert.delta != nat(435)) {
        return Err(structural("<extended>", "extended flag mismatch"));
    }

    let st = Statements(cert);
    st.require("triangular-decomposition", |s| {
        matches!(s, CheckStatement::TriangularDecomposition { delta, b: got }
            if *delta == cert.delta && *got == b)
    })?;
    st.require("even-b-form", |s| {
        matches!(s, CheckStatement::EvenBForm { b: got, m: gm } if *got == b && *gm == m)
    })?;
    st.require("residue-is delta=3 mod 12", |s| {
        matches!(s, CheckStatement::ResidueIs { value, modulus: 12, residue: 3 }
            if *value == cert.delta)
    })?;
    st.require("l-form", |s| {
        matches!(s, CheckStatement::LForm { m: gm, l: gl } if *gm == m && *gl == l)
    })?;
    st.require("prime-check", |s| {
        matches!(s, CheckStatement::PrimeCheck { value } if *value == l)
    })?;

    let nine_free = !((&cert.delta + 6u32) % 9u32).is_zero();
    verify_igen_chain(cert, &m, &l, nine_free)?;

    // candidate coverage: the recorded exclusions must be exactly the
    // recomputed enumeration
    let candidates = square_obstruction_candidates(&m, budget)
        .map_err(|e| structural("<candidates>", format!("enumeration failed: {e}")))?;
    let expected: Vec<u64> = candidates.iter().map(|(p, _)| *p).collect();
    let recorded: Vec<u64> = cert.candidate_exclusions.iter().map(|c| c.p).collect();
    if expected != recorded {
        return Err(structural(
            "<candidates>",
            "candidate exclusions do not match the divisor-pair enumeration",
        ));
    }
    let t = &m * 2u32 + 1u32;
    let st = Statements(cert);
    st.require("candidate-complete", |s| {
        matches!(s, CheckStatement::CandidateComplete { t: gt, candidates: c }
            if *gt == t && *c == expected)
    })?;

    for exclusion in &cert.candidate_exclusions {
        verify_candidate(cert, exclusion, &m)?;
    }
    Ok(())
}

fn verify_candidate(
    cert: &ExclusionCertificate,
    exclusion: &CandidateExclusion,
    m: &Natural,
) -> VerifyResult {
    let p = exclusion.p;
    if p < 3 || p.is_multiple_of(2) {
        return Err(structural(
            format!("<candidate p={p}>"),
            "candidate exponent must be odd and >= 3",
        ));
    }
    let pow_half: Natural = Natural::one() << (p - 1) as usize;
    let t = m * 2u32 + 1u32;
    if pow_half <= t {
        return Err(structural(
            format!("<candidate p={p}>"),
            "2^(p-1) <= 2m + 1",
        ));
    }
    let a = &pow_half - &t;
    let b = (&pow_half << 1) + m * 4u32 + 1u32;
    let n = &a * &b;
    let mersenne = (&pow_half << 1) - 1u32;

    let st = Statements(cert);
    st.require(&format!("candidate-split p={p}"), |s| {
        matches!(s, CheckStatement::CandidateSplit { p: gp, m: gm, a: ga, b: gb }
            if *gp == p && *gm == *m && *ga == a && *gb == b)
    })?;

    let fail = |reason: &str| {
        Err(structural(
            format!("<candidate p={p}>"),
            reason.to_string(),
        ))
    };
    match exclusion.reason {
        ExclusionReason::MersenneComposite => {
            st.require(&format!("candidate-mersenne-composite p={p}"), |s| {
                matches!(s, CheckStatement::CandidateMersenneComposite { p: gp, mersenne: gm, .. }
                    if *gp == p && *gm == mersenne)
            })?;
            if exclusion.evidence.first() != Some(&mersenne) {
                return fail("evidence[0] must be 2^p - 1");
            }
            if let Some(factor) = exclusion.evidence.get(1) {
                let matches_statement = cert.check_trail.iter().any(|e| {
                    matches!(&e.statement,
                        CheckStatement::CandidateMersenneComposite { p: gp, factor: Some(f), .. }
                            if *gp == p && f == factor)
                });
                if !matches_statement {
                    return fail("evidence factor disagrees with the trail");
                }
            }
        }
        ExclusionReason::NotSquareA => {
            st.require(&format!("candidate-mersenne-prime p={p}"), |s| {
                matches!(s, CheckStatement::CandidateMersennePrime { p: gp, mersenne: gm }
                    if *gp == p && *gm == mersenne)
            })?;
            let root = isqrt(&a);
            st.require(&format!("candidate-not-square-a p={p}"), |s| {
                matches!(s, CheckStatement::CandidateNotSquareA { p: gp, a: ga, root: gr }
                    if *gp == p && *ga == a && *gr == root)
            })?;
            if exclusion.evidence != vec![a.clone(), root] {
                return fail("evidence must be [A, floor sqrt A]");
            }
        }
        ExclusionReason::NotPerfectN => {
            st.require(&format!("candidate-mersenne-prime p={p}"), |s| {
                matches!(s, CheckStatement::CandidateMersennePrime { p: gp, mersenne: gm }
                    if *gp == p && *gm == mersenne)
            })?;
            st.require(&format!("candidate-not-perfect p={p}"), |s| {
                matches!(s, CheckStatement::CandidateNotPerfect { p: gp, n: gn, .. }
                    if *gp == p && *gn == n)
            })?;
            if exclusion.evidence.len() != 2 || exclusion.evidence[0] != n {
                return fail("evidence must be [n, sigma(n)]");
            }
            let sigma = &exclusion.evidence[1];
            let matches_statement = cert.check_trail.iter().any(|e| {
                matches!(&e.statement,
                    CheckStatement::CandidateNotPerfect { p: gp, sigma: gs, .. }
                        if *gp == p && gs == sigma)
            });
            if !matches_statement {
                return fail("evidence sigma disagrees with the trail");
            }
        }
        ExclusionReason::ShapeViolation => {
            st.require(&format!("candidate-mersenne-prime p={p}"), |s| {
                matches!(s, CheckStatement::CandidateMersennePrime { p: gp, mersenne: gm }
                    if *gp == p && *gm == mersenne)
            })?;
            st.require(&format!("candidate-shape-violation p={p}"), |s| {
                matches!(s, CheckStatement::CandidateShapeViolation { p: gp, b: gb }
                    if *gp == p && *gb == b)
            })?;
            if exclusion.evidence != vec![b.clone()] {
                return fail("evidence must be [B]");
            }
        }
    }

    st.require(&format!("candidate-consistency p={p}"), |s| {
        matches!(s, CheckStatement::CandidateConsistency { p: gp, n: gn, delta, perfect }
            if *gp == p && *gn == n && *delta == cert.delta
                && *perfect == &pow_half * &mersenne)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_family_certificate, classify, ClassifyOptions, GapVerdict};
    use crate::gaps::FamilyParams;

    fn excluded(delta: u64) -> ExclusionCertificate {
        match classify(&nat(delta), &ClassifyOptions::default()) {
            GapVerdict::Excluded(cert) => cert,
            other => panic!("expected exclusion for {delta}, got {other:?}"),
        }
    }

    #[test]
    fn issued_certificates_verify() {
        for delta in [1u64, 2, 11, 13, 15, 231, 435, 10011, 17955, 138075] {
            let cert = excluded(delta);
            let report = verify_certificate(&cert);
            assert!(
                report.is_valid(),
                "delta = {delta}: {:?}",
                report.failure
            );
            assert!(report.statements_checked >= 2);
        }
    }

    #[test]
    fn textual_round_trip_then_verify() {
        for delta in [13u64, 435, 17955] {
            let cert = excluded(delta);
            let text = cert.to_text();
            let back = ExclusionCertificate::parse(&text).unwrap();
            assert_eq!(back, cert);
            assert!(verify_certificate(&back).is_valid());
        }
    }

    #[test]
    fn tampered_l_in_text_fails() {
        let cert = excluded(17955);
        let text = cert.to_text();
        // 381 = 3 * 127
        let tampered = text.replace("l=379", "l=381").replace("l: 379", "l: 381");
        let parsed = ExclusionCertificate::parse(&tampered).unwrap();
        let report = verify_certificate(&parsed);
        assert!(!report.is_valid());
        assert!(report.failure.is_some());
    }

    #[test]
    fn tampered_residue_in_text_fails() {
        let cert = excluded(13);
        let text = cert.to_text();
        let tampered = text.replace("residue=1", "residue=2");
        let parsed = ExclusionCertificate::parse(&tampered).unwrap();
        let report = verify_certificate(&parsed);
        assert!(!report.is_valid());
        let failure = report.failure.unwrap();
        assert!(failure.statement.contains("residue"));
    }

    #[test]
    fn struct_mutations_fail() {
        // mutate the top-level delta
        let mut cert = excluded(435);
        cert.delta = nat(436);
        assert!(!verify_certificate(&cert).is_valid());

        // mutate a family parameter
        let mut cert = excluded(17955);
        if let Some(params) = &mut cert.params {
            params.m = nat(48);
        }
        assert!(!verify_certificate(&cert).is_valid());

        // mutate candidate evidence
        let mut cert = excluded(435);
        cert.candidate_exclusions[0].evidence[1] = nat(63);
        assert!(!verify_certificate(&cert).is_valid());

        // mutate the recorded l
        let mut cert = excluded(435);
        cert.l_value = Some(nat(61));
        assert!(!verify_certificate(&cert).is_valid());

        // drop a required statement
        let mut cert = excluded(17955);
        cert.check_trail
            .retain(|e| !matches!(e.statement, CheckStatement::Mod3Exhaustive));
        assert!(!verify_certificate(&cert).is_valid());

        // flip a verified flag
        let mut cert = excluded(13);
        cert.check_trail[0].verified = false;
        assert!(!verify_certificate(&cert).is_valid());
    }

    #[test]
    fn wrong_rule_certificates_fail() {
        // a family certificate re-labelled as ad hoc must not verify
        let params = FamilyParams::from_s(&nat(3)).unwrap();
        let mut cert = build_family_certificate(&params, &FactorBudget::default()).unwrap();
        cert.rule = ExclusionRule::AdHocSquare;
        assert!(!verify_certificate(&cert).is_valid());

        // a mod12 certificate for a residue outside +/-1 must not verify
        let mut cert = excluded(13);
        cert.delta = nat(18);
        assert!(!verify_certificate(&cert).is_valid());
    }
}
