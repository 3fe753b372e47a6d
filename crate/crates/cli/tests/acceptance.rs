//! Acceptance suite. One test per criterion; each prints a pass line on
//! success and asserts its stated tolerance, including runtime limits.

use gapcert_core::arith::{isqrt_u64, nat, to_u64};
use gapcert_core::engine::{
    classify, generate_family, square_obstruction_candidates, ClassifyOptions, DirichletClassId,
    GapVerdict,
};
use gapcert_core::factor::FactorBudget;
use gapcert_core::perfect::{even_perfect, sigma};
use gapcert_core::primality::{is_prime, is_prime_u64, lucas_lehmer, PrimalityStatus};
use gapcert_core::sieve::{
    divisor_sum_segment, perfects_upto, validate_paper_claims, SieveBudget,
};
use gapcert_core::trail::CheckStatement;
use gapcert_core::verify::verify_certificate;
use gapcert_core::{ExclusionCertificate, ExclusionRule, Natural};
use std::process::Command;
use std::time::{Duration, Instant};

fn gapcert() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gapcert"))
}

fn stdout_of(output: &std::process::Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

/// Criterion 1: `classify 435` is excluded by the square rule with the
/// candidate exponents {5, 7}, each carrying sigma evidence, in under a
/// second.
#[test]
fn criterion_1_square_rule_reproduction() {
    let start = Instant::now();
    let output = gapcert().args(["classify", "435"]).output().unwrap();
    let elapsed = start.elapsed();
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("EXCLUDED (adhoc-square)"), "{text}");
    assert!(text.contains("p=5: not-perfect-n, evidence 61,62"), "{text}");
    assert!(
        text.contains("p=7: not-perfect-n, evidence 7693,9006"),
        "{text}"
    );
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");

    // library-level: the candidate set is exactly {5, 7}
    match classify(&nat(435), &ClassifyOptions::default()) {
        GapVerdict::Excluded(cert) => {
            assert_eq!(cert.rule, ExclusionRule::AdHocSquare);
            let ps: Vec<u64> = cert.candidate_exclusions.iter().map(|c| c.p).collect();
            assert_eq!(ps, vec![5, 7]);
            assert_eq!(cert.candidate_exclusions[0].evidence, vec![nat(61), nat(62)]);
            assert_eq!(
                cert.candidate_exclusions[1].evidence,
                vec![nat(7693), nat(9006)]
            );
            assert_eq!(sigma(&nat(61)).unwrap(), nat(62));
            assert_eq!(sigma(&nat(7693)).unwrap(), nat(9006));
        }
        other => panic!("unexpected {other:?}"),
    }
    println!("criterion 1 (square-rule reproduction at delta 435): PASS ({elapsed:?})");
}

fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Criterion 2: `family 1000` certifies exactly the admissible s with
/// 96s + 91 prime, first member s = 3, every certificate well-formed and
/// independently verified, both progression classes present, in under 5 s.
#[test]
fn criterion_2_family_enumeration_to_1000() {
    let start = Instant::now();
    let output = gapcert().args(["family", "1000"]).output().unwrap();
    let elapsed = start.elapsed();
    assert!(output.status.success());
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");

    let entries = generate_family(1000, &FactorBudget::default());
    let certified: Vec<&_> = entries.iter().filter(|e| e.certified()).collect();

    // independent gate: trial division on l, no shared primality code
    let expected: Vec<u64> = (0..=1000u64)
        .filter(|s| s % 3 != 2 && trial_division_is_prime(96 * s + 91))
        .collect();
    let got: Vec<u64> = certified
        .iter()
        .map(|e| to_u64(&e.params.s).unwrap())
        .collect();
    assert_eq!(got, expected);
    assert_eq!(got.first(), Some(&3));
    let first = certified.first().unwrap();
    assert_eq!(first.params.delta, nat(17955));
    assert_eq!(first.params.l, nat(379));

    let mut class_a = 0;
    let mut class_b = 0;
    for entry in &certified {
        let cert = entry.certificate.as_ref().unwrap();
        assert_eq!(to_u64(&(&cert.delta % 12u32)), Some(3));
        assert_eq!(
            &entry.params.l * &entry.params.l,
            &cert.delta * 8u32 + 1u32
        );
        let report = verify_certificate(cert);
        assert!(report.is_valid(), "s = {}: {:?}", entry.params.s, report.failure);
        match entry.class.class {
            DirichletClassId::A => class_a += 1,
            DirichletClassId::B => class_b += 1,
        }
    }
    assert!(class_a > 0 && class_b > 0, "A: {class_a}, B: {class_b}");
    println!(
        "criterion 2 (family to s=1000, {} certified, classes A={class_a} B={class_b}): PASS ({elapsed:?})",
        certified.len()
    );
}

/// Criterion 3: every certified member's trail holds exactly the three
/// refuted cases plus the exhaustiveness check; no satisfying assignment
/// anywhere.
#[test]
fn criterion_3_mod3_contradiction_engine() {
    let entries = generate_family(1000, &FactorBudget::default());
    let mut checked = 0;
    for entry in entries.iter().filter(|e| e.certified()) {
        let cert = entry.certificate.as_ref().unwrap();
        let x_cases = cert
            .check_trail
            .iter()
            .filter(|e| matches!(e.statement, CheckStatement::CaseXZero { .. }))
            .count();
        let y_cases = cert
            .check_trail
            .iter()
            .filter(|e| matches!(e.statement, CheckStatement::CaseYZero { .. }))
            .count();
        let both_cases = cert
            .check_trail
            .iter()
            .filter(|e| matches!(e.statement, CheckStatement::CaseBothOne))
            .count();
        let exhaustive = cert
            .check_trail
            .iter()
            .filter(|e| matches!(e.statement, CheckStatement::Mod3Exhaustive))
            .count();
        assert_eq!((x_cases, y_cases, both_cases), (1, 1, 1), "s = {}", entry.params.s);
        assert_eq!(exhaustive, 1, "s = {}", entry.params.s);
        // unsat in every certificate: all case statements verified
        assert!(cert.check_trail.iter().all(|e| e.verified));
        let trail = gapcert_core::engine::mod3_contradiction(&entry.params).unwrap();
        assert!(trail.unsat);
        assert_eq!(trail.refuted_cases(), 3);
        checked += 1;
    }
    assert!(checked > 0);
    println!("criterion 3 (mod-3 contradiction engine, {checked} certificates UNSAT): PASS");
}

/// Criterion 4: for every delta <= 1e5, the mod-12 rule fires exactly on
/// residues 1 and 11, and classification returns that rule for them.
#[test]
fn criterion_4_mod12_rule_exactness() {
    let opts = ClassifyOptions::default();
    let mut fired = [0u32; 12];
    for delta in 1u64..=100_000 {
        let residue = (delta % 12) as usize;
        let verdict = classify(&nat(delta), &opts);
        match &verdict {
            GapVerdict::Excluded(cert) if cert.rule == ExclusionRule::Mod12 => {
                fired[residue] += 1;
                assert!(
                    residue == 1 || residue == 11,
                    "false fire at delta = {delta}"
                );
            }
            _ => {
                assert!(
                    residue != 1 && residue != 11,
                    "missed fire at delta = {delta}"
                );
            }
        }
    }
    let firing_residues: Vec<usize> = (0..12).filter(|&r| fired[r] > 0).collect();
    assert_eq!(firing_residues, vec![1, 11]);
    // residue 1 appears at 1, 13, ..., 99997; residue 11 at 11, ..., 99995
    assert_eq!((fired[1], fired[11]), (8334, 8333));
    println!("criterion 4 (mod-12 rule fires on exactly 2 of 12 residues over 1e5 deltas): PASS");
}

/// Criterion 5: the oracle at 1e7 finds exactly [6, 28, 496, 8128] with
/// every claim holding, in under 60 s; at 1e8 the list gains 33550336 and
/// the claims still hold.
#[test]
fn criterion_5_oracle_validation() {
    let start = Instant::now();
    let output = gapcert().args(["oracle", "10000000"]).output().unwrap();
    let elapsed = start.elapsed();
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("perfect_list=6 28 496 8128\n"), "{text}");
    for claim in [
        "GT1", "GT2", "NONDIV", "MOD12", "EVEN-RES", "NO-ODD", "FAMILY-ABSENT",
    ] {
        assert!(text.contains(&format!("claim {claim} holds=true")), "{text}");
    }
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");

    let big = validate_paper_claims(100_000_000, &SieveBudget::default()).unwrap();
    assert_eq!(big.perfect_list, vec![6, 28, 496, 8128, 33550336]);
    assert!(big.claims.iter().all(|c| c.holds));
    // the even-residue claim sees exactly the residues 6, 4, 4, 4, 4
    let residues: Vec<u64> = big.perfect_list.iter().map(|n| n % 12).collect();
    assert_eq!(residues, vec![6, 4, 4, 4, 4]);
    println!("criterion 5 (oracle validation at 1e7 and 1e8): PASS ({elapsed:?})");
}

/// Criterion 6: sieve sigma equals factorization sigma exhaustively to
/// 1e6; the sieve list at 1e8 equals the Lucas-Lehmer generator's output;
/// the Lucas-Lehmer exponents to 127 are the canonical twelve, each
/// cross-checked against direct primality of 2^p - 1.
#[test]
fn criterion_6_cross_kernel_consistency() {
    let sigma_table = divisor_sum_segment(1, 1_000_001);
    for n in 1u64..=1_000_000 {
        assert_eq!(
            nat(sigma_table[(n - 1) as usize]),
            sigma(&nat(n)).unwrap(),
            "n = {n}"
        );
    }

    let from_sieve = perfects_upto(100_000_000, &SieveBudget::default()).unwrap();
    let mut from_generator = Vec::new();
    for p in 2u64..=31 {
        if !is_prime_u64(p).is_prime() {
            continue;
        }
        if lucas_lehmer(p).unwrap().status == PrimalityStatus::Prime {
            let n = even_perfect(p).unwrap();
            if let Some(v) = to_u64(&n) {
                if v <= 100_000_000 {
                    from_generator.push(v);
                }
            }
        }
    }
    assert_eq!(from_sieve, from_generator);

    let mut ll_exponents = Vec::new();
    for p in 2u64..=127 {
        if !is_prime_u64(p).is_prime() {
            continue;
        }
        let ll = lucas_lehmer(p).unwrap();
        let mersenne: Natural = (Natural::from(1u32) << p as usize) - 1u32;
        let direct = is_prime(&mersenne);
        assert_eq!(
            ll.status == PrimalityStatus::Prime,
            direct.is_prime(),
            "p = {p}"
        );
        if ll.status == PrimalityStatus::Prime {
            ll_exponents.push(p);
        }
    }
    assert_eq!(ll_exponents, vec![2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127]);
    println!("criterion 6 (cross-kernel consistency: sigma, sieve vs generator, Lucas-Lehmer to 127): PASS");
}

/// Criterion 7: for every odd t <= 2001 the divisor-pair enumeration
/// agrees with brute force over odd p <= 41, x <= 2^20 on the equation
/// 2^(p-1) - t = x^2.
#[test]
fn criterion_7_square_obstruction_completeness() {
    let budget = FactorBudget::default();
    let mut discrepancies = 0;
    for t in (1u64..=2001).step_by(2) {
        let m = nat((t - 1) / 2);
        let listed: Vec<u64> = square_obstruction_candidates(&m, &budget)
            .unwrap()
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        let mut brute = Vec::new();
        for p in (3u64..=41).step_by(2) {
            let pow = 1u64 << (p - 1);
            if pow < t {
                continue;
            }
            let v = pow - t;
            let x = isqrt_u64(v);
            if x * x == v && x <= 1 << 20 {
                brute.push(p);
            }
        }
        if listed != brute {
            discrepancies += 1;
            eprintln!("t = {t}: listed {listed:?}, brute {brute:?}");
        }
    }
    assert_eq!(discrepancies, 0);
    println!("criterion 7 (square-obstruction completeness over odd t <= 2001): PASS");
}

/// Every numeric field of a certificate, bumped by one, as fresh mutant
/// certificates (top-level fields plus every numeric argument of every
/// trail statement).
fn numeric_mutants(cert: &ExclusionCertificate) -> Vec<(String, ExclusionCertificate)> {
    let mut out = Vec::new();
    let bump = |n: &Natural| n + 1u32;

    let mut m = cert.clone();
    m.delta = bump(&m.delta);
    out.push(("delta".to_string(), m));

    if let Some(params) = &cert.params {
        for field in ["s", "m", "b", "l", "delta"] {
            let mut mutant = cert.clone();
            let p = mutant.params.as_mut().unwrap();
            match field {
                "s" => p.s = bump(&p.s),
                "m" => p.m = bump(&p.m),
                "b" => p.b = bump(&p.b),
                "l" => p.l = bump(&p.l),
                _ => p.delta = bump(&p.delta),
            }
            out.push((format!("params.{field}"), mutant));
        }
        let _ = params;
    }
    if let Some(l) = &cert.l_value {
        let mut m = cert.clone();
        m.l_value = Some(bump(l));
        out.push(("l_value".to_string(), m));
    }
    for (i, c) in cert.candidate_exclusions.iter().enumerate() {
        let mut m = cert.clone();
        m.candidate_exclusions[i].p += 2;
        out.push((format!("candidate[{i}].p"), m));
        for (j, _) in c.evidence.iter().enumerate() {
            let mut m = cert.clone();
            m.candidate_exclusions[i].evidence[j] =
                bump(&m.candidate_exclusions[i].evidence[j]);
            out.push((format!("candidate[{i}].evidence[{j}]"), m));
        }
    }
    // every numeric argument of every trail statement, via its rendering
    for (i, entry) in cert.check_trail.iter().enumerate() {
        let text = entry.statement.render();
        let tokens: Vec<&str> = text.split(' ').collect();
        for (t, token) in tokens.iter().enumerate().skip(1) {
            let Some((key, value)) = token.split_once('=') else {
                continue;
            };
            let first = value.split(',').next().unwrap();
            let Ok(number) = first.parse::<u128>() else {
                continue;
            };
            let mutated_value = value.replacen(first, &(number + 1).to_string(), 1);
            let mut mutated_tokens = tokens.clone();
            let rebuilt = format!("{key}={mutated_value}");
            mutated_tokens[t] = &rebuilt;
            let mutated_text = mutated_tokens.join(" ");
            let statement = CheckStatement::parse(&mutated_text)
                .unwrap_or_else(|e| panic!("mutant must parse: {mutated_text}: {e}"));
            let mut m = cert.clone();
            m.check_trail[i].statement = statement;
            out.push((format!("trail[{i}].{key}"), m));
        }
    }
    out
}

/// Criterion 8: every issued certificate re-verifies; every single
/// numeric-field mutation fails re-verification with the failing
/// statement identified.
#[test]
fn criterion_8_certificate_tamper_suite() {
    let opts = ClassifyOptions::default();
    let mut issued = Vec::new();
    for delta in [2u64, 11, 13, 15, 231, 435, 10011, 17955, 138075] {
        match classify(&nat(delta), &opts) {
            GapVerdict::Excluded(cert) => issued.push(*cert),
            other => panic!("delta {delta} must be excluded, got {other:?}"),
        }
    }
    for entry in generate_family(200, &FactorBudget::default()) {
        if let Some(cert) = entry.certificate {
            issued.push(cert);
        }
    }

    let mut verified = 0;
    let mut mutants_total = 0;
    for cert in &issued {
        let report = verify_certificate(cert);
        assert!(report.is_valid(), "delta {}: {:?}", cert.delta, report.failure);
        verified += 1;

        // round trip through the text format must stay valid
        let back = ExclusionCertificate::parse(&cert.to_text()).unwrap();
        assert!(verify_certificate(&back).is_valid());

        for (description, mutant) in numeric_mutants(cert) {
            let report = verify_certificate(&mutant);
            assert!(
                !report.is_valid(),
                "delta {}: mutation {description} still verifies",
                cert.delta
            );
            let failure = report.failure.unwrap();
            assert!(
                !failure.statement.is_empty(),
                "failure must identify a statement"
            );
            mutants_total += 1;
        }
    }
    assert!(verified >= 10);
    assert!(mutants_total > 500);
    println!(
        "criterion 8 (tamper suite: {verified} certificates re-verified, {mutants_total} mutants all rejected): PASS"
    );
}
