//! Cross-module consistency: the sieve, the multiplicative sigma, the
//! Lucas-Lehmer generator, and the classifier must all agree with each
//! other at desk scale.

use gapcert_core::arith::nat;
use gapcert_core::engine::{classify, ClassifyOptions};
use gapcert_core::perfect::{even_perfect, mod12_class, sigma, Mod12Compatibility};
use gapcert_core::primality::{is_prime_u64, lucas_lehmer, PrimalityStatus};
use gapcert_core::sieve::{
    build_gap_table, divisor_sum_segment, perfects_upto, SieveBudget,
};

#[test]
fn sieve_sigma_matches_factorization_on_random_values() {
    // deterministic pseudo-random sample below 1e6
    let mut x = 0x9e3779b97f4a7c15u64;
    for _ in 0..10_000 {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let n = x % 1_000_000 + 1;
        let from_sieve = divisor_sum_segment(n, n + 1)[0];
        assert_eq!(nat(from_sieve), sigma(&nat(n)).unwrap(), "n = {n}");
    }
}

#[test]
fn sieve_agrees_with_lucas_lehmer_generator_to_1e6() {
    let budget = SieveBudget::default();
    let from_sieve = perfects_upto(1_000_000, &budget).unwrap();
    let mut from_generator = Vec::new();
    for p in 2u64..=20 {
        if !is_prime_u64(p).is_prime() {
            continue;
        }
        if lucas_lehmer(p).unwrap().status == PrimalityStatus::Prime {
            let n = even_perfect(p).unwrap();
            if n <= nat(1_000_000) {
                from_generator.push(gapcert_core::arith::to_u64(&n).unwrap());
            }
        }
    }
    assert_eq!(from_sieve, from_generator);
}

#[test]
fn sieve_perfects_have_compatible_residues() {
    let budget = SieveBudget::default();
    for n in perfects_upto(1_000_000, &budget).unwrap() {
        assert_ne!(
            mod12_class(&nat(n)).compatibility,
            Mod12Compatibility::IncompatibleWithPerfect,
            "n = {n}"
        );
    }
}

#[test]
fn excluded_deltas_never_appear_as_oracle_gaps() {
    let budget = SieveBudget::default();
    let perfects = perfects_upto(10_000_000, &budget).unwrap();
    let gaps: std::collections::BTreeSet<u64> =
        build_gap_table(&perfects).iter().map(|r| r.delta).collect();

    let opts = ClassifyOptions::default();
    // every observed gap must escape exclusion
    for &gap in &gaps {
        assert!(
            !classify(&nat(gap), &opts).is_excluded(),
            "oracle gap {gap} was excluded"
        );
    }
    // and every exclusion below 2000 must avoid the observed gaps
    for delta in 1u64..=2000 {
        if classify(&nat(delta), &opts).is_excluded() {
            assert!(!gaps.contains(&delta), "excluded delta {delta} is an oracle gap");
        }
    }
}

#[test]
fn even_gaps_land_on_the_derived_residues() {
    // differences of even perfects are 0, 2, or 10 mod 12, so the mod-12
    // exclusion can never contradict an observed pair
    let budget = SieveBudget::default();
    let perfects = perfects_upto(100_000_000, &budget).unwrap();
    for row in build_gap_table(&perfects) {
        assert!(
            matches!(row.delta_mod_12, 0 | 2 | 10),
            "gap {} has residue {}",
            row.delta,
            row.delta_mod_12
        );
    }
}
