//! Factorization: trial division then Pollard rho with Brent cycle
//! detection, all under a deterministic iteration budget. Running out of
//! budget is signalled through the `complete` flag and the unresolved
//! cofactor, never by an error.

use crate::arith::{gcd_u64, mulmod_u64, nat, to_u64};
use crate::primality::is_prime;
use crate::Natural;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Multiset of prime factors plus whatever resisted the budget.
///
/// Invariant: `value() == product of p^e times cofactor`, primes strictly
/// increasing, every listed prime passes `is_prime`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Natural, u32)>,
    pub cofactor: Natural,
    pub complete: bool,
}

impl Factorization {
    /// Reconstruct the original input.
    pub fn value(&self) -> Natural {
        let mut acc = self.cofactor.clone();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    pub fn exponent_of(&self, prime: &Natural) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| p == prime)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// All divisors, ascending. Only meaningful for complete factorizations.
    pub fn divisors(&self) -> Vec<Natural> {
        debug_assert!(self.complete);
        let mut out = vec![Natural::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            let mut power = Natural::one();
            for _ in 0..=*e {
                for d in &out {
                    next.push(d * &power);
                }
                power *= p;
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Effort bound for [`factorize`]. Identical budgets give identical
/// results; the rho parameters are fixed, not randomized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial-divide by every prime candidate up to this limit.
    pub trial_limit: u64,
    /// Total Brent iterations across all rho attempts.
    pub rho_iterations: u64,
    /// Distinct polynomial offsets c to try before giving up.
    pub rho_attempts: u32,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: 1_000_000,
            rho_iterations: 4_000_000,
            rho_attempts: 8,
        }
    }
}

pub fn factorize_default(n: &Natural) -> Factorization {
    factorize(n, &FactorBudget::default())
}

/// Factor n >= 1. For n = 0 the result is the unresolved cofactor 0.
pub fn factorize(n: &Natural, budget: &FactorBudget) -> Factorization {
    if n.is_zero() {
        return Factorization {
            factors: Vec::new(),
            cofactor: Natural::zero(),
            complete: false,
        };
    }
    if n.is_one() {
        return Factorization {
            factors: Vec::new(),
            cofactor: Natural::one(),
            complete: true,
        };
    }

    let mut found: Vec<Natural> = Vec::new();
    let mut remaining = n.clone();
    let mut iterations_left = budget.rho_iterations;

    // small factors first
    trial_divide(&mut remaining, budget.trial_limit, &mut found);

    let mut complete = true;
    if !remaining.is_one() {
        let mut stack = vec![remaining.clone()];
        remaining = Natural::one();
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m).is_prime() {
                found.push(m);
                continue;
            }
            match split(&m, budget, &mut iterations_left) {
                Some(d) => {
                    stack.push(&m / &d);
                    stack.push(d);
                }
                None => {
                    // budget exhausted on this composite piece
                    complete = false;
                    remaining *= &m;
                }
            }
        }
    }

    found.sort();
    let mut factors: Vec<(Natural, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Factorization {
        factors,
        cofactor: remaining,
        complete,
    }
}

fn trial_divide(n: &mut Natural, limit: u64, out: &mut Vec<Natural>) {
    for d in [2u64, 3, 5] {
        if d > limit {
            return;
        }
        while (&*n % d).is_zero() {
            *n /= d;
            out.push(nat(d));
        }
    }
    // 6k +/- 1 wheel
    let mut d = 7u64;
    let mut step = 4u64; // alternates 4, 2 starting from 7
    while d <= limit {
        if let Some(v) = to_u64(n) {
            // switch to word arithmetic for the rest of the wheel
            trial_divide_u64(v, d, limit, out, n);
            return;
        }
        while (&*n % d).is_zero() {
            *n /= d;
            out.push(nat(d));
        }
        d += step;
        step = 6 - step;
    }
}

fn trial_divide_u64(mut v: u64, mut d: u64, limit: u64, out: &mut Vec<Natural>, n: &mut Natural) {
    let mut step = if d % 6 == 5 { 2 } else { 4 };
    while d <= limit && (d as u128) * (d as u128) <= v as u128 {
        while v.is_multiple_of(d) {
            v /= d;
            out.push(nat(d));
        }
        d += step;
        step = 6 - step;
    }
    if v > 1 && (d as u128) * (d as u128) > v as u128 {
        // the wheel passed sqrt(v), so the remainder is prime
        out.push(nat(v));
        v = 1;
    }
    *n = nat(v);
}

/// Find one nontrivial divisor of an odd composite m with no factors below
/// the trial limit. Deterministic: c walks 1, 2, 3, ...
fn split(m: &Natural, budget: &FactorBudget, iterations_left: &mut u64) -> Option<Natural> {
    if let Some(v) = to_u64(m) {
        return split_u64(v, budget, iterations_left).map(nat);
    }
    for c in 1..=budget.rho_attempts as u64 {
        if *iterations_left == 0 {
            return None;
        }
        if let Some(d) = rho_brent_big(m, c, iterations_left) {
            return Some(d);
        }
    }
    None
}

fn split_u64(m: u64, budget: &FactorBudget, iterations_left: &mut u64) -> Option<u64> {
    for c in 1..=budget.rho_attempts as u64 {
        if *iterations_left == 0 {
            return None;
        }
        if let Some(d) = rho_brent_u64(m, c, iterations_left) {
            return Some(d);
        }
    }
    None
}

/// Brent's variant of Pollard rho on machine words.
fn rho_brent_u64(n: u64, c: u64, iterations_left: &mut u64) -> Option<u64> {
    let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let (mut x, mut ys) = (y, y);
    let m = 128u64;
    let mut g = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let batch = m.min(r - k);
            if *iterations_left < batch {
                *iterations_left = 0;
                return None;
            }
            *iterations_left -= batch;
            for _ in 0..batch {
                y = f(y);
                q = mulmod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += batch;
        }
        r <<= 1;
    }
    if g == n {
        // backtrack one step at a time
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_brent_big(n: &Natural, c: u64, iterations_left: &mut u64) -> Option<Natural> {
    let f = |x: &Natural| (x * x + c) % n;
    let mut y = nat(2);
    let mut r = 1u64;
    let mut q = Natural::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128u64;
    let mut g = Natural::one();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            let batch = m.min(r - k);
            if *iterations_left < batch {
                *iterations_left = 0;
                return None;
            }
            *iterations_left -= batch;
            for _ in 0..batch {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r <<= 1;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_factors(n: u64, expected: &[(u64, u32)]) {
        let f = factorize_default(&nat(n));
        assert!(f.complete, "n = {n}");
        assert!(f.cofactor.is_one());
        let got: Vec<(u64, u32)> = f
            .factors
            .iter()
            .map(|(p, e)| (to_u64(p).unwrap(), *e))
            .collect();
        assert_eq!(got, expected, "n = {n}");
        assert_eq!(f.value(), nat(n));
    }

    #[test]
    fn spec_examples() {
        assert_factors(15, &[(3, 1), (5, 1)]);
        assert_factors(7693, &[(7, 2), (157, 1)]);
        let one = factorize_default(&Natural::one());
        assert!(one.complete && one.factors.is_empty() && one.cofactor.is_one());
    }

    #[test]
    fn reconstructs_exactly_to_1e5() {
        for n in 1u64..=100_000 {
            let f = factorize_default(&nat(n));
            assert!(f.complete, "n = {n}");
            assert_eq!(f.value(), nat(n), "n = {n}");
            for (p, _) in &f.factors {
                assert!(is_prime(p).is_prime(), "n = {n}, p = {p}");
            }
            for w in f.factors.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
        }
    }

    #[test]
    fn rho_path_on_semiprimes() {
        // both factors above the wheel reach of a tiny trial limit
        let small_trial = FactorBudget {
            trial_limit: 100,
            ..FactorBudget::default()
        };
        let n = nat(1_000_003) * nat(1_000_033);
        let f = factorize(&n, &small_trial);
        assert!(f.complete);
        assert_eq!(
            f.factors,
            vec![(nat(1_000_003), 1), (nat(1_000_033), 1)]
        );
    }

    #[test]
    fn large_semiprime_beyond_u64() {
        // ~81-bit composite: rho on the big path must peel off 1000003
        let m61: Natural = (Natural::one() << 61usize) - 1u32;
        let n = nat(1_000_003) * &m61;
        let f = factorize_default(&n);
        assert!(f.complete);
        assert_eq!(f.factors, vec![(nat(1_000_003), 1), (m61, 1)]);
    }

    #[test]
    fn budget_exhaustion_reports_cofactor() {
        let starved = FactorBudget {
            trial_limit: 100,
            rho_iterations: 8,
            rho_attempts: 1,
        };
        let n = nat(1_000_003) * nat(1_000_033);
        let f = factorize(&n, &starved);
        assert!(!f.complete);
        assert_eq!(f.cofactor, n);
        assert_eq!(f.value(), n);
        // deterministic under the same budget
        assert_eq!(f, factorize(&n, &starved));
    }

    #[test]
    fn divisor_enumeration() {
        let f = factorize_default(&nat(60));
        let ds: Vec<u64> = f.divisors().iter().map(|d| to_u64(d).unwrap()).collect();
        assert_eq!(ds, vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
    }
}
