//! Integer kernel: square roots, perfect squares, gcd, modular exponentiation.
//!
//! Everything here is a pure function of its inputs. Values that fit a
//! machine word take a `u64` fast path; the general path works on
//! [`Natural`].

use crate::{Error, Natural, Result};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Shorthand for building a [`Natural`] from a machine word.
pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

/// Downcast when the value fits a machine word.
pub fn to_u64(n: &Natural) -> Option<u64> {
    n.to_u64()
}

/// Floor square root on machine words.
pub fn isqrt_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    // f64 seed can be off by one in either direction near 2^64
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Floor square root: the unique r with r^2 <= n < (r+1)^2.
pub fn isqrt(n: &Natural) -> Natural {
    if let Some(v) = n.to_u64() {
        return nat(isqrt_u64(v));
    }
    // Newton iteration seeded strictly above the root; the sequence is
    // decreasing until it crosses floor(sqrt(n)).
    let mut x: Natural = Natural::one() << (n.bits().div_ceil(2) as usize);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Exact square detection; returns the root when n is a perfect square.
pub fn is_square(n: &Natural) -> Option<Natural> {
    // squares mod 16 land in {0, 1, 4, 9}
    if let Some(v) = n.to_u64() {
        if !matches!(v % 16, 0 | 1 | 4 | 9) {
            return None;
        }
        let r = isqrt_u64(v);
        return (r * r == v).then(|| nat(r));
    }
    let low = (n % 16u32).to_u8().unwrap();
    if !matches!(low, 0 | 1 | 4 | 9) {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Greatest common divisor, with gcd(0, b) = b.
pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// base^exp mod modulus. Rejects modulus = 0.
pub fn mod_pow(base: &Natural, exp: &Natural, modulus: &Natural) -> Result<Natural> {
    if modulus.is_zero() {
        return Err(Error::ZeroModulus);
    }
    Ok(base.modpow(exp, modulus))
}

/// (a * b) mod m without overflow.
pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// base^exp mod m on machine words.
pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&nat(0)), nat(0));
        assert_eq!(isqrt(&nat(17)), nat(4));
        // 379^2 = 143641 = 8 * 17955 + 1
        assert_eq!(nat(379) * nat(379), nat(143641));
        assert_eq!(isqrt(&nat(143641)), nat(379));
    }

    #[test]
    fn isqrt_exhaustive_to_1e6() {
        for n in 0u64..=1_000_000 {
            let r = isqrt_u64(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n = {n}, r = {r}");
        }
    }

    #[test]
    fn isqrt_biguint_agrees_with_u64_path() {
        // force the Newton path by offsetting a large square
        let big = Natural::from(u128::MAX) * Natural::from(u128::MAX);
        let r = isqrt(&big);
        assert!(&r * &r <= big);
        let r1 = &r + 1u32;
        assert!(&r1 * &r1 > big);

        for v in [0u64, 1, 2, 3, 15, 16, 17, u64::MAX] {
            assert_eq!(isqrt(&nat(v)), nat(isqrt_u64(v)));
        }
    }

    #[test]
    fn is_square_examples() {
        // 2^6 - 15 = 49
        assert_eq!(is_square(&nat(49)), Some(nat(7)));
        assert_eq!(is_square(&nat(15)), None);
        assert_eq!(is_square(&nat(1)), Some(nat(1)));
        assert_eq!(is_square(&nat(0)), Some(nat(0)));
    }

    #[test]
    fn is_square_agrees_with_scan_to_1e5() {
        for n in 0u64..=100_000 {
            let mut expected = None;
            let mut r = 0u64;
            while r * r <= n {
                if r * r == n {
                    expected = Some(r);
                    break;
                }
                r += 1;
            }
            assert_eq!(is_square(&nat(n)), expected.map(nat), "n = {n}");
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&nat(288), &nat(91)), nat(1));
        assert_eq!(gcd(&nat(288), &nat(187)), nat(1));
        assert_eq!(gcd(&nat(0), &nat(5)), nat(5));
    }

    #[test]
    fn gcd_distributes_over_scaling() {
        let triples = [(4u64, 6, 3), (12, 18, 7), (35, 49, 11), (100, 75, 13)];
        for (a, b, k) in triples {
            assert_eq!(gcd(&nat(k * a), &nat(k * b)), nat(k) * gcd(&nat(a), &nat(b)));
            assert_eq!(gcd(&nat(a), &nat(b)), gcd(&nat(b), &nat(a)));
        }
        // associativity under fold
        let g1 = gcd(&gcd(&nat(24), &nat(36)), &nat(60));
        let g2 = gcd(&nat(24), &gcd(&nat(36), &nat(60)));
        assert_eq!(g1, g2);
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(&nat(2), &nat(4), &nat(3)).unwrap(), nat(1));
        assert_eq!(mod_pow(&nat(2), &nat(5), &nat(3)).unwrap(), nat(2));
        assert_eq!(mod_pow(&nat(2), &nat(6), &nat(8)).unwrap(), nat(0));
        assert_eq!(mod_pow(&nat(7), &nat(0), &nat(5)).unwrap(), nat(1));
        assert_eq!(mod_pow(&nat(7), &nat(0), &nat(1)).unwrap(), nat(0));
        assert_eq!(mod_pow(&nat(2), &nat(3), &nat(0)), Err(Error::ZeroModulus));
    }

    #[test]
    fn mod_pow_u64_matches_biguint() {
        for (b, e, m) in [(2u64, 64, 1_000_003), (3, 1000, 97), (12345, 67890, 99991)] {
            assert_eq!(
                nat(mod_pow_u64(b, e, m)),
                mod_pow(&nat(b), &nat(e), &nat(m)).unwrap()
            );
        }
    }
}
