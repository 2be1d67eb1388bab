//! Small integer helpers: primality, factorization, gcds over machine and big integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

/// Deterministic primality test for u64 (Miller-Rabin with a fixed witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    // extended Euclid
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    let mut t = t0 % m as i128;
    if t < 0 {
        t += m as i128;
    }
    Some(t as u64)
}

/// Trial-division factorization of a positive big integer.
/// Desk-scale bound: gives up past `LIMIT` and reports a capability error
/// instead of returning a partial answer.
pub fn factor_biguint(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    const LIMIT: u64 = 10_000_000;
    if n.is_zero() {
        return Err(AlgebraError::ZeroElement("factorization of 0".into()));
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u64;
    while !rest.is_one() {
        if d > LIMIT {
            // whatever remains is prime or beyond desk scale
            if let Some(small) = rest.to_u64() {
                if is_prime_u64(small) {
                    out.push((BigUint::from(small), 1));
                    return Ok(out);
                }
            } else if is_probable_prime_big(&rest) {
                out.push((rest.clone(), 1));
                return Ok(out);
            }
            return Err(AlgebraError::capability(format!(
                "integer factorization of {} exceeds the desk-scale bound",
                rest
            )));
        }
        let bd = BigUint::from(d);
        if (&rest % &bd).is_zero() {
            let mut e = 0u32;
            while (&rest % &bd).is_zero() {
                rest /= &bd;
                e += 1;
            }
            out.push((bd, e));
        }
        // after 2 and 3, step over even numbers
        d = match d {
            2 => 3,
            _ => d + 2,
        };
        // shortcut: if rest < d^2 then rest is prime
        if !rest.is_one() {
            let bd2 = BigUint::from(d) * BigUint::from(d);
            if rest < bd2 {
                out.push((rest.clone(), 1));
                rest = BigUint::one();
            }
        }
    }
    Ok(out)
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    // Miller-Rabin over BigUint with small witnesses
    let one = BigUint::one();
    let two = &one + &one;
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= &two;
        s += 1;
    }
    'w: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let ab = BigUint::from(a);
        if &ab >= n {
            continue;
        }
        let mut x = ab.modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'w;
            }
        }
        return false;
    }
    true
}

/// gcd of the absolute values of a slice of BigInt (0 if the slice is empty or all zero).
pub fn gcd_all(values: &[BigInt]) -> BigUint {
    let mut g = BigUint::zero();
    for v in values {
        g = g.gcd(&v.abs().to_biguint().expect("abs is nonnegative"));
    }
    g
}

/// Remove from `n` every prime factor it shares with `s` (repeatedly divide by gcd).
/// Returns the s-free part of n. `strip(12, 2) = 3`, `strip(12, 6) = 1`.
pub fn strip_shared_factors(n: &BigUint, s: &BigUint) -> BigUint {
    if n.is_zero() || s.is_zero() {
        return n.clone();
    }
    let mut rest = n.clone();
    loop {
        let g = rest.gcd(s);
        if g.is_one() {
            return rest;
        }
        while (&rest % &g).is_zero() {
            rest /= &g;
        }
    }
}

/// True iff every prime factor of `a` divides `s` (i.e. a is a unit in Z[1/s]); a must be nonzero.
pub fn divides_power(a: &BigUint, s: &BigUint) -> bool {
    strip_shared_factors(a, s).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 7, 11, 13, 101, 2147483647];
        let composites = [0u64, 1, 4, 9, 15, 91, 561, 1000000000000000000];
        for p in primes {
            assert!(is_prime_u64(p), "{p}");
        }
        for c in composites {
            assert!(!is_prime_u64(c), "{c}");
        }
    }

    #[test]
    fn factorization_roundtrip() {
        for n in [2u64, 12, 360, 97, 1024, 9699690] {
            let f = factor_biguint(&BigUint::from(n)).unwrap();
            let mut prod = BigUint::one();
            for (p, e) in &f {
                assert!(is_prime_u64(p.to_u64().unwrap()));
                prod *= p.pow(*e);
            }
            assert_eq!(prod, BigUint::from(n));
        }
    }

    #[test]
    fn stripping() {
        let n = BigUint::from(12u32);
        assert_eq!(strip_shared_factors(&n, &BigUint::from(2u32)), BigUint::from(3u32));
        assert_eq!(strip_shared_factors(&n, &BigUint::from(6u32)), BigUint::one());
        assert!(divides_power(&BigUint::from(8u32), &BigUint::from(2u32)));
        assert!(!divides_power(&BigUint::from(12u32), &BigUint::from(2u32)));
    }
}
