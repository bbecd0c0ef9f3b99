//! Integer number theory at desk scale: factoring, squarefree parts,
//! Legendre symbols and modular square roots.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_prime::FactorizationConfig;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default bit-size limit for integers handed to the factoring routine.
pub const DEFAULT_FACTOR_BITS: u64 = 192;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in increasing order.
///
/// Trial division to 10^6 is followed by Pollard rho. Integers wider than
/// `max_bits`, or with a cofactor the routine could not split, are refused.
pub fn factor(n: &BigInt, max_bits: u64) -> Result<Vec<(BigInt, u32)>> {
    assert!(!n.is_zero(), "factor(0)");
    let mut m = n.magnitude().clone();
    if m.bits() > max_bits {
        return Err(Error::FactorizationTooLarge(n.to_string()));
    }
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if let Some(small) = m.to_u128() {
        for (q, e) in num_prime::nt_funcs::factorize128(small) {
            out.push((BigInt::from(q), e as u32));
        }
        return Ok(out);
    }
    let mut p = 2u64;
    while p <= TRIAL_DIVISION_LIMIT {
        let bp = BigUint::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((BigInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > BigUint::one() {
        let mut config = FactorizationConfig::default();
        config.rho_trials = 64;
        let (found, rest) = num_prime::nt_funcs::factors(m, Some(config));
        if rest.map_or(false, |r| !r.is_empty()) {
            return Err(Error::FactorizationTooLarge(n.to_string()));
        }
        for (q, e) in found {
            out.push((BigInt::from_biguint(Sign::Plus, q), e as u32));
        }
    }
    out.sort();
    Ok(out)
}

/// Writes `n = s * r^2` with `s` squarefree (sign kept on `s`).
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Ok((BigInt::zero(), BigInt::one()));
    }
    let mut s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut r = BigInt::one();
    for (p, e) in factor(n, DEFAULT_FACTOR_BITS)? {
        if e % 2 == 1 {
            s *= &p;
        }
        r *= num_traits::pow(p, (e / 2) as usize);
    }
    Ok((s, r))
}

/// Writes a nonzero rational as `s * q^2` with `s` a squarefree integer.
pub fn rational_squarefree(x: &BigRational) -> Result<(BigInt, BigRational)> {
    // p/q = p*q / q^2
    let pq = x.numer() * x.denom();
    let (s, r) = squarefree_decompose(&pq)?;
    Ok((s, BigRational::new(r, x.denom().clone())))
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// p-adic valuation and the unit part.
pub fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        v += 1;
    }
    (v, m)
}

/// Legendre symbol `(a | p)` for an odd prime `p`, returning -1, 0 or 1.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli–Shanks); smallest representative.
pub fn sqrt_mod_prime(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if p == &BigInt::from(2) {
        return Some(a);
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigInt::one();
    let pm1: BigInt = p - 1u32;
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while legendre(&z, p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0u32;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&(&one << (m - i - 1) as usize), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    let other = p - &r;
    Some(if other < r { other } else { r })
}

/// Square root of `a` modulo a squarefree `m` given its prime factors, by CRT.
pub fn sqrt_mod_squarefree(a: &BigInt, primes: &[BigInt]) -> Option<BigInt> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for p in primes {
        let r = if p == &BigInt::from(2) { a.mod_floor(p) } else { sqrt_mod_prime(a, p)? };
        // combine x mod modulus with r mod p
        let g = modulus.extended_gcd(p);
        let diff = (&r - &x).mod_floor(p);
        let k = (diff * g.x).mod_floor(p);
        x += &modulus * k;
        modulus *= p;
        x = x.mod_floor(&modulus);
    }
    Some(x)
}

/// Converts a small BigInt to i64 for reporting.
pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn factors_small_and_large() {
        assert_eq!(factor(&bi(360), 64).unwrap(), vec![(bi(2), 3), (bi(3), 2), (bi(5), 1)]);
        let big = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        assert_eq!(
            factor(&big, 128).unwrap(),
            vec![(bi(1_000_003), 1), (bi(998_244_353), 1)]
        );
        assert!(matches!(factor(&(BigInt::one() << 300usize), 128), Err(Error::FactorizationTooLarge(_))));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(&bi(-72)).unwrap(), (bi(-2), bi(6)));
        let (s, q) = rational_squarefree(&BigRational::new(bi(3), bi(8))).unwrap();
        assert_eq!(s, bi(6));
        assert_eq!(q, BigRational::new(bi(1), bi(4)));
    }

    #[test]
    fn tonelli_shanks_matches_brute_force() {
        for p in [3i64, 5, 7, 13, 17, 41, 97, 113] {
            for a in 0..p {
                let brute = (0..p).find(|x| (x * x) % p == a);
                let got = sqrt_mod_prime(&bi(a), &bi(p));
                assert_eq!(got.is_some(), brute.is_some(), "a={a} p={p}");
                if let Some(r) = got {
                    assert_eq!((&r * &r) % bi(p), bi(a));
                }
            }
        }
    }

    #[test]
    fn crt_square_root() {
        let primes = [bi(3), bi(5), bi(7)];
        let r = sqrt_mod_squarefree(&bi(4), &primes).unwrap();
        assert_eq!((&r * &r) % bi(105), bi(4));
    }
}
