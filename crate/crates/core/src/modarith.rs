//! Integer arithmetic modulo `n`: inverses, CRT, primitive roots, factoring.

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = 1 << 40;

/// A residue class `value mod modulus`, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Self { value: reduce(value, modulus), modulus })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn inverse(&self) -> Result<Self> {
        let v = mod_inverse(self.value as i64, self.modulus)?;
        Ok(Self { value: v, modulus: self.modulus })
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self { value: mul_mod(self.value, other.value, self.modulus), modulus: self.modulus }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self { value: ((self.value as u128 + other.value as u128) % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 || m > MAX_MODULUS {
        return Err(Error::UnsupportedModulus(m));
    }
    Ok(())
}

/// Least non-negative representative of `a mod m`.
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

/// Extended Euclid: returns `(g, x, y)` with `a x + b y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    check_modulus(m)?;
    if m == 1 {
        return Ok(0);
    }
    let r = reduce(a, m);
    let (g, x, _) = ext_gcd(r as i128, m as i128);
    if g != 1 {
        return Err(Error::NotInvertible { value: a, modulus: m });
    }
    Ok(x.rem_euclid(m as i128) as u64)
}

/// Solves `x = a1 mod m1`, `x = a2 mod m2` for coprime moduli.
pub fn crt_combine(a1: u64, m1: u64, a2: u64, m2: u64) -> Result<u64> {
    check_modulus(m1)?;
    check_modulus(m2)?;
    if gcd(m1, m2) != 1 {
        return Err(Error::ModuliNotCoprime(m1, m2));
    }
    let m = m1 as u128 * m2 as u128;
    if m > MAX_MODULUS as u128 {
        return Err(Error::UnsupportedModulus(m.min(u64::MAX as u128) as u64));
    }
    let (a1, a2) = (a1 % m1, a2 % m2);
    let inv = mod_inverse(m1 as i64, m2)? as u128;
    let diff = (a2 as i128 - a1 as i128).rem_euclid(m2 as i128) as u128;
    let t = diff * inv % m2 as u128;
    Ok(((a1 as u128 + m1 as u128 * t) % m) as u64)
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Smallest generator of `(Z/p^r)^*` for an odd prime `p`.
pub fn primitive_root(p: u64, r: u32) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::UnsupportedModulus(p));
    }
    let pr = p.checked_pow(r).filter(|&m| m <= MAX_MODULUS).ok_or(Error::UnsupportedModulus(p))?;
    let factors = factorize(p - 1);
    let g = (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| mod_pow(g, (p - 1) / q, p) != 1))
        .ok_or(Error::UnsupportedModulus(p))?;
    // A generator mod p generates mod p^2 (hence every p^r) unless g^(p-1) = 1 mod p^2.
    if r >= 2 && mod_pow(g, p - 1, p * p) == 1 {
        return Ok((g + p) % pr);
    }
    Ok(g % pr)
}

/// `p`-adic valuation of `n`, with `v(0)` reported as `u32::MAX`.
pub fn valuation(mut n: i64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % p as i64 == 0 {
        n /= p as i64;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_small() {
        assert_eq!(mod_inverse(3, 7).unwrap(), 5);
        assert_eq!(mod_inverse(-3, 7).unwrap(), 2);
        assert!(matches!(mod_inverse(6, 9), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn crt_basic() {
        assert_eq!(crt_combine(2, 3, 3, 5).unwrap(), 8);
        assert_eq!(crt_combine(1, 4, 1, 6), Err(Error::ModuliNotCoprime(4, 6)));
    }

    #[test]
    fn primitive_roots_generate() {
        for &(p, r) in &[(3u64, 1u32), (3, 4), (5, 3), (7, 2), (29, 2), (101, 1), (40487, 2)] {
            let m = p.pow(r);
            let g = primitive_root(p, r).unwrap();
            let phi = euler_phi(m);
            for (q, _) in factorize(phi) {
                assert_ne!(mod_pow(g, phi / q, m), 1, "p={p} r={r} g={g}");
            }
        }
        assert!(primitive_root(2, 3).is_err());
    }

    #[test]
    fn phi_and_factor() {
        assert_eq!(euler_phi(243), 162);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(valuation(250, 5), 3);
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(a in -10_000i64..10_000, m in 2u64..5000) {
            match mod_inverse(a, m) {
                Ok(x) => prop_assert_eq!(mul_mod(reduce(a, m), x, m), 1),
                Err(_) => prop_assert!(gcd(reduce(a, m), m) != 1),
            }
        }

        #[test]
        fn crt_roundtrip(a1 in 0u64..1000, a2 in 0u64..1000, m1 in 1u64..1000, m2 in 1u64..1000) {
            prop_assume!(gcd(m1, m2) == 1);
            let x = crt_combine(a1, m1, a2, m2).unwrap();
            prop_assert!(x < m1 * m2);
            prop_assert_eq!(x % m1, a1 % m1);
            prop_assert_eq!(x % m2, a2 % m2);
        }
    }
}
