//! Dense polynomials over `F_p`.

use crate::error::{Error, Result};
use crate::modarith::{mod_inverse, mod_pow, reduce};

/// Coefficients low to high, reduced mod `p`, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<u64>,
    pub p: u64,
}

impl Poly {
    pub fn new(coeffs: &[i64], p: u64) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| reduce(x, p)).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { coeffs: c, p }
    }

    fn from_u64(mut c: Vec<u64>, p: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { coeffs: c, p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p as u128;
        self.coeffs.iter().rev().fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p) as u64
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::from_u64(vec![], self.p);
        }
        let p = self.p as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        Poly::from_u64(out.into_iter().map(|x| x as u64).collect(), self.p)
    }

    pub fn derivative(&self) -> Poly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| (a as u128 * i as u128 % self.p as u128) as u64).collect();
        Poly::from_u64(c, self.p)
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = mod_inverse(lead as i64, self.p).expect("prime modulus");
                Poly::from_u64(self.coeffs.iter().map(|&c| (c as u128 * inv as u128 % self.p as u128) as u64).collect(), self.p)
            }
        }
    }

    /// Quotient and remainder.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = mod_inverse(d.coeffs[dd] as i64, p).expect("prime modulus");
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (Poly::from_u64(vec![], p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = (r[i + dd] as u128 * inv as u128 % p as u128) as u64;
            q[i] = c;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    let sub = (c as u128 * dc as u128 % p as u128) as u64;
                    r[i + j] = (r[i + j] + p - sub) % p;
                }
            }
        }
        (Poly::from_u64(q, p), Poly::from_u64(r, p))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree factorisation: `(factor, multiplicity)` with squarefree coprime factors.
    pub fn squarefree_factors(&self) -> Result<Vec<(Poly, usize)>> {
        let deg = self.degree().unwrap_or(0);
        if deg as u64 >= self.p {
            return Err(Error::PreconditionViolated(format!("degree {deg} >= p = {}", self.p)));
        }
        let mut out = Vec::new();
        if deg == 0 {
            return Ok(out);
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = f.gcd(&fp);
        let mut b = f.divrem(&a).0;
        let mut c = fp.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            c = d.divrem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Poly::from_u64(c, self.p)
    }

    /// Number of distinct roots in the algebraic closure.
    pub fn distinct_roots(&self) -> Result<usize> {
        Ok(self.squarefree_factors()?.iter().map(|(f, _)| f.degree().unwrap_or(0)).sum())
    }

    /// Roots in `F_p` by exhaustive evaluation.
    pub fn roots_in_fp(&self) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }
}

/// `x^e` in `F_p`, for tests.
pub fn pow_fp(x: u64, e: u64, p: u64) -> u64 {
    mod_pow(x, e, p)
}
