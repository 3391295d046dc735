//! Hecke eigenvalues of level-one cusp forms with one-dimensional weight spaces.

use crate::error::{Error, Result};

pub const MAX_DELTA_TERMS: usize = 1_000_000;
/// Products with Eisenstein series are dense convolutions, so they get a smaller cap.
pub const MAX_PRODUCT_TERMS: usize = 20_000;

#[derive(Debug, Clone)]
pub struct CuspForm {
    weight: u32,
    raw: Vec<i128>,
    lambda: Vec<f64>,
}

impl CuspForm {
    /// Ramanujan's Delta with `n_max` coefficients.
    pub fn delta(n_max: usize) -> Result<Self> {
        Self::new(12, n_max)
    }

    /// The normalized eigenform of weight 12, 16, 18, 20, 22 or 26.
    pub fn new(weight: u32, n_max: usize) -> Result<Self> {
        let raw = match weight {
            12 => delta_coefficients(n_max)?,
            16 | 18 | 20 | 22 | 26 => eisenstein_product(weight, n_max)?,
            _ => return Err(Error::PreconditionViolated(format!("no one-dimensional cusp space in weight {weight}"))),
        };
        let half = (weight as f64 - 1.0) / 2.0;
        let lambda = raw
            .iter()
            .enumerate()
            .map(|(n, &a)| if n == 0 { 0.0 } else { a as f64 / (n as f64).powf(half) })
            .collect();
        Ok(Self { weight, raw, lambda })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Largest `n` with a cached coefficient.
    pub fn len(&self) -> usize {
        self.raw.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn raw(&self, n: usize) -> i128 {
        self.raw[n]
    }

    #[inline]
    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    /// Normalized eigenvalues indexed by `n`, entry 0 unused.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambda
    }

    pub fn ensure(&self, n: usize) -> Result<()> {
        if n > self.len() {
            return Err(Error::SizeLimit(format!("coefficient {n} requested, cache holds {}", self.len())));
        }
        Ok(())
    }
}

/// `tau(n)` for `n <= n_max`, indexed by `n` (entry 0 is zero).
///
/// Uses `Delta = q (eta^3)^8` with Jacobi's `eta^3 = sum (-1)^k (2k+1) q^{k(k+1)/2}`.
pub fn delta_coefficients(n_max: usize) -> Result<Vec<i128>> {
    if n_max == 0 || n_max > MAX_DELTA_TERMS {
        return Err(Error::SizeLimit(format!("delta_coefficients({n_max})")));
    }
    let len = n_max;
    let mut sparse = Vec::new();
    let mut k = 0usize;
    while k * (k + 1) / 2 < len {
        let c = (2 * k + 1) as i128 * if k % 2 == 0 { 1 } else { -1 };
        sparse.push((k * (k + 1) / 2, c));
        k += 1;
    }
    let sparse_l1: i128 = sparse.iter().map(|&(_, c)| c.abs()).sum();
    let mut dense = vec![0i128; len];
    for &(e, c) in &sparse {
        dense[e] = c;
    }
    for _ in 0..7 {
        let max = dense.iter().map(|c| c.abs()).max().unwrap_or(0);
        if max.checked_mul(sparse_l1).is_none() {
            return Err(Error::SizeLimit(format!("tau overflow at n_max = {n_max}")));
        }
        let mut out = vec![0i128; len];
        for &(e, c) in &sparse {
            for (o, &d) in out[e..].iter_mut().zip(dense.iter()) {
                *o += c * d;
            }
        }
        dense = out;
    }
    let mut tau = vec![0i128; n_max + 1];
    tau[1..].copy_from_slice(&dense[..n_max]);
    Ok(tau)
}

fn divisor_power_sums(n_max: usize, power: u32) -> Result<Vec<i128>> {
    let mut s = vec![0i128; n_max + 1];
    for d in 1..=n_max {
        let dp = (d as i128).checked_pow(power).ok_or_else(|| Error::SizeLimit("divisor power".into()))?;
        for m in (d..=n_max).step_by(d) {
            s[m] += dp;
        }
    }
    Ok(s)
}

fn eisenstein(weight: u32, n_max: usize) -> Result<Vec<i128>> {
    let (c, power) = match weight {
        4 => (240i128, 3),
        6 => (-504, 5),
        _ => unreachable!(),
    };
    let mut e = divisor_power_sums(n_max, power)?;
    for v in e.iter_mut() {
        *v *= c;
    }
    e[0] = 1;
    Ok(e)
}

fn convolve(a: &[i128], b: &[i128]) -> Result<Vec<i128>> {
    let n = a.len().min(b.len());
    let mut out = vec![0i128; n];
    for i in 0..n {
        if a[i] == 0 {
            continue;
        }
        for j in 0..n - i {
            let t = a[i].checked_mul(b[j]).ok_or_else(|| Error::SizeLimit("form coefficient overflow".into()))?;
            out[i + j] = out[i + j].checked_add(t).ok_or_else(|| Error::SizeLimit("form coefficient overflow".into()))?;
        }
    }
    Ok(out)
}

fn eisenstein_product(weight: u32, n_max: usize) -> Result<Vec<i128>> {
    if n_max > MAX_PRODUCT_TERMS {
        return Err(Error::SizeLimit(format!("weight {weight} form limited to {MAX_PRODUCT_TERMS} terms")));
    }
    let e4 = eisenstein(4, n_max)?;
    let e6 = eisenstein(6, n_max)?;
    let factors: &[&Vec<i128>] = match weight {
        16 => &[&e4],
        18 => &[&e6],
        20 => &[&e4, &e4],
        22 => &[&e4, &e6],
        26 => &[&e4, &e4, &e6],
        _ => unreachable!(),
    };
    let mut out = delta_coefficients(n_max)?;
    for f in factors {
        out = convolve(&out, f)?;
    }
    Ok(out)
}

/// Normalized eigenvalues `lambda(1..=n)`, indexed by `n`.
pub fn normalized_coefficients(form: &CuspForm, n: usize) -> Result<&[f64]> {
    form.ensure(n)?;
    Ok(&form.lambdas()[..=n])
}

/// `sum_{n <= x} lambda(n)^2`.
pub fn rankin_selberg_sum(form: &CuspForm, x: f64) -> Result<f64> {
    if x < 1.0 {
        return Err(Error::PreconditionViolated("x >= 1 required".into()));
    }
    let n = x.floor() as usize;
    form.ensure(n)?;
    Ok(form.lambdas()[1..=n].iter().map(|l| l * l).sum())
}

/// Divisor counts `d(0..=n_max)`, with `d(0) = 0`.
pub fn divisor_counts(n_max: usize) -> Vec<u32> {
    let mut d = vec![0u32; n_max + 1];
    for i in 1..=n_max {
        for m in (i..=n_max).step_by(i) {
            d[m] += 1;
        }
    }
    d
}
