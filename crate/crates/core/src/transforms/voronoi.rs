//! Holomorphic Voronoi summation for level-one forms.

use std::f64::consts::{PI, TAU};
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::CuspForm;
use crate::modarith::{gcd, mod_inverse};
use crate::phase::e_rational;
use crate::transforms::bessel::bessel_j;
use crate::transforms::quadrature::composite_gk21;
use crate::transforms::report::VerificationReport;
use crate::transforms::window::SmoothWindow;

/// Sharpness of the default Voronoi window on `[X, 2X]`.
pub const VORONOI_SHARPNESS: f64 = 5.0;

pub fn voronoi_window(x: f64) -> SmoothWindow {
    SmoothWindow::bump(x, 2.0 * x, VORONOI_SHARPNESS)
}

/// `H(y) = int h(x) J_{k-1}(4 pi sqrt(x y)) dx`.
pub fn bessel_transform_h(h: &SmoothWindow, y: f64, k: u32) -> Result<f64> {
    let (lo, hi) = h.support();
    if lo <= 0.0 {
        return Err(Error::PreconditionViolated("window must be supported in (0, inf)".into()));
    }
    let turns = 2.0 * y.sqrt() * (hi.sqrt() - lo.sqrt());
    let panels = ((2.0 * turns).ceil() as usize).max(16);
    let order = k as i32 - 1;
    let four_pi_sqrt_y = 4.0 * PI * y.sqrt();
    let r = composite_gk21(|x: f64| h.eval(x) * bessel_j(order, four_pi_sqrt_y * x.sqrt()), lo, hi, panels);
    let tolerance = 1e-8 * r.abs_integral.max(1e-300);
    if r.error > tolerance {
        return Err(Error::QuadratureFailure { estimate: r.error, tolerance });
    }
    Ok(r.value)
}

/// Default dual truncation `ceil(100 q^2 / X + 50 q^2)`.
pub fn default_truncation(q: u64, x: f64) -> usize {
    let q2 = (q * q) as f64;
    (100.0 * q2 / x + 50.0 * q2).ceil() as usize
}

/// Precomputed `H(n / q^2)` for `n <= 2T`, reusable for every `a mod q`.
pub struct VoronoiKernel<'a> {
    form: &'a CuspForm,
    q: u64,
    window: SmoothWindow,
    truncation: usize,
    h: Vec<f64>,
}

impl<'a> VoronoiKernel<'a> {
    pub fn new(form: &'a CuspForm, q: u64, window: SmoothWindow, truncation: Option<usize>) -> Result<Self> {
        let (lo, _) = window.support();
        let truncation = truncation.unwrap_or_else(|| default_truncation(q, lo));
        form.ensure(2 * truncation)?;
        let q2 = (q * q) as f64;
        let k = form.weight();
        let h = (0..=2 * truncation)
            .into_par_iter()
            .map(|n| if n == 0 { Ok(0.0) } else { bessel_transform_h(&window, n as f64 / q2, k) })
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self { form, q, window, truncation, h })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `sum lambda(n) e(a n / q) h(n)` over the window support.
    pub fn lhs(&self, a: i64) -> Result<Complex64> {
        let (lo, hi) = self.window.support();
        let (n0, n1) = (lo.ceil().max(1.0) as usize, hi.floor() as usize);
        self.form.ensure(n1)?;
        Ok((n0..=n1)
            .map(|n| e_rational(a as i128 * n as i128, self.q) * (self.form.lambda(n) * self.window.eval(n as f64)))
            .sum())
    }

    /// `(2 pi i^k / q) sum_{n <= t} lambda(n) e(-abar n / q) H(n / q^2)`.
    pub fn rhs(&self, a: i64, t: usize) -> Result<Complex64> {
        if t > 2 * self.truncation {
            return Err(Error::SizeLimit(format!("dual sum length {t} beyond precomputed {}", 2 * self.truncation)));
        }
        let abar = mod_inverse(a, self.q)? as i128;
        let sum: Complex64 = (1..=t)
            .map(|n| e_rational(-abar * n as i128, self.q) * (self.form.lambda(n) * self.h[n]))
            .sum();
        let ik = if (self.form.weight() / 2) % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sum * (TAU * ik / self.q as f64))
    }

    /// Identity report at the default truncation, with the doubling move recorded as metadata.
    pub fn report(&self, a: i64) -> Result<VerificationReport> {
        let start = Instant::now();
        if gcd(a.unsigned_abs(), self.q) != 1 {
            return Err(Error::NotInvertible { value: a, modulus: self.q });
        }
        let lhs = self.lhs(a)?;
        let rhs = self.rhs(a, self.truncation)?;
        let rhs2 = self.rhs(a, 2 * self.truncation)?;
        let doubling = (rhs2 - rhs).norm() / lhs.norm().max(1e-300);
        let (lo, _) = self.window.support();
        Ok(VerificationReport::new("voronoi", lhs, rhs)
            .param("q", self.q)
            .param("a", a)
            .param("X", lo)
            .param("T", self.truncation)
            .meta("truncation", self.truncation as f64)
            .meta("doubling_move", doubling)
            .require_rel(1e-6)
            .require(doubling < 1e-8)
            .timed(start))
    }
}

/// Voronoi identity for one `(a, q)`; fails with `TruncationInsufficient` if doubling `T` moves the dual sum by more than `1e-8 |LHS|`.
pub fn voronoi_verify(
    form: &CuspForm,
    a: i64,
    q: u64,
    h: &SmoothWindow,
    truncation: Option<usize>,
) -> Result<VerificationReport> {
    let kernel = VoronoiKernel::new(form, q, *h, truncation)?;
    let report = kernel.report(a)?;
    let moved = report.get_meta("doubling_move").unwrap_or(0.0);
    if moved > 1e-8 {
        return Err(Error::TruncationInsufficient(format!("doubling T moved the dual sum by {moved:e} relative")));
    }
    Ok(report)
}
