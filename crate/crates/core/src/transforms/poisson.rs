//! Poisson summation checks.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase::e;
use crate::transforms::quadrature::composite_gk21;
use crate::transforms::report::VerificationReport;
use crate::transforms::window::SmoothWindow;

/// Test functions with a computable Fourier transform `fhat(xi) = int f(x) e(-x xi) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoissonFunction {
    /// `exp(-pi ((x - shift)/scale)^2)`.
    Gaussian { scale: f64, shift: f64 },
    /// The window, transform by quadrature.
    Window(SmoothWindow),
}

const TAIL: f64 = 1e-17;
/// Quadrature noise floor for transforms computed numerically.
const WINDOW_TAIL: f64 = 1e-13;
const MAX_TERMS: i64 = 100_000;

impl PoissonFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            PoissonFunction::Gaussian { scale, shift } => {
                let t = (x - shift) / scale;
                (-PI * t * t).exp()
            }
            PoissonFunction::Window(w) => w.eval(x),
        }
    }

    pub fn fourier(&self, xi: f64) -> Complex64 {
        match *self {
            PoissonFunction::Gaussian { scale, shift } => e(-shift * xi) * (scale * (-PI * scale * scale * xi * xi).exp()),
            PoissonFunction::Window(w) => {
                let (lo, hi) = w.support();
                let panels = ((xi.abs() * (hi - lo)).ceil() as usize).max(64);
                composite_gk21(|x| e(-x * xi) * w.eval(x), lo, hi, panels).value
            }
        }
    }

    fn name(&self) -> &'static str {
        match self {
            PoissonFunction::Gaussian { .. } => "poisson_gaussian",
            PoissonFunction::Window(_) => "poisson_window",
        }
    }
}

/// Compares `sum_n f(n)` with `sum_m fhat(m)`, each truncated once terms are negligible.
pub fn poisson_verify(f: &PoissonFunction) -> Result<VerificationReport> {
    let start = Instant::now();
    let (lhs, n_terms) = match *f {
        PoissonFunction::Window(w) => {
            let (lo, hi) = w.support();
            let s: f64 = (lo.ceil() as i64..=hi.floor() as i64).map(|n| w.eval(n as f64)).sum();
            (Complex64::new(s, 0.0), (hi - lo).ceil() as i64)
        }
        PoissonFunction::Gaussian { shift, .. } => {
            let c = shift.round() as i64;
            symmetric_sum(c, TAIL, |n| Complex64::new(f.eval(n as f64), 0.0))?
        }
    };
    let tail = if matches!(f, PoissonFunction::Window(_)) { WINDOW_TAIL } else { TAIL };
    let (rhs, m_terms) = symmetric_sum(0, tail, |m| f.fourier(m as f64))?;
    let params = match *f {
        PoissonFunction::Gaussian { scale, shift } => vec![("scale", scale), ("shift", shift)],
        PoissonFunction::Window(w) => {
            let (lo, hi) = w.support();
            vec![("lo", lo), ("hi", hi)]
        }
    };
    let mut report = VerificationReport::new(f.name(), lhs, rhs)
        .meta("n_terms", n_terms as f64)
        .meta("m_terms", m_terms as f64);
    for (k, v) in params {
        report = report.param(k, v);
    }
    Ok(report.timed(start))
}

/// `sum_{j} term(center + j)` over `j = 0, +-1, +-2, ...` until three consecutive pairs fall below `tail` relative to the sum.
fn symmetric_sum(center: i64, tail: f64, term: impl Fn(i64) -> Complex64) -> Result<(Complex64, i64)> {
    let mut sum = term(center);
    let mut small = 0;
    let mut j = 1;
    while small < 3 {
        if j > MAX_TERMS {
            return Err(Error::NonConvergent(format!("Poisson tail above {tail:e} after {MAX_TERMS} terms")));
        }
        let a = term(center + j);
        let b = term(center - j);
        sum += a + b;
        if a.norm().max(b.norm()) < tail * sum.norm().max(1e-300) {
            small += 1;
        } else {
            small = 0;
        }
        j += 1;
    }
    Ok((sum, j))
}
