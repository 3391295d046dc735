//! Kloosterman-refined expansion of the Kronecker delta.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::modarith::{gcd, mod_inverse};
use crate::phase::e_rational;
use crate::transforms::quadrature::composite_gk21;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaConfig {
    pub n: i64,
    #[serde(rename = "Q")]
    pub q_max: f64,
    /// `None` uses the closed-form x-integral; `Some(panels)` integrates numerically.
    pub resolution: Option<usize>,
}

impl DeltaConfig {
    pub fn new(n: i64, q_max: f64) -> Self {
        Self { n, q_max, resolution: None }
    }
}

/// `int_0^1 e(-t x) dx`.
pub fn unit_interval_phase_integral(t: f64) -> Complex64 {
    if t == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let th = TAU * t;
    let half = 0.5 * th;
    // e(-t) - 1 = -2 sin^2(th/2) - i sin(th)
    let num = Complex64::new(-2.0 * half.sin().powi(2), -th.sin());
    num / Complex64::new(0.0, -th)
}

/// Terms `(q, a, abar)` of the expansion: `1 <= q <= Q < a <= q + Q`, `gcd(a, q) = 1`.
pub fn delta_terms(q_max: f64) -> Vec<(u64, u64, u64)> {
    assert!(q_max >= 1.0, "Q >= 1 required");
    let qf = q_max.floor() as u64;
    let mut out = Vec::new();
    for q in 1..=qf {
        let a_lo = qf + 1;
        let a_hi = (q as f64 + q_max).floor() as u64;
        for a in a_lo..=a_hi {
            if gcd(a, q) == 1 {
                out.push((q, a, mod_inverse(a as i64, q).unwrap()));
            }
        }
    }
    out
}

/// The expansion of `delta(n)`; equals `[n = 0]` up to rounding.
pub fn delta_expand(cfg: &DeltaConfig) -> f64 {
    let n = cfg.n;
    let mut sum = Complex64::new(0.0, 0.0);
    for (q, a, abar) in delta_terms(cfg.q_max) {
        let arith = e_rational(n as i128 * abar as i128, q);
        let scale = (a * q) as f64;
        let integral = match cfg.resolution {
            None => unit_interval_phase_integral(n as f64 / scale),
            Some(panels) => composite_gk21(|x| crate::phase::e(-(n as f64) * x / scale), 0.0, 1.0, panels).value,
        };
        sum += arith * integral / scale;
    }
    2.0 * sum.re
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spec_examples() {
        assert!((delta_expand(&DeltaConfig::new(0, 7.0)) - 1.0).abs() < 1e-10);
        assert!(delta_expand(&DeltaConfig::new(3, 7.0)).abs() < 1e-9);
        let a = delta_expand(&DeltaConfig::new(3, 7.0));
        let b = delta_expand(&DeltaConfig::new(-3, 7.0));
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn quadrature_cross_check() {
        for n in [-17i64, 0, 5, 64] {
            let exact = delta_expand(&DeltaConfig::new(n, 7.0));
            let quad = delta_expand(&DeltaConfig { n, q_max: 7.0, resolution: Some(8) });
            assert!((exact - quad).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn small_phase_integral_stable() {
        let t = 1e-9;
        let v = unit_interval_phase_integral(t);
        assert!((v - Complex64::new(1.0, -std::f64::consts::PI * t)).norm() < 1e-15);
    }

    proptest! {
        #[test]
        fn identity_holds(n in -300i64..300, q in 1.0f64..40.0) {
            let v = delta_expand(&DeltaConfig::new(n, q));
            let expected = if n == 0 { 1.0 } else { 0.0 };
            prop_assert!((v - expected).abs() < 1e-8);
        }
    }
}
