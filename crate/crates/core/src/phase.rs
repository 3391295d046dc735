//! Additive characters `e(x) = exp(2 pi i x)`.

use std::f64::consts::TAU;

use num_complex::Complex64;

#[inline]
pub fn e(x: f64) -> Complex64 {
    let t = x - x.round();
    Complex64::cis(TAU * t)
}

/// `e(num / den)` with the numerator reduced exactly before conversion.
#[inline]
pub fn e_rational(num: i128, den: u64) -> Complex64 {
    let r = num.rem_euclid(den as i128) as f64;
    Complex64::cis(TAU * r / den as f64)
}
