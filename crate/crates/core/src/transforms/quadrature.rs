//! Composite Gauss–Kronrod (10/21) quadrature.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525637376,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

pub trait Scalar: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    /// Sum over panels of the Kronrod–Gauss difference.
    pub error: f64,
    /// `int |f|` as seen by the Kronrod rule.
    pub abs_integral: f64,
}

/// Single 21-point Kronrod panel with its embedded 10-point Gauss estimate.
#[inline]
pub fn gk21<T: Scalar>(f: &impl Fn(f64) -> T, a: f64, b: f64) -> QuadResult<T> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kr = fc * WGK[10];
    let mut ga = T::default();
    let mut abs = fc.magnitude() * WGK[10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        let s = f1 + f2;
        kr = kr + s * WGK[j];
        abs += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            ga = ga + s * WG[j / 2];
        }
    }
    QuadResult { value: kr * h, error: (kr - ga).magnitude() * h.abs(), abs_integral: abs * h.abs() }
}

/// GK21 over `panels` equal subintervals of `[a, b]`.
pub fn composite_gk21<T: Scalar>(f: impl Fn(f64) -> T, a: f64, b: f64, panels: usize) -> QuadResult<T> {
    let panels = panels.max(1);
    let w = (b - a) / panels as f64;
    let mut acc = QuadResult { value: T::default(), error: 0.0, abs_integral: 0.0 };
    for i in 0..panels {
        let lo = a + i as f64 * w;
        let hi = if i + 1 == panels { b } else { lo + w };
        let r = gk21(&f, lo, hi);
        acc.value = acc.value + r.value;
        acc.error += r.error;
        acc.abs_integral += r.abs_integral;
    }
    acc
}

/// Number of full turns of `e(f)` over `[a, b]`, from the sampled total variation of `f`.
pub fn oscillation_count(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let n = 4000;
    let h = (b - a) / n as f64;
    let mut prev = f(a);
    let mut tv = 0.0;
    for i in 1..=n {
        let cur = f(a + i as f64 * h);
        tv += (cur - prev).abs();
        prev = cur;
    }
    tv
}

/// `int_a^b g(x) e(f(x)) dx`, resolved with at least 20 nodes per oscillation.
///
/// The error estimate is the difference with a half-resolution run.
pub fn oscillatory_quadrature(
    g: impl Fn(f64) -> f64,
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
) -> Result<QuadResult<Complex64>> {
    let osc = oscillation_count(&f, a, b);
    let panels = (osc.ceil() as usize).max(32);
    let integrand = |x: f64| crate::phase::e(f(x)) * g(x);
    let coarse = composite_gk21(integrand, a, b, panels);
    let fine = composite_gk21(integrand, a, b, 2 * panels);
    let gmax = (0..=1000).map(|i| g(a + (b - a) * i as f64 / 1000.0).abs()).fold(0.0f64, f64::max);
    let estimate = (fine.value - coarse.value).norm();
    let tolerance = 1e-9 * (b - a).abs() * gmax.max(f64::MIN_POSITIVE);
    if estimate > tolerance {
        return Err(Error::QuadratureFailure { estimate, tolerance });
    }
    Ok(QuadResult { value: fine.value, error: estimate, abs_integral: fine.abs_integral })
}
