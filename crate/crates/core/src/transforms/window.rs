//! Smooth compactly supported weights.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SmoothWindow {
    /// `exp(-A t^2 / (1 - t^2))` with `t` the affine image of `[lo, hi]` onto `[-1, 1]`; peak 1.
    Bump { lo: f64, hi: f64, sharpness: f64 },
    /// Identically 1 on `[b, c]`, supported in `[a, d]`.
    Plateau { a: f64, b: f64, c: f64, d: f64 },
}

/// `e^{-1/t}` for `t > 0`, else 0.
fn psi(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// Smooth step: 0 for `t <= 0`, 1 for `t >= 1`.
pub fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if t >= 1.0 {
        return 1.0;
    }
    let a = psi(t);
    a / (a + psi(1.0 - t))
}

impl SmoothWindow {
    /// Bump on `[1, 2]` with unit sharpness.
    pub fn bump_on_1_2() -> Self {
        SmoothWindow::Bump { lo: 1.0, hi: 2.0, sharpness: 1.0 }
    }

    /// The plateau window: 1 on `[1, 2]`, support `[1/2, 3]`.
    pub fn plateau_half_3() -> Self {
        SmoothWindow::Plateau { a: 0.5, b: 1.0, c: 2.0, d: 3.0 }
    }

    pub fn bump(lo: f64, hi: f64, sharpness: f64) -> Self {
        SmoothWindow::Bump { lo, hi, sharpness }
    }

    pub fn support(&self) -> (f64, f64) {
        match *self {
            SmoothWindow::Bump { lo, hi, .. } => (lo, hi),
            SmoothWindow::Plateau { a, d, .. } => (a, d),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            SmoothWindow::Bump { lo, hi, sharpness } => {
                if x <= lo || x >= hi {
                    return 0.0;
                }
                let t = (2.0 * x - lo - hi) / (hi - lo);
                let t2 = t * t;
                (-sharpness * t2 / (1.0 - t2)).exp()
            }
            SmoothWindow::Plateau { a, b, c, d } => {
                if x <= a || x >= d {
                    0.0
                } else if x < b {
                    smooth_step((x - a) / (b - a))
                } else if x <= c {
                    1.0
                } else {
                    smooth_step((d - x) / (d - c))
                }
            }
        }
    }

    /// Same shape dilated by `s`: `x -> eval(x / s)`.
    pub fn scaled(&self, s: f64) -> Self {
        match *self {
            SmoothWindow::Bump { lo, hi, sharpness } => SmoothWindow::Bump { lo: lo * s, hi: hi * s, sharpness },
            SmoothWindow::Plateau { a, b, c, d } => SmoothWindow::Plateau { a: a * s, b: b * s, c: c * s, d: d * s },
        }
    }

    /// Numerical bounds on `sup |V^{(j)}|` for `j = 0..=4`.
    pub fn derivative_bounds(&self) -> [f64; 5] {
        let (lo, hi) = self.support();
        let n = 20_000;
        let h = (hi - lo) / n as f64;
        let vals: Vec<f64> = (0..=n).map(|i| self.eval(lo + i as f64 * h)).collect();
        let mut out = [0.0; 5];
        out[0] = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut diff = vals;
        for bound in out.iter_mut().skip(1) {
            diff = diff.windows(2).map(|w| (w[1] - w[0]) / h).collect();
            *bound = diff.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        }
        out
    }

    /// Length scale `Omega_g` with `|V^{(j)}| <= Omega_g^{-j}` for `j = 1..=4`.
    pub fn omega(&self) -> f64 {
        let b = self.derivative_bounds();
        (1..5).map(|j| b[j].powf(-1.0 / j as f64)).fold(f64::INFINITY, f64::min)
    }

    /// `int V(x) dx`.
    pub fn integral(&self) -> f64 {
        let (lo, hi) = self.support();
        super::quadrature::composite_gk21(|x| self.eval(x), lo, hi, 64).value
    }
}
