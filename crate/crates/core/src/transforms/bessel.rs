//! Bessel functions `J_n(x)` of integer order.

use std::f64::consts::PI;

const SERIES_MAX: f64 = 5.0;

/// `J_n(x)` for integer `n` and real `x`, absolute error below `1e-12`.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    if n < 0 {
        let v = bessel_j(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x < 0.0 {
        let v = bessel_j(n, -x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let nf = n as f64;
    if x <= SERIES_MAX {
        series(n, x)
    } else if x >= 40.0f64.max(nf * nf / 6.0 + 20.0) {
        hankel(n, x)
    } else {
        miller(n, x)
    }
}

fn series(n: i32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut sum = term;
    let h2 = half * half;
    for m in 1..200 {
        term *= -h2 / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Backward recurrence normalized by `J_0 + 2 sum J_{2k} = 1`.
fn miller(n: i32, x: f64) -> f64 {
    let top = (n as f64).max(x);
    let mut m = (top + 30.0 + (40.0 * top).sqrt()) as i32;
    m += m % 2;
    let (mut jp1, mut j) = (0.0f64, 1e-300f64);
    let mut norm = 0.0;
    let mut result = 0.0;
    for k in (1..=m).rev() {
        let jm1 = 2.0 * k as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
        if k - 1 == n {
            result = j;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * j;
        }
    }
    norm += j;
    result / norm
}

fn hankel(n: i32, x: f64) -> f64 {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut prev = f64::INFINITY;
    for k in 0..80 {
        let t = term.abs();
        let past_turn = ((2 * k - 1) as f64).powi(2) > mu;
        if k > 0 && past_turn && t > prev {
            break;
        }
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if t < 1e-17 {
            break;
        }
        prev = t;
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    let chi = x - (0.5 * n as f64 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(1/pi) int_0^pi cos(n t - x sin t) dt` by the trapezoid rule, exact to rounding for smooth periodic integrands.
    fn oracle(n: i32, x: f64) -> f64 {
        let m = (2.0 * (x + n as f64) + 200.0) as usize;
        let h = PI / m as f64;
        let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
        let mut s = 0.5 * (f(0.0) + f(PI));
        for i in 1..m {
            s += f(i as f64 * h);
        }
        s * h / PI
    }

    #[test]
    fn known_values() {
        assert!((bessel_j(0, 1.0) - 0.7651976865579666).abs() < 1e-15);
        assert!((bessel_j(1, 10.0) - 0.04347274616886144).abs() < 1e-14);
        assert_eq!(bessel_j(11, 0.0), 0.0);
        assert!((bessel_j(-3, 2.0) + bessel_j(3, 2.0)).abs() < 1e-16);
    }

    #[test]
    fn agrees_with_integral_oracle() {
        let mut worst = 0.0f64;
        for n in [0, 1, 2, 5, 11, 15, 21, 25] {
            let mut x = 0.01;
            while x < 3000.0 {
                let err = (bessel_j(n, x) - oracle(n, x)).abs();
                worst = worst.max(err);
                assert!(err < 1e-12, "n={n} x={x} err={err:e}");
                x *= 1.07;
            }
        }
        assert!(worst < 1e-12);
    }

    #[test]
    fn regime_overlap() {
        for n in [0, 1, 11, 25] {
            let nf = n as f64;
            assert!((series(n, SERIES_MAX) - miller(n, SERIES_MAX)).abs() < 1e-13, "n={n}");
            let x = 40.0f64.max(nf * nf / 6.0 + 20.0);
            assert!((hankel(n, x) - miller(n, x)).abs() < 1e-13, "n={n} x={x}");
        }
    }
}
