//! Verification reports shared by all identity checks.

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

pub const REL_ERR_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Vec<(String, String)>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub metadata: Vec<(String, f64)>,
    pub elapsed_ms: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(identity: &str, lhs: Complex64, rhs: Complex64) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / lhs.norm().max(rhs.norm()).max(REL_ERR_FLOOR);
        Self {
            identity: identity.to_string(),
            params: Vec::new(),
            lhs,
            rhs,
            abs_err,
            rel_err,
            metadata: Vec::new(),
            elapsed_ms: 0.0,
            pass: true,
        }
    }

    pub fn real(identity: &str, lhs: f64, rhs: f64) -> Self {
        Self::new(identity, Complex64::new(lhs, 0.0), Complex64::new(rhs, 0.0))
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(mut self, key: &str, value: f64) -> Self {
        self.metadata.push((key.to_string(), value));
        self
    }

    pub fn get_meta(&self, key: &str) -> Option<f64> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        self
    }

    pub fn require_abs(mut self, tol: f64) -> Self {
        self.pass = self.pass && self.abs_err < tol;
        self
    }

    pub fn require_rel(mut self, tol: f64) -> Self {
        self.pass = self.pass && self.rel_err < tol;
        self
    }

    pub fn require(mut self, ok: bool) -> Self {
        self.pass = self.pass && ok;
        self
    }

    pub fn params_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }

    pub const CSV_HEADER: &'static str = "identity,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,time_ms,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.3},{}",
            self.identity,
            self.params_string(),
            fmt17(self.lhs.re),
            fmt17(self.lhs.im),
            fmt17(self.rhs.re),
            fmt17(self.rhs.im),
            fmt17(self.abs_err),
            fmt17(self.rel_err),
            self.elapsed_ms,
            self.pass
        )
    }
}

/// Seventeen significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_err_floor() {
        let r = VerificationReport::real("zero", 0.0, 0.0);
        assert_eq!(r.rel_err, 0.0);
        let r = VerificationReport::real("tiny", 1e-40, 0.0);
        assert!((r.rel_err - 1e-10).abs() < 1e-20);
    }

    #[test]
    fn csv_shape() {
        let r = VerificationReport::real("x", 1.0, 1.0).param("n", 3).param("Q", 7);
        let row = r.csv_row();
        assert_eq!(row.split(',').count(), VerificationReport::CSV_HEADER.split(',').count());
        assert!(row.starts_with("x,n=3;Q=7,1.0000000000000000e0,"));
    }
}
