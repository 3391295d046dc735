//! Complete character sums: brute force against closed forms and fixed-constant bounds.

pub mod poly;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{make_character, primitive_indices, DirichletCharacter};
use crate::error::{Error, Result};
use crate::modarith::{gcd, is_prime, mod_inverse, reduce, valuation};
use crate::phase::e_rational;
use crate::transforms::report::fmt17;
use poly::Poly;

/// Constant in every fixed-constant bound.
pub const BOUND_CONSTANT: f64 = 4.0;

/// Accumulated floating error allowed per summed term.
pub const ROUNDING_PER_TERM: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SumStatus {
    /// Bound applies and is asserted.
    Generic,
    /// Bound not applicable; the reason is recorded.
    Degenerate(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharSumResult {
    pub value: Complex64,
    pub modulus: u64,
    pub closed_form: Option<Complex64>,
    pub bound: Option<f64>,
    pub satisfied: bool,
    pub status: SumStatus,
}

impl CharSumResult {
    fn with_bound(value: Complex64, modulus: u64, bound: f64, status: SumStatus) -> Self {
        let satisfied = value.norm() <= bound + ROUNDING_PER_TERM * modulus as f64;
        Self { value, modulus, closed_form: None, bound: Some(bound), satisfied, status }
    }
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(msg.to_string()))
    }
}

fn prime_power(chi: &DirichletCharacter) -> Result<(u64, u32)> {
    match chi.components() {
        [c] => Ok((c.p, c.r)),
        _ => Err(Error::PreconditionViolated("character modulo a prime power required".into())),
    }
}

/// Inverse of `a` mod `q`, with `0` for `q = 1`.
fn inv_or_zero(a: i64, q: u64) -> Result<u64> {
    if q == 1 {
        Ok(0)
    } else {
        mod_inverse(a, q)
    }
}

// ---------------------------------------------------------------------------
// C(b, q)

/// `q chi(q) chibar(m - (abar + b q) p^{r-l}) tau_chi` if `m = abar p^{r-l} (mod q)`, else 0.
pub fn charsum_c_closed_form(chi: &DirichletCharacter, q: u64, a: i64, b: u64, m: i64, ell: u32) -> Result<Complex64> {
    let (p, r) = prime_power(chi)?;
    let abar = inv_or_zero(a, q)? as i128;
    let s = p.pow(r - ell) as i128;
    let c = m as i128 - (abar + (b * q) as i128) * s;
    if c.rem_euclid(q as i128) != 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let c_red = c.rem_euclid(chi.modulus() as i128) as u64;
    Ok(chi.at(c_red).conj() * chi.evaluate(q as i64) * chi.gauss_sum().value * q as f64)
}

/// `sum_{beta mod p^r q} chi(beta) e(-(abar + b q) beta / (p^l q) + m beta / (p^r q))`, summed term by term.
pub fn charsum_c_bruteforce(chi: &DirichletCharacter, q: u64, a: i64, b: u64, m: i64, ell: u32) -> Result<CharSumResult> {
    let (p, r) = prime_power(chi)?;
    require(chi.is_primitive(), "primitive character required")?;
    require(q >= 1 && gcd(q, p) == 1, "gcd(q, p) = 1 required")?;
    require(gcd(a.unsigned_abs(), q) == 1, "gcd(a, q) = 1 required")?;
    require(ell < r, "l < r required")?;
    let pl = p.pow(ell);
    require(b < pl, "0 <= b < p^l required")?;
    let pr = chi.modulus();
    let big = pr * q;
    let abar = inv_or_zero(a, q)? as i128;
    let shift = abar + (b * q) as i128;
    let value: Complex64 = (0..big)
        .filter(|&beta| beta % p != 0)
        .map(|beta| {
            chi.at(beta % pr) * e_rational(-shift * beta as i128, pl * q) * e_rational(m as i128 * beta as i128, big)
        })
        .sum();
    let closed = charsum_c_closed_form(chi, q, a, b, m, ell)?;
    let ok = (value - closed).norm() < 1e-8;
    Ok(CharSumResult { value, modulus: big, closed_form: Some(closed), bound: None, satisfied: ok, status: SumStatus::Generic })
}

/// Full twisted transform `F(c) = sum_{beta mod p^r q} chi(beta) e(c beta / (p^r q))` for all `c`.
pub fn twisted_transform_table(chi: &DirichletCharacter, q: u64) -> Vec<Complex64> {
    let pr = chi.modulus();
    let big = pr * q;
    let roots: Vec<Complex64> = (0..big).map(|j| e_rational(j as i128, big)).collect();
    let units: Vec<(u64, Complex64)> =
        (0..big).filter(|&b| gcd(b % pr, pr) == 1).map(|b| (b, chi.at(b % pr))).collect();
    (0..big)
        .into_par_iter()
        .map(|c| {
            let mut s = Complex64::new(0.0, 0.0);
            for &(beta, v) in &units {
                s += v * roots[(c * beta % big) as usize];
            }
            s
        })
        .collect()
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GridSummary {
    pub cases: u64,
    pub zero_cases: u64,
    pub zero_matched: u64,
    pub max_abs_err: f64,
    pub literal_checks: u64,
    pub literal_max_abs_err: f64,
}

/// Exhaustive check of the closed form over `p^r q <= max_modulus`, `l < r`, all `a`, `b`, `m`.
///
/// The brute-force side is the full transform table; a seeded subset is also summed term by term.
pub fn charsum_c_grid(primes: &[u64], max_modulus: u64, literal_samples: usize, seed: u64) -> Result<GridSummary> {
    let mut jobs = Vec::new();
    for &p in primes {
        let mut r = 1;
        while p.pow(r) <= max_modulus {
            let pr = p.pow(r);
            let mut indices = vec![1u64];
            if r == 1 && (p - 1) / 2 != 1 {
                indices.push((p - 1) / 2);
            }
            for index in indices {
                for q in (1..=max_modulus / pr).filter(|&q| gcd(q, p) == 1) {
                    jobs.push((p, r, index, q));
                }
            }
            r += 1;
        }
    }
    let parts: Vec<Result<GridSummary>> = jobs
        .par_iter()
        .map(|&(p, r, index, q)| {
            let chi = make_character(p, r, index)?;
            let table = twisted_transform_table(&chi, q);
            let pr = chi.modulus();
            let big = pr * q;
            let factor = chi.evaluate(q as i64) * chi.gauss_sum().value * q as f64;
            let mut s = GridSummary::default();
            for ell in 0..r {
                let shift_unit = p.pow(r - ell);
                for a in (1..=q).filter(|&a| gcd(a, q) == 1) {
                    let abar = inv_or_zero(a as i64, q)?;
                    for b in 0..p.pow(ell) {
                        let base = ((abar + b * q) % big) * shift_unit % big;
                        for m in 0..big {
                            let c = (m + big - base) % big;
                            let congruent = (m + q - abar * shift_unit % q) % q == 0;
                            let closed = if congruent { chi.at(c % pr).conj() * factor } else { Complex64::new(0.0, 0.0) };
                            let err = (table[c as usize] - closed).norm();
                            s.cases += 1;
                            if !congruent {
                                s.zero_cases += 1;
                                if table[c as usize].norm() < 1e-8 {
                                    s.zero_matched += 1;
                                }
                            }
                            s.max_abs_err = s.max_abs_err.max(err);
                        }
                    }
                }
            }
            Ok(s)
        })
        .collect();
    let mut total = GridSummary::default();
    for part in parts {
        let s = part?;
        total.cases += s.cases;
        total.zero_cases += s.zero_cases;
        total.zero_matched += s.zero_matched;
        total.max_abs_err = total.max_abs_err.max(s.max_abs_err);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<_> = (0..literal_samples)
        .map(|_| {
            let (p, r, index, q) = jobs[rng.gen_range(0..jobs.len())];
            let ell = rng.gen_range(0..r);
            let mut a = rng.gen_range(1..=q);
            while gcd(a, q) != 1 {
                a = rng.gen_range(1..=q);
            }
            let b = rng.gen_range(0..p.pow(ell));
            let m = rng.gen_range(0..p.pow(r) * q) as i64;
            (p, r, index, q, ell, a as i64, b, m)
        })
        .collect();
    let literal: Vec<Result<f64>> = samples
        .par_iter()
        .map(|&(p, r, index, q, ell, a, b, m)| {
            let chi = make_character(p, r, index)?;
            let res = charsum_c_bruteforce(&chi, q, a, b, m, ell)?;
            Ok((res.value - res.closed_form.unwrap()).norm())
        })
        .collect();
    for err in literal {
        total.literal_checks += 1;
        total.literal_max_abs_err = total.literal_max_abs_err.max(err?);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// A

/// `l = 2 floor(r / 3)`.
pub fn ell_for(r: u32) -> u32 {
    2 * (r / 3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ATuple {
    pub m: i64,
    pub m2: i64,
    pub q: i64,
    pub q2: i64,
    pub n: i64,
}

/// `p`-adic valuation of `m'(n + q') + q m`, capped at `l`; the coherence level of the sum.
pub fn charsum_a_coherence(p: u64, ell: u32, t: &ATuple) -> u32 {
    let v = valuation((t.m2 as i128 * (t.n + t.q2) as i128 + t.q as i128 * t.m as i128).rem_euclid(i64::MAX as i128) as i64, p);
    v.min(ell)
}

/// `sum*_{alpha mod p^l} chibar(m - alpha p^{r-l}) chi(m' + alpha q (n + q')^{-1} p^{r-l})`.
///
/// Tuples whose coherence level exceeds `l/2` are tagged degenerate; their value is of size `p^v`
/// and the recorded bound is `4 p^v` instead of `4 p^{l/2}`.
pub fn charsum_a_bruteforce(chi: &DirichletCharacter, t: &ATuple) -> Result<CharSumResult> {
    let (p, r) = prime_power(chi)?;
    require(r >= 3, "r >= 3 required")?;
    let pr = chi.modulus();
    require(gcd(reduce(t.n + t.q2, p), p) == 1, "n + q' must be a unit mod p")?;
    let ell = ell_for(r);
    let pl = p.pow(ell);
    let s = p.pow(r - ell);
    let w = reduce(t.q, pr) as u128 * mod_inverse(t.n + t.q2, pr)? as u128 % pr as u128;
    let (m, m2) = (reduce(t.m, pr) as u128, reduce(t.m2, pr) as u128);
    let prr = pr as u128;
    let mut value = Complex64::new(0.0, 0.0);
    for alpha in (0..pl).filter(|&a| a % p != 0) {
        let x = (m + prr - alpha as u128 * s as u128 % prr) % prr;
        let y = (m2 + w * alpha as u128 % prr * s as u128) % prr;
        value += chi.at(x as u64).conj() * chi.at(y as u64);
    }
    let v = charsum_a_coherence(p, ell, t);
    let (exponent, status) = if 2 * v > ell {
        (v as f64, SumStatus::Degenerate(format!("coherent: v_p(m'(n+q')+qm) >= {v} > l/2")))
    } else {
        (ell as f64 / 2.0, SumStatus::Generic)
    };
    let bound = BOUND_CONSTANT * (p as f64).powf(exponent);
    Ok(CharSumResult::with_bound(value, pr, bound, status))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AReduction {
    pub direct: Complex64,
    /// `sum_{alpha_2} sum_{alpha_1} chi(A(alpha_2) + B(alpha_2) alpha_1 p^{2(r-l)})`.
    pub double_sum: Complex64,
    /// `p^{l/2} sum_{alpha_2 : b C(alpha_2) = 0} chi(A(alpha_2))`.
    pub reduced: Complex64,
    /// Number of `alpha_2` with `b C(alpha_2) = 0 (mod p^{l/2})`.
    pub count: u64,
    /// `chi(1 + x p^{2(r-l)}) = e(b x / p^{l/2})`.
    pub b: u64,
}

/// The `alpha = alpha_1 p^{l/2} + alpha_2` reduction of the A-sum, for `r = 0 (mod 3)`.
pub fn charsum_a_reduction(chi: &DirichletCharacter, t: &ATuple) -> Result<AReduction> {
    let (p, r) = prime_power(chi)?;
    require(r >= 3 && r % 3 == 0, "reduction needs r = 0 mod 3")?;
    let direct = charsum_a_bruteforce(chi, t)?.value;
    let pr = chi.modulus();
    let ell = ell_for(r);
    let s = r - ell;
    let half = p.pow(ell / 2);
    let ps = p.pow(s) as u128;
    let p2s = p.pow(2 * s) as u128;
    let prr = pr as u128;
    let w = reduce(t.q, pr) as u128 * mod_inverse(t.n + t.q2, pr)? as u128 % prr;
    let (m, m2) = (reduce(t.m, pr) as u128, reduce(t.m2, pr) as u128);
    let phase_b = chi.at((1 + p2s) as u64);
    let b = reduce((phase_b.arg() / std::f64::consts::TAU * half as f64).round() as i64, half);
    let mut double_sum = Complex64::new(0.0, 0.0);
    let mut reduced = Complex64::new(0.0, 0.0);
    let mut count = 0;
    for a2 in (0..half).filter(|&a| a % p != 0) {
        let u = (m + prr - a2 as u128 * ps % prr) % prr;
        let ubar = match mod_inverse(u as i64, pr) {
            Ok(x) => x as u128,
            Err(_) => continue,
        };
        let big_a = ubar * ((m2 + w * a2 as u128 % prr * ps) % prr) % prr;
        let big_b = (ubar * ubar % prr * m2 + ubar * w) % prr;
        for a1 in 0..half as u128 {
            double_sum += chi.at(((big_a + big_b * a1 % prr * p2s) % prr) as u64);
        }
        if let Ok(abar) = mod_inverse(big_a as i64, pr) {
            let c = abar as u128 * big_b % half as u128;
            if (b as u128 * c) % half as u128 == 0 {
                count += 1;
                reduced += chi.at(big_a as u64) * half as f64;
            }
        }
    }
    Ok(AReduction { direct, double_sum, reduced, count, b })
}

// ---------------------------------------------------------------------------
// B

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BTuple {
    pub m: i64,
    pub m2: i64,
    pub n: i64,
    pub q: i64,
    pub p2: i64,
}

/// Numerator and denominator of `g(beta) = qbar (beta - m P2bar)(1 + n beta) q / (beta (1 + m' P2bar n) + m' P2bar)`.
pub fn charsum_b_rational(p1: u64, t: &BTuple) -> Result<(Poly, Poly)> {
    let qbar = mod_inverse(t.q, p1)? as i64;
    let p2bar = mod_inverse(t.p2, p1)? as i64;
    let c = reduce(qbar as i64 * reduce(t.q, p1) as i64, p1) as i64;
    let mp = reduce(t.m * p2bar, p1) as i64;
    let lin1 = Poly::new(&[-mp, 1], p1);
    let lin2 = Poly::new(&[1, t.n], p1);
    let num = Poly::new(&[c], p1).mul(&lin1).mul(&lin2);
    let m2p = reduce(t.m2 * p2bar, p1) as i64;
    let den = Poly::new(&[m2p, 1 + m2p * reduce(t.n, p1) as i64], p1);
    Ok((num, den))
}

/// Whether `num/den` is a constant times a `k`-th power over the algebraic closure.
pub fn is_kth_power(num: &Poly, den: &Poly, k: u64) -> Result<bool> {
    if k <= 1 {
        return Ok(true);
    }
    let g = num.gcd(den);
    let (n, d) = (num.divrem(&g).0, den.divrem(&g).0);
    let all = n.squarefree_factors()?.into_iter().chain(d.squarefree_factors()?);
    Ok(all.into_iter().all(|(_, mult)| mult as u64 % k == 0))
}

/// `B = sum_{beta mod P1} chi1(g(beta))`, literal evaluation; non-units and poles contribute 0.
pub fn charsum_b_bruteforce(chi1: &DirichletCharacter, t: &BTuple) -> Result<CharSumResult> {
    let (p1, r) = prime_power(chi1)?;
    require(r == 1 && chi1.is_primitive(), "primitive character mod a prime required")?;
    require(reduce(t.q, p1) != 0 && reduce(t.p2, p1) != 0, "q and P2 must be units mod P1")?;
    let (num, den) = charsum_b_rational(p1, t)?;
    let mut value = Complex64::new(0.0, 0.0);
    for beta in 0..p1 {
        let dv = den.eval(beta);
        if dv == 0 {
            continue;
        }
        let g = num.eval(beta) as u128 * mod_inverse(dv as i64, p1)? as u128 % p1 as u128;
        value += chi1.at(g as u64);
    }
    let status = if den.is_zero() {
        SumStatus::Degenerate("denominator vanishes identically".into())
    } else if is_kth_power(&num, &den, chi1.order())? {
        SumStatus::Degenerate(format!("g is a constant times a {}-th power", chi1.order()))
    } else {
        SumStatus::Generic
    };
    Ok(CharSumResult::with_bound(value, p1, BOUND_CONSTANT * (p1 as f64).sqrt(), status))
}

// ---------------------------------------------------------------------------
// Weil

/// A rational function `num / den` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalFn {
    pub num: Vec<i64>,
    pub den: Vec<i64>,
}

impl RationalFn {
    pub fn poly(num: &[i64]) -> Self {
        Self { num: num.to_vec(), den: vec![1] }
    }

    pub fn zero() -> Self {
        Self { num: vec![], den: vec![1] }
    }

    fn reduced(&self, p: u64) -> Result<(Poly, Poly)> {
        let (n, d) = (Poly::new(&self.num, p), Poly::new(&self.den, p));
        if d.is_zero() {
            return Err(Error::PreconditionViolated("zero denominator".into()));
        }
        if n.is_zero() {
            return Ok((n, Poly::new(&[1], p)));
        }
        let g = n.gcd(&d);
        Ok((n.divrem(&g).0, d.divrem(&g).0))
    }
}

/// `n_1`: distinct zeros and poles of `num/den` on the projective line.
fn zeros_and_poles(num: &Poly, den: &Poly) -> Result<usize> {
    let finite = num.distinct_roots()? + den.distinct_roots()?;
    let at_infinity = num.degree() != den.degree();
    Ok(finite + at_infinity as usize)
}

/// `(n_2, deg (f)_inf)`: distinct poles of `f` and their total multiplicity.
fn poles(num: &Poly, den: &Poly) -> Result<(usize, usize)> {
    if num.is_zero() {
        return Ok((0, 0));
    }
    let dn = num.degree().unwrap();
    let dd = den.degree().unwrap();
    let inf = dn.saturating_sub(dd);
    Ok((den.distinct_roots()? + (inf > 0) as usize, dd + inf))
}

/// `S = sum_{x mod p} chi(g(x)) e_p(f(x))` against `(n_1 + n_2 - 2 + deg (f)_inf) sqrt(p)`.
///
/// When `g` is finite and nonzero at infinity the affine sum omits one unit-size term of the
/// projective sum, and the bound is increased by 1.
pub fn weil_sum(chi: &DirichletCharacter, g: &RationalFn, f: &RationalFn) -> Result<CharSumResult> {
    let (p, r) = prime_power(chi)?;
    require(r == 1 && p <= 10_000, "prime modulus <= 10^4 required")?;
    let (gn, gd) = g.reduced(p)?;
    let (fn_, fd) = f.reduced(p)?;
    if gn.is_zero() {
        return Err(Error::DegenerateFunction("g vanishes identically".into()));
    }
    if is_kth_power(&gn, &gd, chi.order())? {
        return Err(Error::DegenerateFunction(format!("g is a constant times a {}-th power", chi.order())));
    }
    let mut value = Complex64::new(0.0, 0.0);
    for x in 0..p {
        let fdv = fd.eval(x);
        if fdv == 0 {
            continue;
        }
        let gdv = gd.eval(x);
        if gdv == 0 {
            continue;
        }
        let gx = gn.eval(x) as u128 * mod_inverse(gdv as i64, p)? as u128 % p as u128;
        let fx = fn_.eval(x) as u128 * mod_inverse(fdv as i64, p)? as u128 % p as u128;
        value += chi.at(gx as u64) * e_rational(fx as i128, p);
    }
    let n1 = zeros_and_poles(&gn, &gd)?;
    let (n2, deg_inf) = poles(&fn_, &fd)?;
    let weight = (n1 + n2 + deg_inf) as f64 - 2.0;
    let omitted = if gn.degree() == gd.degree() { 1.0 } else { 0.0 };
    let bound = weight.max(0.0) * (p as f64).sqrt() + omitted;
    Ok(CharSumResult::with_bound(value, p, bound, SumStatus::Generic))
}

// ---------------------------------------------------------------------------
// Congruence count

/// Forced residue `n0 = p^{r-l} (mbar q' - m'bar q) (mod q q')` with `mbar` inverse mod `q`, `m'bar` mod `q'`.
pub fn congruence_residue(q: u64, q2: u64, p: u64, ell: u32, r: u32, m: i64, m2: i64) -> Result<u64> {
    require(ell <= r, "l <= r required")?;
    require(gcd(q, q2) == 1 && gcd(p, q * q2) == 1, "q, q', p pairwise coprime required")?;
    let big = q * q2;
    let mbar = inv_or_zero(m, q)? as i128;
    let m2bar = inv_or_zero(m2, q2)? as i128;
    let pw = crate::modarith::mod_pow(p, (r - ell) as u64, big) as i128;
    Ok((pw * (mbar * q2 as i128 - m2bar * q as i128)).rem_euclid(big as i128) as u64)
}

/// Number of `|n| <= L` with `n = n0 (mod q q')`; never exceeds `floor(2L / (q q')) + 1`.
pub fn congruence_solution_count(q: u64, q2: u64, p: u64, ell: u32, r: u32, m: i64, m2: i64, l_bound: u64) -> Result<u64> {
    let big = (q * q2) as i64;
    let n0 = congruence_residue(q, q2, p, ell, r, m, m2)? as i64;
    let l = l_bound as i64;
    let count = (-l..=l).filter(|&n| (n - n0).rem_euclid(big) == 0).count() as u64;
    assert!(count <= 2 * l_bound / (q * q2) + 1);
    Ok(count)
}

// ---------------------------------------------------------------------------
// Sweeps

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub lemma: String,
    pub params: String,
    pub abs_value: f64,
    pub bound: f64,
    pub satisfied: bool,
    pub status: String,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "lemma,params,abs_value,bound,satisfied,status";

    fn from_result(lemma: &str, params: String, res: &CharSumResult) -> Self {
        let status = match &res.status {
            SumStatus::Generic => "generic".to_string(),
            SumStatus::Degenerate(why) => format!("degenerate: {why}").replace(',', ";"),
        };
        Self { lemma: lemma.into(), params, abs_value: res.value.norm(), bound: res.bound.unwrap_or(f64::NAN), satisfied: res.satisfied, status }
    }

    pub fn is_generic(&self) -> bool {
        self.status == "generic"
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{},{},{}", self.lemma, self.params, fmt17(self.abs_value), fmt17(self.bound), self.satisfied, self.status)
    }
}

fn random_unit(rng: &mut ChaCha8Rng, p: u64, modulus: u64) -> i64 {
    loop {
        let x = rng.gen_range(1..modulus);
        if x % p != 0 {
            return x as i64;
        }
    }
}

/// Seeded A-sum sweep; one row per tuple, in generation order.
pub fn sweep_charsum_a(p: u64, r: u32, tuples: usize, seed: u64) -> Result<Vec<SweepRow>> {
    let pr = p.pow(r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 32) ^ r as u64);
    let prim = primitive_indices(p, r);
    let cases: Vec<(u64, ATuple)> = (0..tuples)
        .map(|_| {
            let index = prim[rng.gen_range(0..prim.len())];
            let q2 = random_unit(&mut rng, p, pr);
            let n = loop {
                let n = rng.gen_range(0..pr) as i64;
                if (n + q2) % p as i64 != 0 {
                    break n;
                }
            };
            let t = ATuple { m: random_unit(&mut rng, p, pr), m2: random_unit(&mut rng, p, pr), q: random_unit(&mut rng, p, pr), q2, n };
            (index, t)
        })
        .collect();
    cases
        .par_iter()
        .map(|(index, t)| {
            let chi = make_character(p, r, *index)?;
            let res = charsum_a_bruteforce(&chi, t)?;
            let params = format!("p={p};r={r};chi={index};m={};m'={};q={};q'={};n={}", t.m, t.m2, t.q, t.q2, t.n);
            Ok(SweepRow::from_result("A", params, &res))
        })
        .collect()
}

/// Seeded B-sum sweep over the given primes.
pub fn sweep_charsum_b(primes: &[u64], tuples: usize, seed: u64) -> Result<Vec<SweepRow>> {
    let mut cases = Vec::new();
    for &p1 in primes {
        require(is_prime(p1) && p1 > 2, "odd primes required")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p1 << 20));
        let others: Vec<u64> = (3..400).filter(|&x| is_prime(x) && x != p1).collect();
        for _ in 0..tuples {
            let index = rng.gen_range(1..p1 - 1);
            let t = BTuple {
                m: rng.gen_range(0..p1) as i64,
                m2: rng.gen_range(0..p1) as i64,
                n: rng.gen_range(0..p1) as i64,
                q: rng.gen_range(1..p1) as i64,
                p2: others[rng.gen_range(0..others.len())] as i64,
            };
            cases.push((p1, index, t));
        }
    }
    cases
        .par_iter()
        .map(|&(p1, index, t)| {
            let chi = make_character(p1, 1, index)?;
            let res = charsum_b_bruteforce(&chi, &t)?;
            let params = format!("P1={p1};chi={index};m={};m'={};n={};q={};P2={}", t.m, t.m2, t.n, t.q, t.p2);
            Ok(SweepRow::from_result("B", params, &res))
        })
        .collect()
}

/// Seeded Weil sweep: random `g` of degree <= 3 over degree <= 1, random `f` of degree <= 2.
pub fn sweep_weil(primes: &[u64], tuples: usize, seed: u64) -> Result<Vec<SweepRow>> {
    let mut cases = Vec::new();
    for &p in primes {
        require(is_prime(p) && p > 2, "odd primes required")?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 24) ^ 0x3E11);
        for _ in 0..tuples {
            let index = rng.gen_range(1..p - 1);
            let dn = rng.gen_range(1..=3usize);
            let dd = rng.gen_range(0..=1usize);
            let df = rng.gen_range(0..=2usize);
            let mut draw = |d: usize| -> Vec<i64> {
                let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(0..p) as i64).collect();
                c[d] = rng.gen_range(1..p) as i64;
                c
            };
            let g = RationalFn { num: draw(dn), den: draw(dd) };
            let f = RationalFn::poly(&draw(df));
            cases.push((p, index, g, f));
        }
    }
    Ok(cases
        .par_iter()
        .map(|(p, index, g, f)| {
            let chi = make_character(*p, 1, *index).expect("valid character");
            let join = |c: &[i64]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let params = format!("p={p};chi={index};g=[{}]/[{}];f=[{}]", join(&g.num), join(&g.den), join(&f.num));
            match weil_sum(&chi, g, f) {
                Ok(res) => SweepRow::from_result("Weil", params, &res),
                Err(e) => SweepRow {
                    lemma: "Weil".into(),
                    params,
                    abs_value: f64::NAN,
                    bound: f64::NAN,
                    satisfied: false,
                    status: format!("degenerate: {e}").replace(',', ";"),
                },
            }
        })
        .collect())
}
