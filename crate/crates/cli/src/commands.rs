//! One function per command, each producing a table of rows and assertion outcomes.

use gl2twist::characters::{make_character, primitive_indices};
use gl2twist::charsums::{charsum_c_grid, sweep_charsum_a, sweep_charsum_b, sweep_weil, SweepRow};
use gl2twist::forms::{divisor_counts, CuspForm};
use gl2twist::lvalue::{central_value, decomposition_verify, exponent_sweep, required_coefficients, AfeConfig, ExponentRow, TestFunction};
use gl2twist::modarith::{gcd, is_prime};
use gl2twist::transforms::report::fmt17;
use gl2twist::transforms::voronoi::default_truncation;
use gl2twist::transforms::{
    delta_expand, poisson_verify, voronoi_window, DeltaConfig, PoissonFunction, SmoothWindow, VerificationReport, VoronoiKernel,
};

use crate::config::{Command, ConfigError, Params, RunConfig};
use crate::output::Table;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Library(#[from] gl2twist::Error),
}

impl RunError {
    /// 2 for unusable input, 1 for a numerical failure inside a suite.
    pub fn exit_code(&self) -> u8 {
        use gl2twist::Error as E;
        match self {
            RunError::Config(_) => 2,
            RunError::Library(e) => match e {
                E::NotInvertible { .. }
                | E::ModuliNotCoprime(..)
                | E::UnsupportedModulus(_)
                | E::IndexOutOfRange { .. }
                | E::PrimitivityRequired(_)
                | E::SizeLimit(_)
                | E::PreconditionViolated(_)
                | E::Config(_) => 2,
                _ => 1,
            },
        }
    }
}

type Run = Result<Table, RunError>;

fn bad(msg: impl Into<String>) -> RunError {
    RunError::Config(ConfigError(msg.into()))
}

pub fn run(cfg: &RunConfig) -> Run {
    let p = &cfg.params;
    match cfg.command {
        Command::VerifyDelta => verify_delta(p),
        Command::VerifyPoisson => verify_poisson(p),
        Command::VerifyVoronoi => verify_voronoi(p),
        Command::VerifyCharsumC => verify_charsum_c(p, cfg.seed),
        Command::SweepCharsumA => sweep_a(p, cfg.seed),
        Command::SweepCharsumB => sweep_rows(sweep_charsum_b(&odd_primes(p)?, p.tuples.unwrap_or(50), cfg.seed)?),
        Command::SweepWeil => sweep_rows(sweep_weil(&odd_primes(p)?, p.tuples.unwrap_or(50), cfg.seed)?),
        Command::VerifyDecomposition => verify_decomposition(p),
        Command::Lvalue => lvalue(p),
        Command::ExponentSweep => exponent(p, cfg.seed),
        Command::DumpCoeffs => dump_coeffs(p),
    }
}

fn report_row(table: &mut Table, mut report: VerificationReport, pass: bool) {
    report.pass = pass;
    table.push(report.csv_row(), pass);
}

fn verify_delta(p: &Params) -> Run {
    let nmax = p.nmax.unwrap_or(100) as i64;
    let q = p.q_max.unwrap_or(7.0);
    if q < 1.0 {
        return Err(bad("Q must be at least 1"));
    }
    let tol = p.tolerance.unwrap_or(1e-8);
    let mut table = Table::new(VerificationReport::CSV_HEADER);
    for n in -nmax..=nmax {
        let start = std::time::Instant::now();
        let expected = if n == 0 { 1.0 } else { 0.0 };
        let report = VerificationReport::real("delta", delta_expand(&DeltaConfig::new(n, q)), expected)
            .param("n", n)
            .param("Q", q)
            .timed(start);
        let pass = report.abs_err < tol;
        report_row(&mut table, report, pass);
    }
    Ok(table)
}

fn verify_poisson(p: &Params) -> Run {
    let mut table = Table::new(VerificationReport::CSV_HEADER);
    let gaussians: Vec<(f64, f64)> = match p.scale {
        Some(scale) => vec![(scale, p.shift.unwrap_or(0.0))],
        None if p.shift.is_some() => return Err(bad("shift requires scale")),
        None => [0.5, 0.7, 1.0, 1.9, 3.0].iter().flat_map(|&s| [0.0, 0.25, -0.45, 0.5].map(|t| (s, t))).collect(),
    };
    for (scale, shift) in gaussians {
        if scale <= 0.0 {
            return Err(bad("scale must be positive"));
        }
        let report = poisson_verify(&PoissonFunction::Gaussian { scale, shift })?;
        let pass = report.rel_err < p.tolerance.unwrap_or(1e-10);
        report_row(&mut table, report, pass);
    }
    if p.scale.is_none() {
        let report = poisson_verify(&PoissonFunction::Window(SmoothWindow::bump(0.35, 3.65, 1.0)))?;
        let pass = report.rel_err < p.tolerance.unwrap_or(1e-8);
        report_row(&mut table, report, pass);
    }
    Ok(table)
}

fn verify_voronoi(p: &Params) -> Run {
    let weight = p.weight.unwrap_or(12);
    let qs = p.q.clone().unwrap_or_else(|| (1..=12).collect());
    let xs = p.x.clone().unwrap_or_else(|| vec![100.0, 400.0]);
    let tol = p.tolerance.unwrap_or(1e-6);
    if qs.contains(&0) || xs.iter().any(|&x| x < 1.0) {
        return Err(bad("q >= 1 and X >= 1 required"));
    }
    let longest = qs
        .iter()
        .flat_map(|&q| xs.iter().map(move |&x| p.truncation.unwrap_or_else(|| default_truncation(q, x))))
        .max()
        .unwrap_or(1);
    let form = CuspForm::new(weight, 2 * longest + 10)?;
    let mut table = Table::new(VerificationReport::CSV_HEADER);
    for &x in &xs {
        for &q in &qs {
            let kernel = VoronoiKernel::new(&form, q, voronoi_window(x), p.truncation)?;
            let residues: Vec<i64> = match p.a {
                Some(a) if gcd(a.unsigned_abs(), q) == 1 => vec![a],
                Some(a) => return Err(bad(format!("a = {a} is not coprime to q = {q}"))),
                None => (1..=q as i64).filter(|&a| gcd(a as u64, q) == 1).collect(),
            };
            for a in residues {
                let report = kernel.report(a)?;
                let moved = report.get_meta("doubling_move").unwrap_or(f64::INFINITY);
                let pass = report.rel_err < tol && moved < 1e-8;
                report_row(&mut table, report, pass);
            }
        }
    }
    Ok(table)
}

fn verify_charsum_c(p: &Params, seed: u64) -> Run {
    let primes = p.p.clone().unwrap_or_else(|| vec![3, 5, 7]);
    if primes.iter().any(|&q| !is_prime(q) || q == 2) {
        return Err(bad("odd primes required"));
    }
    let max_modulus = p.max_modulus.unwrap_or(2000);
    let samples = p.literal_samples.unwrap_or(2000);
    let tol = p.tolerance.unwrap_or(1e-8);
    let mut table =
        Table::new("p,max_modulus,cases,zero_cases,zero_matched,max_abs_err,literal_checks,literal_max_abs_err,pass");
    for prime in primes {
        let s = charsum_c_grid(&[prime], max_modulus, samples, seed ^ prime)?;
        let pass = s.max_abs_err < tol && s.literal_max_abs_err < tol && s.zero_cases == s.zero_matched;
        let row = format!(
            "{prime},{max_modulus},{},{},{},{},{},{},{pass}",
            s.cases,
            s.zero_cases,
            s.zero_matched,
            fmt17(s.max_abs_err),
            s.literal_checks,
            fmt17(s.literal_max_abs_err)
        );
        table.push(row, pass);
    }
    Ok(table)
}

fn sweep_a(p: &Params, seed: u64) -> Run {
    let primes = p.p.clone().unwrap_or_else(|| vec![5, 7]);
    let rs = p.r.clone().unwrap_or_else(|| vec![3, 6]);
    if primes.iter().any(|&q| !is_prime(q) || q == 2) || rs.iter().any(|&r| r < 3) {
        return Err(bad("odd primes and r >= 3 required"));
    }
    let mut rows = Vec::new();
    for &prime in &primes {
        for &r in &rs {
            rows.extend(sweep_charsum_a(prime, r, p.tuples.unwrap_or(100), seed)?);
        }
    }
    sweep_rows(rows)
}

fn odd_primes(p: &Params) -> Result<Vec<u64>, RunError> {
    let primes = p.p.clone().unwrap_or_else(|| (3..=101).filter(|&q| is_prime(q)).collect());
    if primes.iter().any(|&q| !is_prime(q) || q == 2) {
        return Err(bad("odd primes required"));
    }
    Ok(primes)
}

/// Degenerate rows are reported but carry no assertion.
fn sweep_rows(rows: Vec<SweepRow>) -> Run {
    let mut table = Table::new(SweepRow::CSV_HEADER);
    for row in rows {
        if row.is_generic() {
            let pass = row.satisfied;
            table.push(row.csv_row(), pass);
        } else {
            table.rows.push(row.csv_row());
        }
    }
    Ok(table)
}

fn verify_decomposition(p: &Params) -> Run {
    let weight = p.weight.unwrap_or(12);
    let primes = p.p.clone().unwrap_or_else(|| vec![3, 5]);
    let rs = p.r.clone().unwrap_or_else(|| vec![2]);
    let ell = p.l.unwrap_or(1);
    let ns = p.big_n.clone().unwrap_or_else(|| vec![30.0, 50.0, 80.0]);
    let tol = p.tolerance.unwrap_or(1e-6);
    let top = ns.iter().cloned().fold(1.0, f64::max);
    let form = CuspForm::new(weight, (2.0 * top).ceil() as usize + 1)?;
    let mut table = Table::new(VerificationReport::CSV_HEADER);
    for &prime in &primes {
        for &r in &rs {
            let chi = make_character(prime, r, 1)?;
            for &n in &ns {
                let report = decomposition_verify(&form, &chi, n, ell)?;
                let pass = report.rel_err < tol;
                report_row(&mut table, report, pass);
            }
        }
    }
    Ok(table)
}

fn afe_config(p: &Params) -> Result<AfeConfig, RunError> {
    let mut cfg = AfeConfig::default();
    if let Some(name) = &p.test_function {
        cfg.test_function = serde_json::from_value::<TestFunction>(serde_json::Value::String(name.clone()))
            .map_err(|_| bad(format!("unknown test function `{name}` (unit, cosh, gaussian)")))?;
    }
    cfg.balance = p.balance.unwrap_or(cfg.balance);
    cfg.alt_balance = p.alt_balance.unwrap_or(cfg.alt_balance);
    cfg.truncation = p.truncation.or(cfg.truncation);
    if cfg.balance <= 0.0 || cfg.alt_balance <= 0.0 || cfg.balance == cfg.alt_balance {
        return Err(bad("balance and alt_balance must be positive and distinct"));
    }
    Ok(cfg)
}

fn lvalue(p: &Params) -> Run {
    let weight = p.weight.unwrap_or(12);
    let cfg = afe_config(p)?;
    let tol = p.tolerance.unwrap_or(1e-6);
    let primes = p.p.clone().unwrap_or_else(|| vec![3]);
    let rs = p.r.clone().unwrap_or_else(|| vec![3]);
    let mut need = 1;
    for &prime in &primes {
        need = need.max(required_coefficients(weight, prime, &rs, &cfg)?);
    }
    let form = CuspForm::new(weight, need)?;
    let mut table = Table::new("p,r,chi_index,re_L,im_L,abs_L,afe_residual,eps_re,eps_im,unit_re,unit_im,truncation,pass");
    for &prime in &primes {
        for &r in &rs {
            let indices = p.index.clone().unwrap_or_else(|| primitive_indices(prime, r));
            for idx in indices {
                let cv = central_value(&form, &make_character(prime, r, idx)?, &cfg)?;
                let pass = cv.afe_residual < tol;
                let row = format!(
                    "{prime},{r},{idx},{},{},{},{},{},{},{},{},{},{pass}",
                    fmt17(cv.value.re),
                    fmt17(cv.value.im),
                    fmt17(cv.value.norm()),
                    fmt17(cv.afe_residual),
                    fmt17(cv.root_number.re),
                    fmt17(cv.root_number.im),
                    cv.root_number_unit.re,
                    cv.root_number_unit.im,
                    cv.truncation
                );
                table.push(row, pass);
            }
        }
    }
    Ok(table)
}

fn exponent(p: &Params, seed: u64) -> Run {
    let weight = p.weight.unwrap_or(12);
    let cfg = afe_config(p)?;
    let tol = p.tolerance.unwrap_or(1e-6);
    let prime = match p.p.as_deref() {
        None => 3,
        Some([q]) => *q,
        Some(_) => return Err(bad("exponent-sweep takes a single p")),
    };
    let rs: Vec<u32> = match (&p.r, p.rmax) {
        (Some(_), Some(_)) => return Err(bad("give either r or rmax")),
        (Some(list), None) => list.clone(),
        (None, rmax) => (1..=rmax.unwrap_or(3)).collect(),
    };
    if rs.is_empty() || rs.contains(&0) {
        return Err(bad("r values must be positive"));
    }
    let form = CuspForm::new(weight, required_coefficients(weight, prime, &rs, &cfg)?)?;
    let result = exponent_sweep(&form, prime, &rs, p.samples, seed, &cfg)?;
    let mut table = Table::new(ExponentRow::CSV_HEADER);
    for row in &result.rows {
        table.push(row.csv_row(), row.afe_residual < tol);
    }
    table.check(result.within_reference);
    Ok(table)
}

fn dump_coeffs(p: &Params) -> Run {
    let weight = p.weight.unwrap_or(12);
    let nmax = p.nmax.unwrap_or(100);
    if nmax == 0 {
        return Err(bad("nmax must be positive"));
    }
    let form = CuspForm::new(weight, nmax)?;
    let d = divisor_counts(nmax);
    let mut table = Table::new("n,tau,lambda");
    for n in 1..=nmax {
        let lambda = form.lambda(n);
        table.push(format!("{n},{},{}", form.raw(n), fmt17(lambda)), lambda.abs() <= d[n] as f64 * (1.0 + 1e-12));
    }
    Ok(table)
}
