//! Dirichlet characters modulo `p^r` and modulo products of coprime prime powers.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{crt_combine, euler_phi, gcd, is_prime, mul_mod, primitive_root, reduce, MAX_MODULUS};
use crate::phase::e_rational;

/// Values above this modulus are refused; characters store a full value table.
pub const MAX_CHARACTER_MODULUS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub p: u64,
    pub r: u32,
    pub index: u64,
    pub generator: u64,
}

impl Component {
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.r)
    }

    pub fn phi(&self) -> u64 {
        euler_phi(self.modulus())
    }

    /// Primitivity by the index criterion.
    pub fn is_primitive(&self) -> bool {
        if self.r == 1 {
            self.index != 0
        } else {
            self.index % self.p != 0
        }
    }
}

/// Serializable description of a character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum CharacterSpec {
    PrimePower { p: u64, r: u32, index: u64 },
    TwoPrime { p1: u64, index1: u64, p2: u64, index2: u64 },
}

impl CharacterSpec {
    pub fn build(&self) -> Result<DirichletCharacter> {
        match *self {
            CharacterSpec::PrimePower { p, r, index } => make_character(p, r, index),
            CharacterSpec::TwoPrime { p1, index1, p2, index2 } => {
                compose(&make_character(p1, 1, index1)?, &make_character(p2, 1, index2)?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussSum {
    pub value: Complex64,
    pub modulus: u64,
}

#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    components: Vec<Component>,
    values: Arc<Vec<Complex64>>,
    primitive: bool,
    gauss: Arc<OnceLock<Complex64>>,
}

/// The character `chi(g^t) = e(index * t / phi(p^r))` for the least primitive root `g`.
pub fn make_character(p: u64, r: u32, index: u64) -> Result<DirichletCharacter> {
    if p == 2 || !is_prime(p) || r == 0 {
        return Err(Error::UnsupportedModulus(p));
    }
    let modulus = p
        .checked_pow(r)
        .filter(|&m| m <= MAX_CHARACTER_MODULUS)
        .ok_or(Error::UnsupportedModulus(p))?;
    let phi = euler_phi(modulus);
    if index >= phi {
        return Err(Error::IndexOutOfRange { index, modulus });
    }
    let g = primitive_root(p, r)?;
    let mut values = vec![Complex64::new(0.0, 0.0); modulus as usize];
    let roots: Vec<Complex64> = (0..phi).map(|j| e_rational(j as i128, phi)).collect();
    let mut x = 1u64;
    for t in 0..phi {
        values[x as usize] = roots[mul_mod(index, t, phi) as usize];
        x = mul_mod(x, g, modulus);
    }
    let comp = Component { p, r, index, generator: g };
    Ok(DirichletCharacter {
        modulus,
        primitive: comp.is_primitive(),
        components: vec![comp],
        values: Arc::new(values),
        gauss: Arc::new(OnceLock::new()),
    })
}

/// Product character modulo `P1 * P2`; both factors must be primitive.
pub fn compose(chi1: &DirichletCharacter, chi2: &DirichletCharacter) -> Result<DirichletCharacter> {
    if !chi1.primitive || !chi2.primitive {
        return Err(Error::PrimitivityRequired("compose needs primitive factors".into()));
    }
    let (m1, m2) = (chi1.modulus, chi2.modulus);
    if gcd(m1, m2) != 1 {
        return Err(Error::ModuliNotCoprime(m1, m2));
    }
    let modulus = m1.checked_mul(m2).filter(|&m| m <= MAX_CHARACTER_MODULUS.min(MAX_MODULUS));
    let modulus = modulus.ok_or(Error::UnsupportedModulus(m1.saturating_mul(m2)))?;
    let mut values = vec![Complex64::new(0.0, 0.0); modulus as usize];
    for a in 0..m1 {
        for b in 0..m2 {
            let n = crt_combine(a, m1, b, m2)?;
            values[n as usize] = chi1.values[a as usize] * chi2.values[b as usize];
        }
    }
    let mut components = chi1.components.clone();
    components.extend(chi2.components.iter().copied());
    Ok(DirichletCharacter {
        modulus,
        components,
        values: Arc::new(values),
        primitive: true,
        gauss: Arc::new(OnceLock::new()),
    })
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Index of a prime-power character; for products, the index of the first factor.
    pub fn index(&self) -> u64 {
        self.components[0].index
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn phi(&self) -> u64 {
        euler_phi(self.modulus)
    }

    pub fn spec(&self) -> CharacterSpec {
        match self.components.as_slice() {
            [c] => CharacterSpec::PrimePower { p: c.p, r: c.r, index: c.index },
            [c1, c2] => CharacterSpec::TwoPrime { p1: c1.p, index1: c1.index, p2: c2.p, index2: c2.index },
            _ => unreachable!("characters have one or two components"),
        }
    }

    #[inline]
    pub fn evaluate(&self, n: i64) -> Complex64 {
        self.values[reduce(n, self.modulus) as usize]
    }

    /// Evaluation at a residue already reduced into `[0, modulus)`.
    #[inline]
    pub fn at(&self, n: u64) -> Complex64 {
        self.values[n as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn parity(&self) -> i32 {
        if self.evaluate(-1).re > 0.0 {
            1
        } else {
            -1
        }
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im.abs() < 1e-12)
    }

    pub fn order(&self) -> u64 {
        self.components.iter().fold(1u64, |acc, c| {
            let phi = c.phi();
            let ord = phi / gcd(c.index, phi);
            acc / gcd(acc, ord) * ord
        })
    }

    pub fn conj(&self) -> DirichletCharacter {
        let values = self.values.iter().map(|v| v.conj()).collect();
        let components = self
            .components
            .iter()
            .map(|c| {
                let phi = c.phi();
                Component { index: (phi - c.index) % phi, ..*c }
            })
            .collect();
        DirichletCharacter {
            modulus: self.modulus,
            components,
            values: Arc::new(values),
            primitive: self.primitive,
            gauss: Arc::new(OnceLock::new()),
        }
    }

    /// Primitivity from the definition: nontrivial on `1 + (P/p)Z` for every `p | P`.
    pub fn is_primitive_by_definition(&self) -> bool {
        let m = self.modulus;
        self.components.iter().all(|c| {
            let step = m / c.p;
            (1..c.p).any(|j| {
                let u = 1 + j * step;
                gcd(u, m) == 1 && (self.at(u % m) - 1.0).norm() > 1e-9
            })
        })
    }

    /// `sum_{b mod P} chi(b) e(b/P)` by direct summation, cached.
    pub fn gauss_sum(&self) -> GaussSum {
        let value = *self.gauss.get_or_init(|| {
            let m = self.modulus;
            (1..m).map(|b| self.at(b) * e_rational(b as i128, m)).sum()
        });
        GaussSum { value, modulus: self.modulus }
    }
}

/// All primitive indices modulo `p^r`, ascending.
pub fn primitive_indices(p: u64, r: u32) -> Vec<u64> {
    let phi = euler_phi(p.pow(r));
    (0..phi).filter(|&i| if r == 1 { i != 0 } else { i % p != 0 }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn legendre_mod_5() {
        let chi = make_character(5, 1, 2).unwrap();
        let legendre = |n: i64| match n.rem_euclid(5) {
            0 => 0.0,
            1 | 4 => 1.0,
            _ => -1.0,
        };
        for n in -20..20 {
            assert!(close(chi.evaluate(n), Complex64::new(legendre(n), 0.0), 1e-14));
        }
        assert!(close(chi.gauss_sum().value, Complex64::new(5f64.sqrt(), 0.0), 1e-12));
    }

    #[test]
    fn trivial_gauss_sum_is_mobius() {
        let chi = make_character(5, 1, 0).unwrap();
        assert!(!chi.is_primitive());
        assert!(close(chi.gauss_sum().value, Complex64::new(-1.0, 0.0), 1e-12));
    }

    #[test]
    fn imprimitive_mod_9() {
        let chi = make_character(3, 2, 3).unwrap();
        assert!(!chi.is_primitive());
        assert!(!chi.is_primitive_by_definition());
        assert!(matches!(make_character(3, 2, 6), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn primitive_flag_matches_definition() {
        for &(p, r) in &[(3u64, 1u32), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 2)] {
            let phi = euler_phi(p.pow(r));
            for index in 0..phi {
                let chi = make_character(p, r, index).unwrap();
                assert_eq!(chi.is_primitive(), chi.is_primitive_by_definition(), "p={p} r={r} index={index}");
            }
        }
    }

    #[test]
    fn multiplicativity_exhaustive() {
        for &(p, r) in &[(3u64, 5u32), (7, 3), (5, 2), (13, 1)] {
            let m = p.pow(r) as i64;
            for index in [1, 2, euler_phi(m as u64) - 1] {
                let chi = make_character(p, r, index).unwrap();
                for a in 0..m {
                    for b in 0..m {
                        assert!(close(chi.evaluate(a * b), chi.evaluate(a) * chi.evaluate(b), 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn gauss_sum_identities() {
        for &(p, r) in &[(3u64, 1u32), (3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 2)] {
            let m = p.pow(r);
            for index in primitive_indices(p, r) {
                let chi = make_character(p, r, index).unwrap();
                let tau = chi.gauss_sum().value;
                assert!((tau.norm() - (m as f64).sqrt()).abs() < 1e-9 * (m as f64).sqrt());
                let tau_bar = chi.conj().gauss_sum().value;
                let sign = chi.parity() as f64;
                assert!(close(tau * tau_bar, Complex64::new(sign * m as f64, 0.0), 1e-8), "p={p} r={r} index={index}");
                assert!(close(tau_bar.conj(), tau * sign, 1e-9));
            }
        }
    }

    #[test]
    fn separability() {
        for &(p, r) in &[(3u64, 2u32), (3, 3), (5, 2), (7, 3), (7, 1)] {
            let m = p.pow(r);
            for index in primitive_indices(p, r).into_iter().take(6) {
                let chi = make_character(p, r, index).unwrap();
                let tau = chi.gauss_sum().value;
                for t in 0..m {
                    let s: Complex64 = (0..m).map(|b| chi.at(b) * e_rational((b * t) as i128, m)).sum();
                    let expected = if gcd(t, m) == 1 { chi.conj().at(t) * tau } else { Complex64::new(0.0, 0.0) };
                    assert!(close(s, expected, 1e-9), "p={p} r={r} t={t}");
                }
            }
        }
    }

    #[test]
    fn orthogonality() {
        let m = 49u64;
        let chars: Vec<_> = (0..euler_phi(m)).map(|i| make_character(7, 2, i).unwrap()).collect();
        for a in 0..m {
            for b in 0..m {
                let s: Complex64 = chars.iter().map(|c| c.at(a) * c.at(b).conj()).sum();
                let expected = if a == b && gcd(a, m) == 1 { euler_phi(m) as f64 } else { 0.0 };
                assert!(close(s, Complex64::new(expected, 0.0), 1e-9));
            }
        }
    }

    #[test]
    fn compose_two_primes() {
        let c3 = make_character(3, 1, 1).unwrap();
        let c5 = make_character(5, 1, 2).unwrap();
        let chi = compose(&c3, &c5).unwrap();
        assert_eq!(chi.modulus(), 15);
        assert!(close(chi.evaluate(2), Complex64::new(1.0, 0.0), 1e-14));
        assert!(close(chi.evaluate(45), Complex64::new(0.0, 0.0), 1e-14));
        assert!(chi.is_primitive_by_definition());
        for n in 0..15 {
            assert!(close(chi.evaluate(n), c3.evaluate(n) * c5.evaluate(n), 1e-14));
        }
        let trivial = make_character(3, 1, 0).unwrap();
        assert!(matches!(compose(&trivial, &c5), Err(Error::PrimitivityRequired(_))));
        assert!(matches!(compose(&c3, &c3), Err(Error::ModuliNotCoprime(3, 3))));
    }

    #[test]
    fn spec_roundtrip() {
        let spec = CharacterSpec::PrimePower { p: 3, r: 3, index: 4 };
        let chi = spec.build().unwrap();
        assert_eq!(chi.spec(), spec);
        let two = CharacterSpec::TwoPrime { p1: 3, index1: 1, p2: 7, index2: 2 };
        assert_eq!(two.build().unwrap().spec(), two);
    }
}
