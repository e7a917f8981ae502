//! Quadratic fields `Q(√m)`: discriminants, splitting of primes, units,
//! elements, ideals and the norm equation.

mod element;
mod ideal;
mod normeq;
mod unit;

pub use element::QuadElement;
pub use ideal::{form_of_ideal, ideal_of_form, principal_ideal, small_ideal_in_class, Ideal, PrimeKey};
pub use normeq::{integral_norm_solution, solve_norm_equation};
pub use unit::fundamental_unit;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime, is_squarefree, kronecker};
use crate::error::{Error, Result};
use crate::forms::QuadForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

/// `D ≡ 1 mod 4` squarefree, or `D = 4m` with `m ≡ 2, 3 mod 4` squarefree.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// The field `Q(√m)` for squarefree `m ∉ {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticField {
    pub m: i64,
    pub discriminant: i64,
    pub ramified_primes: Vec<u64>,
    /// `ε > 1` generating the units modulo ±1 (real fields only).
    pub fundamental_unit: Option<QuadElement>,
    pub unit_norm: Option<i8>,
    /// Number of roots of unity.
    pub torsion_order: u32,
}

impl QuadraticField {
    pub fn new(m: i64) -> Result<Self> {
        if m == 0 || m == 1 {
            return Err(Error::NotQuadratic(m));
        }
        if !is_squarefree(m) {
            return Err(Error::NotSquarefree(m));
        }
        let discriminant = if m.rem_euclid(4) == 1 {
            m
        } else {
            m.checked_mul(4).ok_or(Error::Overflow("discriminant"))?
        };
        let ramified_primes = factorize(discriminant)?.primes().collect();
        let (fundamental_unit, unit_norm) = if m > 0 {
            let (u, n) = fundamental_unit(m)?;
            (Some(u), Some(n))
        } else {
            (None, None)
        };
        let torsion_order = match m {
            -1 => 4,
            -3 => 6,
            _ => 2,
        };
        Ok(Self {
            m,
            discriminant,
            ramified_primes,
            fundamental_unit,
            unit_norm,
            torsion_order,
        })
    }

    pub fn from_discriminant(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::NotFundamental(d));
        }
        Self::new(if d % 4 == 0 { d / 4 } else { d })
    }

    /// Accepts either a squarefree `m` or a fundamental discriminant; a value
    /// that is both (`D ≡ 1 mod 4`) names the same field either way.
    pub fn from_m_or_discriminant(v: i64) -> Result<Self> {
        if is_squarefree(v) {
            Self::new(v)
        } else {
            Self::from_discriminant(v)
        }
    }

    pub fn is_real(&self) -> bool {
        self.m > 0
    }

    pub fn splitting_type(&self, ell: u64) -> Result<SplittingType> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell as i64));
        }
        Ok(match kronecker(self.discriminant, ell as i64) {
            0 => SplittingType::Ramified,
            1 => SplittingType::Split,
            _ => SplittingType::Inert,
        })
    }

    /// All `b ∈ [0, 2ℓ)` with `b ≡ D mod 2` and `b² ≡ D mod 4ℓ`, ascending.
    fn ideal_roots(&self, ell: u64) -> Vec<i64> {
        let d = self.discriminant as i128;
        let q = ell as i128;
        let parity = d.rem_euclid(2);
        // b² ≡ D mod 4ℓ only depends on b mod 2ℓ
        let mut out = Vec::new();
        let candidates: Vec<i128> = if ell <= 3 {
            (0..2 * q).collect()
        } else {
            match crate::arith::sqrt_mod_prime(self.discriminant, ell) {
                Some(r) => {
                    let r = r as i128;
                    [r, (q - r) % q]
                        .into_iter()
                        .flat_map(|s| [s, s + q])
                        .collect()
                }
                None => Vec::new(),
            }
        };
        for b in candidates {
            if b.rem_euclid(2) == parity && (b * b - d).rem_euclid(4 * q) == 0 {
                out.push(b as i64);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The degree-one prime ideal `ℓZ + ((-b + √D)/2)Z` for the least
    /// admissible `b`.
    pub fn prime_ideal_above(&self, ell: u64) -> Result<PrimeIdeal> {
        let kind = self.splitting_type(ell)?;
        if kind == SplittingType::Inert {
            return Err(Error::NoDegreeOneIdeal(ell as i64));
        }
        let b = *self
            .ideal_roots(ell)
            .first()
            .ok_or_else(|| Error::Internal(format!("no square root of D mod 4*{ell}")))?;
        self.prime_ideal(ell, Some(b))
    }

    /// Every prime ideal above `ℓ`: two for split, one otherwise.
    pub fn prime_ideals_above(&self, ell: u64) -> Result<Vec<PrimeIdeal>> {
        match self.splitting_type(ell)? {
            SplittingType::Inert => Ok(vec![self.prime_ideal(ell, None)?]),
            _ => self
                .ideal_roots(ell)
                .into_iter()
                .map(|b| self.prime_ideal(ell, Some(b)))
                .collect(),
        }
    }

    /// The prime ideal with the given key. `b = None` selects the inert
    /// prime `(ℓ)`.
    pub fn prime_ideal(&self, ell: u64, b: Option<i64>) -> Result<PrimeIdeal> {
        let kind = self.splitting_type(ell)?;
        match (kind, b) {
            (SplittingType::Inert, None) => Ok(PrimeIdeal {
                ell,
                kind,
                b: None,
                form: QuadForm::principal(self.discriminant),
            }),
            (SplittingType::Inert, Some(_)) => Err(Error::NoDegreeOneIdeal(ell as i64)),
            (_, None) => Err(Error::Unsupported(format!("{ell} is not inert"))),
            (_, Some(b)) => {
                let b = b.rem_euclid(2 * ell as i64);
                if !self.ideal_roots(ell).contains(&b) {
                    return Err(Error::Unsupported(format!(
                        "b = {b} does not define an ideal above {ell}"
                    )));
                }
                Ok(PrimeIdeal {
                    ell,
                    kind,
                    b: Some(b),
                    form: QuadForm::from_ab(ell as i64, b, self.discriminant)?,
                })
            }
        }
    }

    pub fn element(&self, x: i64, y: i64, z: i64) -> QuadElement {
        QuadElement::from_ints(self.m, x, y, z)
    }

    pub fn solve_norm_equation(&self, x: &BigRational) -> Result<Option<QuadElement>> {
        solve_norm_equation(self, x)
    }
}

/// A prime ideal of the maximal order, keyed by `(ℓ, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub ell: u64,
    pub kind: SplittingType,
    /// `b ∈ [0, 2ℓ)` with `b² ≡ D mod 4ℓ`; `None` for an inert prime.
    pub b: Option<i64>,
    /// The form `(ℓ, b, (b² - D)/4ℓ)`; the principal form for inert primes.
    pub form: QuadForm,
}

impl PrimeIdeal {
    pub fn key(&self) -> PrimeKey {
        PrimeKey {
            ell: self.ell,
            b: self.b,
        }
    }

    /// Absolute norm: `ℓ` or `ℓ²`.
    pub fn norm(&self) -> u64 {
        match self.kind {
            SplittingType::Inert => self.ell * self.ell,
            _ => self.ell,
        }
    }

    /// The Galois conjugate ideal (itself unless split).
    pub fn conjugate(&self) -> PrimeIdeal {
        match (self.kind, self.b) {
            (SplittingType::Split, Some(b)) => {
                let two_l = 2 * self.ell as i64;
                let nb = (-b).rem_euclid(two_l);
                let d = self.form.discriminant();
                PrimeIdeal {
                    b: Some(nb),
                    form: QuadForm::from_ab(self.ell as i64, nb, d)
                        .expect("conjugate root is admissible"),
                    ..*self
                }
            }
            _ => *self,
        }
    }
}

/// `N(e) = (x² - m y²)/z²`.
pub fn norm(e: &QuadElement) -> BigRational {
    e.norm()
}
