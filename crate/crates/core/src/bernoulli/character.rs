//! Dirichlet characters stored as exponent tables: `ψ(a) = ζ_N^{e(a)}`.

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{is_prime, kronecker, primitive_root};
use crate::error::{Error, Result};
use crate::quadfield::is_fundamental_discriminant;

/// Marks residues not prime to the modulus.
const NONUNIT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirichletCharacter {
    /// The conductor `f`.
    pub modulus: u64,
    /// `N`, with values in `μ_N`.
    pub order: u32,
    pub label: String,
    #[serde(skip)]
    exponents: Vec<u32>,
}

impl DirichletCharacter {
    /// Builds a character from `e(a)` for `0 ≤ a < f`; `None` off the units.
    pub fn from_table(modulus: u64, order: u32, table: Vec<Option<u32>>, label: String) -> Result<Self> {
        if table.len() as u64 != modulus || order == 0 {
            return Err(Error::Unsupported("character table has the wrong size".into()));
        }
        let exponents: Vec<u32> = table
            .into_iter()
            .enumerate()
            .map(|(a, e)| match e {
                Some(e) if (a as u64).gcd(&modulus) == 1 => Ok(e % order),
                None if (a as u64).gcd(&modulus) != 1 => Ok(NONUNIT),
                _ => Err(Error::Unsupported(format!("table entry at {a} disagrees with gcd"))),
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            modulus,
            order,
            label,
            exponents,
        })
    }

    /// `a ↦ (D/a)` for a fundamental discriminant `D`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if !is_fundamental_discriminant(d) {
            return Err(Error::NotFundamental(d));
        }
        let f = d.unsigned_abs();
        let table = (0..f)
            .map(|a| match kronecker(d, a as i64) {
                1 => Some(0),
                -1 => Some(1),
                _ => None,
            })
            .collect();
        Self::from_table(f, 2, table, format!("chi_{d}"))
    }

    /// The character of order `n | ℓ-1` and conductor `ℓ` sending the least
    /// primitive root to `ζ_n^s`.
    pub fn prime_conductor(ell: u64, n: u32, s: u32) -> Result<Self> {
        if !is_prime(ell) {
            return Err(Error::NotPrime(ell as i64));
        }
        if n == 0 || (ell - 1) % n as u64 != 0 || s % n == 0 && n > 1 {
            return Err(Error::Unsupported(format!(
                "no primitive character of order {n} and conductor {ell} with exponent {s}"
            )));
        }
        let g = primitive_root(ell)?;
        let mut table = vec![None; ell as usize];
        let mut x = 1u64;
        for k in 0..ell - 1 {
            table[x as usize] = Some(((k * s as u64) % n as u64) as u32);
            x = x * g % ell;
        }
        Self::from_table(ell, n, table, format!("phi_{ell}^{s}"))
    }

    /// `ω` at an odd prime `p`: `ω(a) ≡ a mod p` once `ζ_{p-1}` is
    /// identified with the least primitive root.
    pub fn teichmuller(p: u64) -> Result<Self> {
        let mut c = Self::prime_conductor(p, (p - 1) as u32, 1)?;
        c.label = format!("omega_{p}");
        Ok(c)
    }

    /// `e(a)`, or `None` when `gcd(a, f) > 1`.
    pub fn exponent(&self, a: i64) -> Option<u32> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        match self.exponents[r] {
            NONUNIT => None,
            e => Some(e),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.order % 2 == 0 && self.exponent(-1) == Some(self.order / 2)
    }

    /// `ψ^c`.
    pub fn power(&self, c: u32) -> Self {
        Self {
            modulus: self.modulus,
            order: self.order,
            label: format!("{}^{c}", self.label),
            exponents: self
                .exponents
                .iter()
                .map(|&e| if e == NONUNIT { e } else { (e as u64 * c as u64 % self.order as u64) as u32 })
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        self.power(self.order - 1)
    }

    /// Exact order of the character, as opposed to the nominal `N`.
    pub fn exact_order(&self) -> u32 {
        let g = self
            .exponents
            .iter()
            .filter(|&&e| e != NONUNIT)
            .fold(self.order, |g, &e| g.gcd(&e));
        self.order / g
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.exponents
    }
}

/// Checks `ψ(ab) = ψ(a)ψ(b)` on every pair of units, for tests.
pub fn is_homomorphism(c: &DirichletCharacter) -> bool {
    let f = c.modulus;
    (1..f).all(|a| {
        (1..f).all(|b| match (c.exponent(a as i64), c.exponent(b as i64)) {
            (Some(x), Some(y)) => c.exponent((a * b % f) as i64) == Some((x + y) % c.order),
            _ => true,
        })
    })
}
