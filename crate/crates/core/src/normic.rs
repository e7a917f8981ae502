//! Hasse norm-residue symbols `(x, K/Q)_v` for quadratic `K`, computed by
//! associate numbers, and the global-norm test they give.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{crt, factorize_big, kronecker, valuation, CongruenceSystem};
use crate::error::{Error, Result};
use crate::quadfield::QuadraticField;

/// A place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// Symbols at the ramified primes and the infinite place, plus any
/// unramified place where the symbol is `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolVector {
    pub entries: Vec<(Place, i8)>,
}

impl SymbolVector {
    pub fn get(&self, place: Place) -> i8 {
        self.entries
            .iter()
            .find(|(p, _)| *p == place)
            .map_or(1, |&(_, s)| s)
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|&(_, s)| s == 1)
    }

    /// Bits at the ramified primes (1 for a symbol `-1`), in the order of
    /// `field.ramified_primes`.
    pub fn ramified_bits(&self, field: &QuadraticField) -> Vec<u8> {
        field
            .ramified_primes
            .iter()
            .map(|&p| u8::from(self.get(Place::Finite(p)) == -1))
            .collect()
    }
}

fn to_i64(n: &BigInt, what: &'static str) -> Result<i64> {
    n.to_i64().ok_or(Error::Overflow(what))
}

/// `p^k` as u64.
fn prime_power(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k).ok_or(Error::Overflow("prime power modulus"))
}

/// The `p`-adic unit part of `x / p^v` reduced modulo `p^k`.
fn unit_part_mod(x: &BigRational, p: u64, v: i64, k: u32) -> Result<i64> {
    let pk = BigInt::from(prime_power(p, k)?);
    let pb = BigInt::from(p);
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    if v > 0 {
        num /= pb.pow(v as u32);
    } else if v < 0 {
        den /= pb.pow((-v) as u32);
    }
    let inv = den
        .mod_floor(&pk)
        .modinv(&pk)
        .ok_or_else(|| Error::Internal("denominator not a unit".into()))?;
    to_i64(&(num * inv).mod_floor(&pk), "associate residue")
}

/// Parameters of an associate-number computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Associate {
    /// `v_p(x)`.
    pub valuation: i64,
    /// The unit part `w > 0`, so that `x' = p^v · w`.
    pub unit: i64,
    /// `x'` itself.
    pub value: BigRational,
}

/// A `p`-associate of `x` for the modulus `multiple · |D|`: the value
/// `x' = p^v w` with `w > 0` least such that `x'/x ≡ 1 mod p^{m_p}` and
/// `x' ≡ 1 mod q^{m_q}` at the other ramified `q`, where `m_q = v_q(modulus)`.
pub fn associate_number(
    x: &BigRational,
    p: u64,
    field: &QuadraticField,
    multiple: u64,
) -> Result<Associate> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    if !field.ramified_primes.contains(&p) {
        return Err(Error::NotRamified(p as i64));
    }
    if multiple == 0 {
        return Err(Error::Zero);
    }
    let modulus = BigInt::from(field.discriminant.unsigned_abs()) * multiple;
    let v = valuation(x, p)?;
    let mut system = CongruenceSystem::new();
    let mut primes: Vec<u64> = factorize_big(&modulus)?
        .into_iter()
        .map(|(q, _)| q.to_u64().expect("factor of a u64"))
        .collect();
    primes.sort_unstable();
    for q in primes {
        let k = crate::arith::valuation_big(&modulus, q)? as u32;
        let qk = prime_power(q, k)?;
        if q == p {
            system.push(unit_part_mod(x, p, v, k)?, qk);
        } else {
            // w ≡ p^{-v} mod q^k
            let pv = BigRational::from_integer(BigInt::from(p)).pow(-v as i32);
            system.push(unit_part_mod(&pv, q, 0, k)?, qk);
        }
    }
    let w = crt(&system)?;
    let w = i64::try_from(w).map_err(|_| Error::Overflow("associate number"))?;
    let value = BigRational::from_integer(BigInt::from(p)).pow(v as i32) * BigInt::from(w);
    Ok(Associate {
        valuation: v,
        unit: w,
        value,
    })
}

/// `(x, K/Q)_v` with the default modulus `|D|`.
pub fn hasse_symbol(x: &BigRational, field: &QuadraticField, place: Place) -> Result<i8> {
    hasse_symbol_with_modulus(x, field, place, 1)
}

/// `(x, K/Q)_v`, using `multiple · |D|` as modulus at ramified primes.
pub fn hasse_symbol_with_modulus(
    x: &BigRational,
    field: &QuadraticField,
    place: Place,
    multiple: u64,
) -> Result<i8> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    let d = field.discriminant;
    match place {
        Place::Infinite => Ok(if !field.is_real() && x.is_negative() { -1 } else { 1 }),
        Place::Finite(ell) if field.ramified_primes.contains(&ell) => {
            let a = associate_number(x, ell, field, multiple)?;
            Ok(kronecker(d, a.unit))
        }
        Place::Finite(ell) => {
            let v = valuation(x, ell)?;
            let k = kronecker(d, ell as i64);
            Ok(if v.rem_euclid(2) == 1 { k } else { 1 })
        }
    }
}

/// Primes dividing the numerator or denominator of `x`.
fn support(x: &BigRational) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for n in [x.numer(), x.denom()] {
        if n.abs().is_one() {
            continue;
        }
        for (p, _) in factorize_big(n)? {
            out.push(p.to_u64().ok_or(Error::Overflow("prime beyond u64"))?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// The symbols of `x` at every place where they can be nontrivial. Fails with
/// an internal error if the product formula does not hold.
pub fn symbol_vector(x: &BigRational, field: &QuadraticField) -> Result<SymbolVector> {
    symbol_vector_with_modulus(x, field, 1)
}

pub fn symbol_vector_with_modulus(
    x: &BigRational,
    field: &QuadraticField,
    multiple: u64,
) -> Result<SymbolVector> {
    let mut entries = Vec::new();
    for &p in &field.ramified_primes {
        entries.push((Place::Finite(p), hasse_symbol_with_modulus(x, field, Place::Finite(p), multiple)?));
    }
    for ell in support(x)? {
        if field.ramified_primes.contains(&ell) {
            continue;
        }
        let s = hasse_symbol(x, field, Place::Finite(ell))?;
        if s == -1 {
            entries.push((Place::Finite(ell), s));
        }
    }
    entries.sort_unstable();
    entries.push((Place::Infinite, hasse_symbol(x, field, Place::Infinite)?));
    let product: i8 = entries.iter().map(|&(_, s)| s).product();
    if product != 1 {
        return Err(Error::Internal(format!(
            "product formula fails for x = {x} in Q(sqrt({}))",
            field.m
        )));
    }
    Ok(SymbolVector { entries })
}

/// Whether `x ∈ N(K^×)`, by the Hasse norm theorem.
pub fn is_global_norm(x: &BigRational, field: &QuadraticField) -> Result<bool> {
    Ok(symbol_vector(x, field)?.is_trivial())
}
