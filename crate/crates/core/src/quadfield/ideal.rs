use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{PrimeIdeal, QuadElement, QuadraticField, SplittingType};
use crate::arith::{factorize_big, factorize_u64, valuation_big};
use crate::error::{Error, Result};
use crate::forms::QuadForm;

/// Identifies a prime ideal: `(ℓ, Some(b))` for a degree-one prime,
/// `(ℓ, None)` for an inert one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeKey {
    pub ell: u64,
    pub b: Option<i64>,
}

/// A fractional ideal as a finite product of prime ideals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "IdealFactors", from = "IdealFactors")]
pub struct Ideal {
    pub exponents: BTreeMap<PrimeKey, i64>,
}

/// Serialized form of [`Ideal`]: JSON maps need string keys.
#[derive(Serialize, Deserialize)]
struct IdealFactors {
    factors: Vec<(PrimeKey, i64)>,
}

impl From<Ideal> for IdealFactors {
    fn from(i: Ideal) -> Self {
        Self {
            factors: i.exponents.into_iter().collect(),
        }
    }
}

impl From<IdealFactors> for Ideal {
    fn from(f: IdealFactors) -> Self {
        let mut out = Ideal::default();
        for (k, e) in f.factors {
            out.add(k, e);
        }
        out
    }
}

impl Ideal {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn prime(p: &PrimeIdeal, e: i64) -> Self {
        let mut out = Self::default();
        out.add(p.key(), e);
        out
    }

    pub fn add(&mut self, key: PrimeKey, e: i64) {
        let v = self.exponents.entry(key).or_insert(0);
        *v += e;
        if *v == 0 {
            self.exponents.remove(&key);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, &e) in &other.exponents {
            out.add(k, e);
        }
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut out = Self::default();
        if e != 0 {
            for (&k, &v) in &self.exponents {
                out.add(k, v * e);
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponent(&self, key: &PrimeKey) -> i64 {
        self.exponents.get(key).copied().unwrap_or(0)
    }

    /// Absolute norm as a rational `num/den`.
    pub fn norm(&self, field: &QuadraticField) -> Result<num_rational::BigRational> {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (k, &e) in &self.exponents {
            let p = field.prime_ideal(k.ell, k.b)?;
            let n = BigInt::from(p.norm()).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= n;
            } else {
                den *= n;
            }
        }
        Ok(num_rational::BigRational::new(num, den))
    }

    /// Image under the nontrivial automorphism.
    pub fn conjugate(&self, field: &QuadraticField) -> Result<Self> {
        let mut out = Self::default();
        for (k, &e) in &self.exponents {
            let p = field.prime_ideal(k.ell, k.b)?;
            out.add(p.conjugate().key(), e);
        }
        Ok(out)
    }
}

/// The reduced form attached to the narrow class of `ideal`.
pub fn form_of_ideal(field: &QuadraticField, ideal: &Ideal) -> Result<QuadForm> {
    let mut f = QuadForm::principal(field.discriminant).reduce()?;
    for (k, &e) in &ideal.exponents {
        let p = field.prime_ideal(k.ell, k.b)?;
        if p.kind == SplittingType::Inert {
            continue;
        }
        let g = if e > 0 { p.form } else { p.form.conjugate() };
        for _ in 0..e.unsigned_abs() {
            f = f.compose(&g)?;
        }
    }
    Ok(f)
}

/// The integral ideal `aZ + ((-b + √D)/2)Z` of a primitive form with `a > 0`.
pub fn ideal_of_form(field: &QuadraticField, f: &QuadForm) -> Result<Ideal> {
    if f.a <= 0 || f.discriminant() != field.discriminant {
        return Err(Error::Unsupported(format!("{f} does not define an ideal of Q(√{})", field.m)));
    }
    let mut out = Ideal::unit();
    for (q, e) in factorize_u64(f.a as u64)? {
        let p = field.prime_ideal(q, Some(f.b.rem_euclid(2 * q as i64)))?;
        out.add(p.key(), e as i64);
    }
    Ok(out)
}

/// An integral ideal of least norm among the reduced forms (with `a > 0`)
/// of the narrow class of `ideal`.
pub fn small_ideal_in_class(field: &QuadraticField, ideal: &Ideal) -> Result<Ideal> {
    let f = form_of_ideal(field, ideal)?;
    let best = if field.discriminant < 0 {
        f
    } else {
        f.cycle()?
            .into_iter()
            .filter(|g| g.a > 0)
            .min_by_key(|g| (g.a, g.b))
            .ok_or_else(|| Error::Internal(format!("cycle of {f} has no form with a > 0")))?
    };
    ideal_of_form(field, &best)
}

/// A root `r` of `r² ≡ m (mod q^k)` with `r ≡ hint` modulo `q` (odd `q`)
/// or modulo 4 (`q = 2`, `m ≡ 1 mod 8`); for `q = 2` the result is only
/// determined modulo `2^{k-1}`.
fn qadic_sqrt(m: &BigInt, q: u64, k: u32, hint: &BigInt) -> Result<BigInt> {
    let qb = BigInt::from(q);
    if q == 2 {
        let mut r = hint.mod_floor(&BigInt::from(4));
        let mut j = 3u32;
        while j < k + 1 {
            // r² ≡ m mod 2^j; pick r or r + 2^{j-1} so that it holds mod 2^{j+1}
            let modulus = BigInt::one() << (j + 1);
            if !(&r * &r - m).mod_floor(&modulus).is_zero() {
                r += BigInt::one() << (j - 1);
            }
            j += 1;
        }
        let modulus = BigInt::one() << k.max(3);
        if !(&r * &r - m).mod_floor(&modulus).is_zero() {
            return Err(Error::Internal("2-adic square root did not lift".into()));
        }
        return Ok(r);
    }
    let mut r = hint.mod_floor(&qb);
    let mut pk = qb.clone();
    let mut e = 1u32;
    while e < k {
        let e2 = (2 * e).min(k);
        pk = qb.pow(e2);
        // Newton step r ← r - (r² - m)/(2r)
        let inv = (BigInt::from(2) * &r)
            .modinv(&pk)
            .ok_or_else(|| Error::Internal("2r not invertible in Hensel step".into()))?;
        r = (&r - (&r * &r - m) * inv).mod_floor(&pk);
        e = e2;
    }
    if !(&r * &r - m).mod_floor(&pk).is_zero() {
        return Err(Error::Internal(format!("{q}-adic square root did not lift")));
    }
    Ok(r)
}

/// The image of `√m` in `Z/q^k` under the embedding attached to the split
/// prime `𝔮_b`.
fn sqrt_m_at(field: &QuadraticField, q: u64, b: i64, k: u32) -> Result<BigInt> {
    let m = BigInt::from(field.m);
    let hint = if q == 2 || field.discriminant == field.m {
        BigInt::from(b)
    } else {
        // √D = 2√m, so √m ≡ b/2 mod q
        let qb = BigInt::from(q);
        BigInt::from(b) * BigInt::from(2).modinv(&qb).expect("odd q") % qb
    };
    qadic_sqrt(&m, q, k, &hint)
}

/// `v_𝔮(x + y√m)` for the split prime `𝔮_b` above `q`.
fn split_valuation(field: &QuadraticField, q: u64, b: i64, x: &BigInt, y: &BigInt) -> Result<i64> {
    let n = x * x - BigInt::from(field.m) * y * y;
    let vn = valuation_big(&n, q)?;
    let k = (vn + 2) as u32;
    let r = sqrt_m_at(field, q, b, k)?;
    let modulus = BigInt::from(q).pow(k - 1);
    let t = (x + y * r).mod_floor(&modulus);
    if t.is_zero() {
        return Err(Error::Internal(format!("valuation at {q} exceeds norm valuation")));
    }
    Ok(valuation_big(&t, q)?.min(vn))
}

/// Prime factorization of the principal ideal `(α)`.
pub fn principal_ideal(field: &QuadraticField, alpha: &QuadElement) -> Result<Ideal> {
    if alpha.is_zero() {
        return Err(Error::Zero);
    }
    if alpha.m != field.m {
        return Err(Error::Unsupported("element of a different field".into()));
    }
    let num_norm = alpha.norm_numerator();
    let mut primes: Vec<BigInt> = factorize_big(&num_norm)?.into_iter().map(|(p, _)| p).collect();
    primes.extend(factorize_big(&alpha.z)?.into_iter().map(|(p, _)| p));
    primes.sort();
    primes.dedup();
    let mut out = Ideal::default();
    for p in primes {
        let q = p
            .to_u64()
            .ok_or(Error::Overflow("prime ideal above a prime beyond u64"))?;
        let vz = valuation_big(&alpha.z, q)?;
        let vn = valuation_big(&num_norm, q)?;
        match field.splitting_type(q)? {
            SplittingType::Ramified => {
                let pi = field.prime_ideal_above(q)?;
                out.add(pi.key(), vn - 2 * vz);
            }
            SplittingType::Inert => {
                out.add(PrimeKey { ell: q, b: None }, vn / 2 - vz);
            }
            SplittingType::Split => {
                for pi in field.prime_ideals_above(q)? {
                    let b = pi.b.expect("split prime has b");
                    let v = split_valuation(field, q, b, &alpha.x, &alpha.y)?;
                    out.add(pi.key(), v - vz);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_representatives_keep_the_class() {
        for d in [328i64, -9736, 12, 136, -84, 1365] {
            let k = QuadraticField::from_discriminant(d).unwrap();
            let primes: Vec<_> = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29]
                .iter()
                .filter_map(|&l| k.prime_ideal_above(l).ok())
                .collect();
            let mut a = Ideal::unit();
            for (i, p) in primes.iter().enumerate() {
                a = a.mul(&Ideal::prime(p, (i as i64 % 3) - 1 + 2 * (i as i64 % 2)));
            }
            let small = small_ideal_in_class(&k, &a).unwrap();
            let ratio = a.mul(&small.inverse());
            let f = form_of_ideal(&k, &ratio).unwrap();
            let g = crate::forms::FormClassGroup::new(d).unwrap();
            assert_eq!(g.class_of_form(&f).unwrap(), g.identity(), "D = {d}");
            assert!(small.exponents.values().all(|&e| e > 0));
            assert!(small.norm(&k).unwrap() <= num_rational::BigRational::from_integer(d.abs().into()));
        }
        // (√3) has a generator of norm -3, so it is not narrowly principal
        let k = QuadraticField::new(3).unwrap();
        let p3 = Ideal::prime(&k.prime_ideal_above(3).unwrap(), 1);
        let sqrt3 = principal_ideal(&k, &k.element(0, 1, 1)).unwrap();
        assert_eq!(sqrt3, p3);
        let g = crate::forms::FormClassGroup::new(12).unwrap();
        assert_ne!(g.class_of_form(&form_of_ideal(&k, &p3).unwrap()).unwrap(), g.identity());
    }

    fn key(ell: u64, b: i64) -> PrimeKey {
        PrimeKey { ell, b: Some(b) }
    }

    #[test]
    fn factor_elements_of_82() {
        let k = QuadraticField::new(82).unwrap();
        // 73 + 8√82 has norm 3^4 and is not divisible by 3, so (α) = 𝔮^4
        let a = principal_ideal(&k, &k.element(73, 8, 1)).unwrap();
        assert_eq!(a.exponents.len(), 1);
        let (&kk, &e) = a.exponents.iter().next().unwrap();
        assert_eq!((kk.ell, e), (3, 4));
        // (65 + 7√82)/3 has norm 23
        let b = principal_ideal(&k, &k.element(65, 7, 3)).unwrap();
        let total: i64 = b.exponents.values().sum();
        assert_eq!(b.norm(&k).unwrap(), num_rational::BigRational::from_integer(23.into()));
        assert_eq!(total, 1);
        assert_eq!(b.exponent(&key(3, 2)) + b.exponent(&key(3, 4)), 0);
        assert_eq!(b.exponent(&key(3, 2)).abs(), 1);
    }

    #[test]
    fn rational_and_ramified() {
        let k = QuadraticField::new(82).unwrap();
        let i = principal_ideal(&k, &k.element(6, 0, 1)).unwrap();
        assert_eq!(i.exponent(&key(2, 0)), 2);
        assert_eq!(i.exponent(&key(3, 2)), 1);
        assert_eq!(i.exponent(&key(3, 4)), 1);
        let s = principal_ideal(&k, &k.element(0, 1, 1)).unwrap();
        assert_eq!(s.exponent(&key(2, 0)), 1);
        assert_eq!(s.exponent(&key(41, 0)), 1);
        let seven = principal_ideal(&k, &k.element(7, 0, 1)).unwrap();
        assert_eq!(seven.exponent(&PrimeKey { ell: 7, b: None }), 1);
    }

    #[test]
    fn norm_matches_ideal_norm() {
        for m in [-23i64, -5, 2, 17, 82, 33] {
            let k = QuadraticField::new(m).unwrap();
            for (x, y, z) in [(5, 3, 1), (7, -2, 3), (11, 4, 2), (1, 1, 6), (2, 9, 5)] {
                let a = k.element(x, y, z);
                let i = principal_ideal(&k, &a).unwrap();
                let n = a.norm();
                let n = num_rational::BigRational::new(
                    num_traits::Signed::abs(n.numer()),
                    n.denom().clone(),
                );
                assert_eq!(i.norm(&k).unwrap(), n, "m={m} ({x},{y},{z})");
            }
        }
    }

    #[test]
    fn conjugate_swaps_split_primes() {
        let k = QuadraticField::new(17).unwrap();
        let a = k.element(5, 1, 2); // norm 2
        let i = principal_ideal(&k, &a).unwrap();
        let j = principal_ideal(&k, &a.conjugate()).unwrap();
        assert_eq!(i.conjugate(&k).unwrap(), j);
        assert_ne!(i, j);
    }
}
