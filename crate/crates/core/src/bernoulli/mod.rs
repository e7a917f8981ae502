//! Generalized Bernoulli numbers `B₁(ψ)`, Stickelberger elements, the
//! class-number check for odd quadratic characters and the search for
//! admissible sets of primes at `p = 3`.

mod character;
mod cyclotomic;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use character::{is_homomorphism, DirichletCharacter};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicInt};

use crate::arith::{is_prime, kronecker, primes_up_to, valuation};
use crate::error::{Error, Result};
use crate::forms::FormClassGroup;
use crate::quadfield::{is_fundamental_discriminant, QuadraticField, SplittingType};

/// Tuples whose conductor exceeds this are skipped by the admissible search.
pub const CONDUCTOR_LIMIT: u64 = 100_000_000;

/// `B₁(ψ₁⋯ψ_r) = (1/f) Σ_{a=1}^{f} ψ(a)·a` for characters of pairwise
/// coprime conductors `f_i`, `f = ∏ f_i`, with values in `Q(ζ_L)`,
/// `L = lcm(N_i)`.
pub fn b1_product(chars: &[&DirichletCharacter]) -> Result<CyclotomicInt> {
    let mut f = 1u64;
    let mut level = 1u32;
    for c in chars {
        if f.gcd(&c.modulus) != 1 {
            return Err(Error::Unsupported("conductors are not coprime".into()));
        }
        f = f.checked_mul(c.modulus).ok_or(Error::Overflow("conductor"))?;
        level = level.lcm(&c.order);
    }
    let scales: Vec<u64> = chars.iter().map(|c| (level / c.order) as u64).collect();
    let tables: Vec<&[u32]> = chars.iter().map(|c| c.raw()).collect();
    let mods: Vec<u64> = chars.iter().map(|c| c.modulus).collect();
    let mut sums = vec![0i128; level as usize];
    let mut res: Vec<u64> = vec![0; chars.len()];
    'outer: for a in 1..=f {
        let mut k = 0u64;
        for i in 0..res.len() {
            res[i] += 1;
            if res[i] == mods[i] {
                res[i] = 0;
            }
        }
        for i in 0..res.len() {
            let e = tables[i][res[i] as usize];
            if e == u32::MAX {
                continue 'outer;
            }
            k += e as u64 * scales[i];
        }
        sums[(k % level as u64) as usize] += a as i128;
    }
    let sums: Vec<BigInt> = sums.into_iter().map(BigInt::from).collect();
    Ok(CyclotomicInt::from_exponent_sums(level as u64, &sums, BigInt::from(f)))
}

pub fn b1(chi: &DirichletCharacter) -> Result<CyclotomicInt> {
    b1_product(&[chi])
}

/// `B₁(χ_D)` as a rational number.
pub fn b1_quadratic(d: i64) -> Result<BigRational> {
    let c = DirichletCharacter::quadratic(d)?;
    b1(&c)?
        .as_rational()
        .ok_or_else(|| Error::Internal("quadratic Bernoulli number is irrational".into()))
}

/// `St(K) = Σ_{a} σ_a^{-1} (a/m - 1/2)`, keyed by the least `a` in each
/// class of `Gal(K/Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stickelberger {
    pub m: u64,
    pub coefficients: BTreeMap<u64, BigRational>,
}

/// The Stickelberger element of `Q(ζ_m)`, or of its subfield cut out by the
/// kernel of `field` when given.
pub fn stickelberger(m: u64, field: Option<&DirichletCharacter>) -> Result<Stickelberger> {
    if m == 0 {
        return Err(Error::Zero);
    }
    if let Some(c) = field {
        if m % c.modulus != 0 {
            return Err(Error::Unsupported(format!(
                "conductor {} does not divide {m}",
                c.modulus
            )));
        }
    }
    let mut coefficients: BTreeMap<u64, BigRational> = BTreeMap::new();
    if m == 1 {
        return Ok(Stickelberger { m, coefficients });
    }
    let mut label_of: BTreeMap<u32, u64> = BTreeMap::new();
    let half = BigRational::new(1.into(), 2.into());
    for a in (1..m).filter(|a| a.gcd(&m) == 1) {
        let label = match field {
            None => a,
            Some(c) => {
                let e = c.exponent(a as i64).expect("a is prime to the conductor");
                *label_of.entry(e).or_insert(a)
            }
        };
        let term = BigRational::new(a.into(), m.into()) - &half;
        *coefficients.entry(label).or_insert_with(BigRational::zero) += term;
    }
    Ok(Stickelberger { m, coefficients })
}

impl Stickelberger {
    /// `ψ(St) = Σ_b c_b · ψ(b)^{-1}`; equals `B₁(ψ^{-1})` when `ψ` is
    /// nontrivial of conductor `m` and factors through the field.
    pub fn apply(&self, psi: &DirichletCharacter) -> Result<CyclotomicInt> {
        let n = psi.order as u64;
        let mut sums = vec![BigInt::zero(); n as usize];
        let den = self
            .coefficients
            .values()
            .fold(BigInt::from(1), |l, c| l.lcm(c.denom()));
        for (&b, c) in &self.coefficients {
            let e = psi
                .exponent(b as i64)
                .ok_or_else(|| Error::Unsupported(format!("{b} is not prime to the conductor")))?;
            let k = (n - e as u64) % n;
            sums[k as usize] += c.numer() * (&den / c.denom());
        }
        Ok(CyclotomicInt::from_exponent_sums(n, &sums, den))
    }
}

/// `h(D) = -(w/2)·B₁(χ_D)` for `D < 0`.
pub fn analytic_class_number(d: i64) -> Result<BigRational> {
    if d >= 0 {
        return Err(Error::Unsupported("the analytic formula needs D < 0".into()));
    }
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    Ok(-b1_quadratic(d)? * BigInt::from(w / 2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwkReport {
    pub d: i64,
    pub p: u64,
    pub bernoulli: BigRational,
    pub class_number: u64,
    pub v_analytic: i64,
    pub v_oracle: i64,
    pub pass: bool,
}

fn check_odd_quadratic(d: i64, p: u64) -> Result<()> {
    if d >= 0 {
        return Err(Error::Unsupported("an odd quadratic character needs D < 0".into()));
    }
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p as i64));
    }
    if d == -3 && p == 3 {
        return Err(Error::OmegaExcluded);
    }
    Ok(())
}

/// `v_p(B₁(χ_D))` against `v_p(h(D))` from the form class group.
pub fn mwk_order_check(d: i64, p: u64) -> Result<MwkReport> {
    check_odd_quadratic(d, p)?;
    let bernoulli = b1_quadratic(d)?;
    let v_analytic = valuation(&bernoulli, p)?;
    let class_number = FormClassGroup::new(d)?.order() as u64;
    let v_oracle = valuation(&BigRational::from_integer(class_number.into()), p)?;
    Ok(MwkReport {
        d,
        p,
        bernoulli,
        class_number,
        v_analytic,
        v_oracle,
        pass: v_analytic == v_oracle,
    })
}

/// A set `{ℓ_1, …, ℓ_t}` with a witness `φ = ∏ φ_{ℓ_i}^{s_i}` for which
/// `B₁((χ_D φ)^{-1})` has valuation exactly `t` at the prime above 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleSet {
    pub primes: Vec<u64>,
    pub exponents: Vec<u32>,
    pub valuation: i64,
    pub bernoulli: CyclotomicInt,
}

/// A candidate tuple none of whose characters reached valuation `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedTuple {
    pub primes: Vec<u64>,
    pub min_valuation: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleSearch {
    pub d: i64,
    pub p: u64,
    pub t: usize,
    pub bound: u64,
    pub candidates: Vec<u64>,
    pub sets: Vec<AdmissibleSet>,
    pub rejected: Vec<RejectedTuple>,
    /// Tuples skipped for exceeding [`CONDUCTOR_LIMIT`].
    pub skipped: usize,
}

fn combinations(items: &[u64], t: usize) -> Vec<Vec<u64>> {
    fn rec(items: &[u64], t: usize, start: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, t, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, t, 0, &mut Vec::new(), &mut out);
    out
}

enum Outcome {
    Admissible(AdmissibleSet),
    Rejected(RejectedTuple),
    Skipped,
}

fn examine(chi: &DirichletCharacter, primes: &[u64], t: usize) -> Result<Outcome> {
    let conductor = primes
        .iter()
        .try_fold(chi.modulus, |f, &l| f.checked_mul(l))
        .filter(|&f| f <= CONDUCTOR_LIMIT);
    if conductor.is_none() {
        return Ok(Outcome::Skipped);
    }
    let mut min_valuation = i64::MAX;
    // φ and φ^{-1} give conjugate values, so s_1 = 1
    let choices = if primes.is_empty() { 1 } else { 1usize << (primes.len() - 1) };
    for mask in 0..choices {
        let exponents: Vec<u32> = (0..primes.len())
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { 2 } else { 1 })
            .collect();
        // the inverse character: exponent 3 - s at each ℓ
        let phis = primes
            .iter()
            .zip(&exponents)
            .map(|(&l, &s)| DirichletCharacter::prime_conductor(l, 3, 3 - s))
            .collect::<Result<Vec<_>>>()?;
        let mut chars = vec![chi];
        chars.extend(phis.iter());
        let bernoulli = b1_product(&chars)?;
        let valuation = bernoulli.norm_valuation(3)?;
        if valuation == t as i64 {
            return Ok(Outcome::Admissible(AdmissibleSet {
                primes: primes.to_vec(),
                exponents,
                valuation,
                bernoulli,
            }));
        }
        min_valuation = min_valuation.min(valuation);
    }
    Ok(Outcome::Rejected(RejectedTuple {
        primes: primes.to_vec(),
        min_valuation,
    }))
}

/// Every `t`-set of primes `ℓ < bound` with `ℓ ≡ 1 mod 3`, `ℓ` split in
/// `Q(√D)`, for which some cubic `φ` of conductor `∏ℓ_i` is admissible.
pub fn admissible_search(d: i64, p: u64, t: usize, bound: u64) -> Result<AdmissibleSearch> {
    check_odd_quadratic(d, p)?;
    if p != 3 {
        return Err(Error::Unsupported("the admissible search is implemented for p = 3".into()));
    }
    let chi = DirichletCharacter::quadratic(d)?;
    let candidates: Vec<u64> = primes_up_to(bound.saturating_sub(1))
        .into_iter()
        .filter(|&l| l % 3 == 1 && kronecker(d, l as i64) == 1)
        .collect();
    let tuples = combinations(&candidates, t);
    let outcomes = tuples
        .par_iter()
        .map(|tuple| examine(&chi, tuple, t))
        .collect::<Result<Vec<_>>>()?;
    let mut search = AdmissibleSearch {
        d,
        p,
        t,
        bound,
        candidates,
        sets: Vec::new(),
        rejected: Vec::new(),
        skipped: 0,
    };
    for o in outcomes {
        match o {
            Outcome::Admissible(s) => search.sets.push(s),
            Outcome::Rejected(r) => search.rejected.push(r),
            Outcome::Skipped => search.skipped += 1,
        }
    }
    Ok(search)
}

/// Whether the classes of prime ideals above the `ℓ_i` generate the
/// `p`-Sylow subgroup of `Cl(D)`.
pub fn verify_generation(d: i64, primes: &[u64], p: u64) -> Result<bool> {
    let field = QuadraticField::from_discriminant(d)?;
    let g = FormClassGroup::new(d)?;
    let mut classes = Vec::new();
    for &l in primes {
        if field.splitting_type(l)? != SplittingType::Split {
            return Err(Error::NotSplit(l as i64));
        }
        classes.push(g.class_of_ideal(&field.prime_ideal_above(l)?)?);
    }
    g.generates_sylow(&classes, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn quadratic_bernoulli() {
        assert_eq!(b1_quadratic(-4).unwrap(), q(-1, 2));
        assert_eq!(b1_quadratic(-3).unwrap(), q(-1, 3));
        assert_eq!(b1_quadratic(-47).unwrap(), q(-5, 1));
        assert_eq!(analytic_class_number(-4).unwrap(), q(1, 1));
        assert_eq!(analytic_class_number(-3).unwrap(), q(1, 1));
        // even characters have B₁ = 0
        assert_eq!(b1_quadratic(5).unwrap(), q(0, 1));
    }

    #[test]
    fn stickelberger_examples() {
        let chi = DirichletCharacter::quadratic(-3).unwrap();
        let st = stickelberger(3, Some(&chi)).unwrap();
        assert_eq!(st.coefficients[&1], q(-1, 6));
        assert_eq!(st.coefficients[&2], q(1, 6));
        let st = stickelberger(4, None).unwrap();
        assert_eq!(st.coefficients.len(), 2);
        assert_eq!(st.coefficients[&3], q(1, 4));
        assert!(stickelberger(1, None).unwrap().coefficients.is_empty());
    }

    #[test]
    fn stickelberger_gives_b1_of_inverse() {
        let phi = DirichletCharacter::prime_conductor(7, 6, 1).unwrap();
        let st = stickelberger(7, None).unwrap();
        assert_eq!(st.apply(&phi).unwrap(), b1(&phi.inverse()).unwrap());
        let chi = DirichletCharacter::quadratic(-23).unwrap();
        let st = stickelberger(23, Some(&chi)).unwrap();
        assert_eq!(st.apply(&chi).unwrap().as_rational(), Some(q(-3, 1)));
    }

    #[test]
    fn galois_equivariance() {
        let phi = DirichletCharacter::prime_conductor(13, 6, 1).unwrap();
        let b = b1(&phi).unwrap();
        assert_eq!(b1(&phi.power(5)).unwrap(), b.galois(5).unwrap());
    }

    #[test]
    fn mwk_examples() {
        let r = mwk_order_check(-47, 5).unwrap();
        assert_eq!((r.v_analytic, r.v_oracle, r.pass), (1, 1, true));
        let r = mwk_order_check(-23, 3).unwrap();
        assert_eq!((r.v_analytic, r.v_oracle, r.pass), (1, 1, true));
        let r = mwk_order_check(-4, 3).unwrap();
        assert_eq!((r.v_analytic, r.v_oracle, r.pass), (0, 0, true));
        assert_eq!(mwk_order_check(-3, 3), Err(Error::OmegaExcluded));
        assert!(mwk_order_check(-3, 5).unwrap().pass);
    }

    #[test]
    fn admissible_for_23() {
        let s = admissible_search(-23, 3, 1, 200).unwrap();
        assert!(!s.sets.is_empty());
        for set in &s.sets {
            let l = set.primes[0];
            assert_eq!(l % 3, 1);
            assert_eq!(kronecker(-23, l as i64), 1);
            assert_eq!(set.valuation, 1);
            assert!(verify_generation(-23, &set.primes, 3).unwrap());
        }
        // 7 is inert in Q(√-23)
        assert!(!s.candidates.contains(&7));
        assert_eq!(verify_generation(-23, &[7], 3), Err(Error::NotSplit(7)));
        assert!(verify_generation(-4, &[], 3).unwrap());
        assert_eq!(admissible_search(-3, 3, 1, 100).unwrap_err(), Error::OmegaExcluded);
    }

    #[test]
    fn empty_set_when_class_number_prime_to_3() {
        let s = admissible_search(-4, 3, 0, 100).unwrap();
        assert_eq!(s.sets.len(), 1);
        assert!(s.sets[0].primes.is_empty());
        assert!(admissible_search(-23, 3, 0, 100).unwrap().sets.is_empty());
    }
}
