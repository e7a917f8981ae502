//! The 2-class group of a quadratic field from norm-symbol ranks alone.
//!
//! With `M = Cl⁺_K` and `σ` the nontrivial automorphism, `M_i` is the kernel
//! of `(1-σ)^i`. Starting from the ramified primes, each stage collects
//! ideals whose classes lie in `M_i`, reads off `δ_i` as the F₂-rank of the
//! symbols of their norms, and lifts every product of pool ideals with norm
//! in `N(K^×)` to a new ideal `𝔄` with `𝔄^{1-σ} ≡ 𝔅`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genus::symbol_rows;
use crate::linalg::f2;
use crate::quadfield::{
    principal_ideal, small_ideal_in_class, solve_norm_equation, Ideal, QuadraticField, SplittingType,
};
use crate::structure::ClassGroupStructure;

pub const MAX_STAGES: usize = 64;

/// One pool ideal and the stage that produced it (0 for ramified primes).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoolIdeal {
    pub ideal: Ideal,
    pub norm: BigRational,
    pub stage: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    /// `#(M_{i+1}/M_i)` for `i = 0, 1, …` while nontrivial.
    pub order_sequence: Vec<u64>,
    /// `δ_i` for every stage computed, including the final one.
    pub delta_sequence: Vec<u32>,
    pub length: usize,
    /// Exponents `n_j` of the cyclic factors `Z/2^{n_j}`, non-increasing.
    pub divisors: Vec<u32>,
    pub structure: ClassGroupStructure,
    pub pool: Vec<PoolIdeal>,
}

/// The stage-one symbol matrix: rows are the ramified primes as norms of
/// the ramified prime ideals, columns the ramified primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedeiMatrix {
    pub primes: Vec<u64>,
    pub rows: Vec<Vec<u8>>,
    pub rank: u32,
    pub four_rank: u32,
}

pub fn redei_matrix(field: &QuadraticField) -> Result<RedeiMatrix> {
    let xs: Vec<BigRational> = field
        .ramified_primes
        .iter()
        .map(|&p| BigRational::from_integer(p.into()))
        .collect();
    let rows = symbol_rows(field, &xs)?;
    let rank = f2::rank(&rows) as u32;
    let t = field.ramified_primes.len() as u32;
    Ok(RedeiMatrix {
        primes: field.ramified_primes.clone(),
        rows,
        rank,
        four_rank: t - 1 - rank,
    })
}

/// Given `𝔅` with `N(𝔅) ∈ N(K^×)`, finds `𝔄` with `𝔄^{1-σ} = 𝔅·(y)^{-1}`
/// for a totally positive `y`.
fn lift(field: &QuadraticField, b: &Ideal) -> Result<Ideal> {
    let x = b.norm(field)?;
    let y = solve_norm_equation(field, &x)?.ok_or_else(|| {
        Error::Internal(format!("{x} has trivial symbols but the norm solver found no y"))
    })?;
    let y = if y.sign() == std::cmp::Ordering::Less { y.neg() } else { y };
    let c = b.mul(&principal_ideal(field, &y)?.inverse());
    let mut a = Ideal::unit();
    for (&key, &e) in &c.exponents {
        let p = field.prime_ideal(key.ell, key.b)?;
        match p.kind {
            SplittingType::Split => {
                let partner = p.conjugate().key();
                if c.exponent(&partner) != -e {
                    return Err(Error::Internal(format!(
                        "exponents at the primes above {} are not opposite",
                        key.ell
                    )));
                }
                if key < partner {
                    a.add(key, e);
                }
            }
            _ => {
                return Err(Error::Internal(format!(
                    "norm-one ideal has exponent {e} at the non-split prime {}",
                    key.ell
                )))
            }
        }
    }
    // 𝔄^{1-σ} must reproduce 𝔅·(y)^{-1}
    if a.mul(&a.conjugate(field)?.inverse()) != c {
        return Err(Error::Internal("lifted ideal fails the (1-σ) check".into()));
    }
    Ok(a)
}

/// Filtration orders, δ-ranks and the resulting 2-class group structure
/// (narrow sense).
pub fn compute_filtration(field: &QuadraticField) -> Result<FiltrationReport> {
    let t = field.ramified_primes.len() as u32;
    let mut pool: Vec<PoolIdeal> = Vec::new();
    for &p in &field.ramified_primes {
        let pi = field.prime_ideal_above(p)?;
        pool.push(PoolIdeal {
            ideal: Ideal::prime(&pi, 1),
            norm: BigRational::from_integer(p.into()),
            stage: 0,
        });
    }
    let mut orders = Vec::new();
    let mut deltas = vec![0u32];
    if t > 1 {
        orders.push(1u64 << (t - 1));
    }
    // kernel vectors already lifted, padded to the current pool size
    let mut processed: Vec<Vec<u8>> = Vec::new();
    let mut stage = 1;
    while orders.last().is_some_and(|&o| o > 1) {
        if stage > MAX_STAGES {
            return Err(Error::Internal(format!("filtration exceeded {MAX_STAGES} stages")));
        }
        let norms: Vec<BigRational> = pool.iter().map(|p| p.norm.clone()).collect();
        let rows = symbol_rows(field, &norms)?;
        let delta = f2::rank(&rows) as u32;
        deltas.push(delta);
        let order = 1u64 << (t - 1 - delta);
        let prev = *orders.last().expect("nonempty");
        if order > prev || prev % order != 0 {
            return Err(Error::Internal(format!(
                "filtration orders increased from {prev} to {order}"
            )));
        }
        if order == 1 {
            break;
        }
        orders.push(order);
        for v in processed.iter_mut() {
            v.resize(pool.len(), 0);
        }
        let mut fresh = Vec::new();
        for v in f2::left_kernel(&rows) {
            if f2::in_span(&processed, &v) {
                continue;
            }
            processed.push(v.clone());
            fresh.push(v);
        }
        for v in fresh {
            let mut b = Ideal::unit();
            for (bit, p) in v.iter().zip(&pool) {
                if *bit == 1 {
                    b = b.mul(&p.ideal);
                }
            }
            let b = small_ideal_in_class(field, &b)?;
            let a = small_ideal_in_class(field, &lift(field, &b)?)?;
            let norm = a.norm(field)?;
            pool.push(PoolIdeal {
                ideal: a,
                norm,
                stage,
            });
        }
        stage += 1;
    }
    let ranks: Vec<u32> = orders.iter().map(|o| o.trailing_zeros()).collect();
    let structure = ClassGroupStructure::from_rank_sequence(2, &ranks);
    let mut divisors: Vec<u32> = structure
        .descending()
        .iter()
        .map(|d| d.trailing_zeros())
        .collect();
    divisors.sort_unstable_by(|a, b| b.cmp(a));
    Ok(FiltrationReport {
        length: orders.len(),
        order_sequence: orders,
        delta_sequence: deltas,
        divisors,
        structure,
        pool,
    })
}
