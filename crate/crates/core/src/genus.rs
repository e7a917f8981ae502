//! Ambiguous class numbers and the genus criterion for a set of split primes
//! to generate the 2-class group.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::FormClassGroup;
use crate::linalg::f2;
use crate::normic::{is_global_norm, symbol_vector};
use crate::quadfield::{QuadraticField, SplittingType};
use crate::Sense;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguousReport {
    /// Number of ramified primes.
    pub t: u32,
    pub sense: Sense,
    /// `log₂` of the unit norm index `(E : E ∩ N(K^×))`.
    pub unit_norm_index_log: u32,
    pub ambiguous_order: u64,
}

/// Chevalley's formula over `Q`.
///
/// Narrow: `2^{t-1}`. Ordinary: `2^t · f_∞ / (2 · (E : E ∩ N(K^×)))` with
/// `E = {±1}` and `f_∞ = 2` for imaginary fields.
pub fn ambiguous_number(field: &QuadraticField, sense: Sense) -> Result<AmbiguousReport> {
    let t = field.ramified_primes.len() as u32;
    let (index_log, order) = match sense {
        Sense::Narrow => (0, 1u64 << (t - 1)),
        Sense::Ordinary => {
            let minus_one = BigRational::from_integer((-1).into());
            let index_log = u32::from(!is_global_norm(&minus_one, field)?);
            let f_inf = if field.is_real() { 1 } else { 2 };
            let order = (1u64 << t) * f_inf / (2 << index_log);
            (index_log, order)
        }
    };
    Ok(AmbiguousReport {
        t,
        sense,
        unit_norm_index_log: index_log,
        ambiguous_order: order,
    })
}

/// `Ω(K/Q)`: families of local symbols at the ramified primes with product 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaGroup {
    pub t: u32,
    pub dimension: u32,
}

pub fn omega_group(field: &QuadraticField) -> OmegaGroup {
    let t = field.ramified_primes.len() as u32;
    OmegaGroup {
        t,
        dimension: t - 1,
    }
}

/// Rows of ramified-prime symbol bits for the given positive rationals.
pub fn symbol_rows(field: &QuadraticField, xs: &[BigRational]) -> Result<Vec<Vec<u8>>> {
    xs.iter()
        .map(|x| Ok(symbol_vector(x, field)?.ramified_bits(field)))
        .collect()
}

/// Whether the prime ideals above the split primes in `s` generate the
/// 2-class group (narrow sense): the symbol matrix of `s` must have rank
/// `t - 1`.
pub fn genclass_check(field: &QuadraticField, s: &[u64]) -> Result<bool> {
    for &ell in s {
        if field.splitting_type(ell)? != SplittingType::Split {
            return Err(Error::NotSplit(ell as i64));
        }
    }
    let xs: Vec<BigRational> = s
        .iter()
        .map(|&l| BigRational::from_integer(l.into()))
        .collect();
    let rows = symbol_rows(field, &xs)?;
    Ok(f2::rank(&rows) as u32 == omega_group(field).dimension)
}

/// The same question answered on the form class group: do the 2-parts of
/// the classes of `𝔓_ℓ`, `ℓ ∈ s`, generate the 2-Sylow subgroup of `Cl⁺`?
pub fn genclass_oracle(field: &QuadraticField, s: &[u64]) -> Result<bool> {
    let g = FormClassGroup::new(field.discriminant)?;
    let mut classes = Vec::new();
    for &ell in s {
        if field.splitting_type(ell)? != SplittingType::Split {
            return Err(Error::NotSplit(ell as i64));
        }
        classes.push(g.class_of_ideal(&field.prime_ideal_above(ell)?)?);
    }
    g.generates_sylow(&classes, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::class_group;

    #[test]
    fn ambiguous_examples() {
        let k = QuadraticField::new(82).unwrap();
        assert_eq!(ambiguous_number(&k, Sense::Narrow).unwrap().ambiguous_order, 2);
        let k = QuadraticField::new(-1).unwrap();
        assert_eq!(ambiguous_number(&k, Sense::Narrow).unwrap().ambiguous_order, 1);
        assert_eq!(ambiguous_number(&k, Sense::Ordinary).unwrap().ambiguous_order, 1);
        let k = QuadraticField::new(-21).unwrap();
        assert_eq!(ambiguous_number(&k, Sense::Narrow).unwrap().ambiguous_order, 4);
        let k = QuadraticField::new(3).unwrap();
        let r = ambiguous_number(&k, Sense::Ordinary).unwrap();
        assert_eq!((r.ambiguous_order, r.unit_norm_index_log), (1, 1));
    }

    #[test]
    fn ambiguous_matches_two_rank() {
        for d in [-84i64, -420, 136, 328, 12, 21, 1365, -4, 5, 780] {
            let k = QuadraticField::from_discriminant(d).unwrap();
            for sense in [Sense::Narrow, Sense::Ordinary] {
                let rank = class_group(d, sense).unwrap().p_rank(2);
                assert_eq!(
                    ambiguous_number(&k, sense).unwrap().ambiguous_order,
                    1 << rank,
                    "D={d} {sense:?}"
                );
            }
        }
    }

    #[test]
    fn generators_in_82() {
        let k = QuadraticField::new(82).unwrap();
        assert!(genclass_check(&k, &[3]).unwrap());
        assert!(!genclass_check(&k, &[23]).unwrap());
        assert!(genclass_oracle(&k, &[3]).unwrap());
        assert!(!genclass_oracle(&k, &[23]).unwrap());
        assert_eq!(genclass_check(&k, &[7]), Err(Error::NotSplit(7)));
        assert_eq!(genclass_check(&k, &[41]), Err(Error::NotSplit(41)));
    }

    #[test]
    fn class_number_one_needs_nothing() {
        let k = QuadraticField::new(-7).unwrap();
        assert!(genclass_check(&k, &[]).unwrap());
        assert!(genclass_oracle(&k, &[]).unwrap());
    }
}
