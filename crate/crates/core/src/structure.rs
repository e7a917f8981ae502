//! Finite abelian group structures as invariant-factor lists.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::factorize_u64;

/// A finite abelian group `Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | d_2 | … | d_k`
/// and every `d_i > 1`. The trivial group has no divisors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ClassGroupStructure {
    pub elementary_divisors: Vec<u64>,
}

impl ClassGroupStructure {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the invariant factors of an arbitrary direct sum of cyclic
    /// groups (orders need not form a divisibility chain; 1s are dropped).
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &n in orders.iter().filter(|&&n| n > 1) {
            for (p, e) in factorize_u64(n).expect("nonzero order") {
                by_prime.entry(p).or_default().push(e);
            }
        }
        Self::from_prime_partitions(&by_prime)
    }

    /// `partitions[p]` lists the exponents of the cyclic `p`-power factors.
    pub fn from_prime_partitions(partitions: &BTreeMap<u64, Vec<u32>>) -> Self {
        let width = partitions.values().map(Vec::len).max().unwrap_or(0);
        let mut divisors = vec![1u64; width];
        for (&p, exps) in partitions {
            let mut exps = exps.clone();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (k, e) in exps.into_iter().enumerate() {
                divisors[k] *= p.pow(e);
            }
        }
        divisors.retain(|&d| d > 1);
        divisors.sort_unstable();
        Self {
            elementary_divisors: divisors,
        }
    }

    /// Structure of an abelian `p`-group from its rank sequence
    /// `r_k = #{cyclic factors of order >= p^k}`, `k = 1, 2, …`.
    pub fn from_rank_sequence(p: u64, ranks: &[u32]) -> Self {
        let first = ranks.first().copied().unwrap_or(0) as usize;
        let exps: Vec<u32> = (0..first)
            .map(|j| ranks.iter().filter(|&&r| r as usize > j).count() as u32)
            .collect();
        let mut parts = BTreeMap::new();
        if !exps.is_empty() {
            parts.insert(p, exps);
        }
        Self::from_prime_partitions(&parts)
    }

    pub fn order(&self) -> u64 {
        self.elementary_divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }

    /// The `p`-Sylow subgroup.
    pub fn sylow(&self, p: u64) -> Self {
        let parts: Vec<u64> = self
            .elementary_divisors
            .iter()
            .map(|&d| {
                let mut q = 1;
                let mut d = d;
                while d % p == 0 {
                    d /= p;
                    q *= p;
                }
                q
            })
            .collect();
        Self::from_cyclic_orders(&parts)
    }

    /// Number of cyclic factors of order divisible by `p^k`.
    pub fn pk_rank(&self, p: u64, k: u32) -> u32 {
        let pk = p.pow(k);
        self.elementary_divisors.iter().filter(|&&d| d % pk == 0).count() as u32
    }

    pub fn p_rank(&self, p: u64) -> u32 {
        self.pk_rank(p, 1)
    }

    /// Divisors in non-increasing order, the usual way of writing the group.
    pub fn descending(&self) -> Vec<u64> {
        let mut v = self.elementary_divisors.clone();
        v.reverse();
        v
    }
}

impl fmt::Display for ClassGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.descending().iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
