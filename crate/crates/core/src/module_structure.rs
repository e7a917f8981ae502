//! Finite `Z_p[G]`-modules for `G` cyclic of order `p`: group structure of
//! `⊕ Z_p[ζ]/(1-ζ)^{n_j}`, `p^k`-ranks, filtration orders, the `M^ν ≠ 1`
//! classification, and an explicit simulator used to check all of them.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::snf::{self, Matrix};
use crate::structure::ClassGroupStructure;

/// Largest simulated module order.
pub const SIM_ORDER_LIMIT: u128 = 1 << 20;
/// Below this order kernels are counted by enumerating elements.
pub const ENUMERATION_LIMIT: u128 = 1 << 14;

/// Exponents `n_1 ≤ … ≤ n_m` of `M ≅ ⊕ Z_p[ζ]/(1-ζ)^{n_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorProfile {
    pub p: u64,
    pub n_js: Vec<u32>,
}

impl DivisorProfile {
    pub fn new(p: u64, mut n_js: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as i64));
        }
        if n_js.contains(&0) {
            return Err(Error::Unsupported("divisor exponents must be positive".into()));
        }
        n_js.sort_unstable();
        Ok(Self { p, n_js })
    }

    /// `n = a(p-1) + b` with `0 ≤ b ≤ p-2`.
    fn split(&self, n: u32) -> (u32, u32) {
        let q = (self.p - 1) as u32;
        (n / q, n % q)
    }
}

fn p_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::Overflow("prime power"))
}

/// `Z_p[ζ]/(1-ζ)^n ≅ (Z/p^{a+1})^b ⊕ (Z/p^a)^{p-1-b}`, summed over `j`.
pub fn structure_from_divisors(profile: &DivisorProfile) -> Result<ClassGroupStructure> {
    let p = profile.p;
    let mut orders = Vec::new();
    for &n in &profile.n_js {
        let (a, b) = profile.split(n);
        let hi = p_pow(p, a + 1)?;
        let lo = p_pow(p, a)?;
        orders.extend(std::iter::repeat_n(hi, b as usize));
        orders.extend(std::iter::repeat_n(lo, (p - 1 - b as u64) as usize));
    }
    Ok(ClassGroupStructure::from_cyclic_orders(&orders))
}

/// `R_k` for `k = 1, …` up to the last nonzero rank.
pub fn pk_ranks(profile: &DivisorProfile) -> Vec<u32> {
    let p1 = (profile.p - 1) as u32;
    let kmax = profile
        .n_js
        .iter()
        .map(|&n| profile.split(n).0 + 1)
        .max()
        .unwrap_or(0);
    let mut ranks: Vec<u32> = (1..=kmax)
        .map(|k| {
            profile
                .n_js
                .iter()
                .map(|&n| {
                    let (a, b) = profile.split(n);
                    if k <= a {
                        p1
                    } else if k == a + 1 {
                        b
                    } else {
                        0
                    }
                })
                .sum()
        })
        .collect();
    while ranks.last() == Some(&0) {
        ranks.pop();
    }
    ranks
}

/// `#(M_{i+1}/M_i) = p^{#{j : n_j > i}}` for `0 ≤ i < max n_j`.
pub fn filtration_orders_from_divisors(profile: &DivisorProfile) -> Result<Vec<u64>> {
    let top = profile.n_js.iter().copied().max().unwrap_or(0);
    (0..top)
        .map(|i| p_pow(profile.p, profile.n_js.iter().filter(|&&n| n > i).count() as u32))
        .collect()
}

/// The structures allowed when `#M_1 = p` and `M^ν ≠ 1`, `n` being the
/// filtration length.
pub fn structure_nontrivial_norm(p: u64, n: u32) -> Result<Vec<ClassGroupStructure>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as i64));
    }
    if n < 2 {
        return Err(Error::LengthTooSmall(n));
    }
    let rep = |order: u64, k: u64| std::iter::repeat_n(order, k as usize);
    let pn = n as u64;
    let groups: Vec<Vec<u64>> = if pn < p {
        vec![rep(p * p, 1).chain(rep(p, pn - 2)).collect()]
    } else if pn == p {
        vec![
            rep(p, p).collect(),
            rep(p * p, 1).chain(rep(p, p - 2)).collect(),
        ]
    } else {
        let a = n / (p - 1) as u32;
        let b = pn % (p - 1);
        vec![rep(p_pow(p, a + 1)?, b).chain(rep(p_pow(p, a)?, p - 1 - b)).collect()]
    };
    Ok(groups
        .iter()
        .map(|g| ClassGroupStructure::from_cyclic_orders(g))
        .collect())
}

/// An explicit finite `Z[G]`-module: `Z^d / L` with `L` given by an upper
/// triangular basis, and `σ` acting on row vectors by `x ↦ x·S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimModule {
    pub p: u64,
    pub relations: Matrix,
    pub sigma: Matrix,
}

/// Upper-triangular basis with positive diagonal of a full-rank lattice.
fn hermite(rows: &[Vec<i128>], d: usize) -> Result<Matrix> {
    let mut m: Matrix = rows.to_vec();
    for c in 0..d {
        loop {
            let pivot = (c..m.len())
                .filter(|&i| m[i][c] != 0)
                .min_by_key(|&i| m[i][c].abs());
            let Some(pi) = pivot else {
                return Err(Error::Unsupported("relation lattice is not of full rank".into()));
            };
            m.swap(c, pi);
            let mut done = true;
            for i in c + 1..m.len() {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[c][c]);
                    for j in 0..d {
                        m[i][j] = m[i][j]
                            .checked_sub(q.checked_mul(m[c][j]).ok_or(Error::Overflow("hermite"))?)
                            .ok_or(Error::Overflow("hermite"))?;
                    }
                    if m[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[c][c] < 0 {
            for v in m[c].iter_mut() {
                *v = -*v;
            }
        }
    }
    m.truncate(d);
    Ok(m)
}

fn identity(d: usize) -> Matrix {
    (0..d).map(|i| (0..d).map(|j| i128::from(i == j)).collect()).collect()
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

/// Coefficients of `f · g mod Φ_p` on the basis `1, x, …, x^{p-2}`.
fn mul_mod_cyclotomic(f: &[i128], g: &[i128], p: usize) -> Vec<i128> {
    let mut prod = vec![0i128; f.len() + g.len()];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    reduce_cyclotomic(prod, p)
}

fn reduce_cyclotomic(mut v: Vec<i128>, p: usize) -> Vec<i128> {
    // x^p = 1, then x^{p-1} = -(1 + … + x^{p-2})
    let mut w = vec![0i128; p];
    for (i, c) in v.drain(..).enumerate() {
        w[i % p] += c;
    }
    let top = w[p - 1];
    (0..p - 1).map(|i| w[i] - top).collect()
}

impl SimModule {
    /// `⊕ Z[ζ_p]/(1-ζ_p)^{n_j}` with `σ` multiplication by `ζ_p`.
    pub fn from_profile(profile: &DivisorProfile) -> Result<Self> {
        let p = profile.p as usize;
        let blk = p - 1;
        let total: u128 = profile
            .n_js
            .iter()
            .try_fold(1u128, |acc, &n| acc.checked_mul((profile.p as u128).checked_pow(n)?))
            .ok_or(Error::Overflow("module order"))?;
        if total > SIM_ORDER_LIMIT {
            return Err(Error::SizeBound(format!("module order {total} exceeds 2^20")));
        }
        let d = blk * profile.n_js.len();
        let mut relations = vec![vec![0i128; d]; d];
        let mut sigma = vec![vec![0i128; d]; d];
        let one_minus_x = if p == 2 { vec![2] } else { reduce_cyclotomic(vec![1, -1], p) };
        for (j, &n) in profile.n_js.iter().enumerate() {
            let mut pin = vec![0i128; blk];
            pin[0] = 1;
            for _ in 0..n {
                pin = mul_mod_cyclotomic(&pin, &one_minus_x, p);
            }
            let x = if p == 2 { vec![-1] } else { reduce_cyclotomic(vec![0, 1], p) };
            let mut gen = pin;
            let mut basis = vec![0i128; blk];
            basis[0] = 1;
            for i in 0..blk {
                relations[j * blk + i][j * blk..(j + 1) * blk].copy_from_slice(&gen);
                gen = mul_mod_cyclotomic(&gen, &x, p);
                sigma[j * blk + i][j * blk..(j + 1) * blk]
                    .copy_from_slice(&mul_mod_cyclotomic(&basis, &x, p));
                basis = mul_mod_cyclotomic(&basis, &x, p);
            }
        }
        let relations = hermite(&relations, d)?;
        Ok(Self {
            p: profile.p,
            relations,
            sigma,
        })
    }

    /// `⊕ Z/p^{e_i}` with an arbitrary compatible endomorphism `S`.
    pub fn from_cyclic(p: u64, exps: &[u32], sigma: Matrix) -> Result<Self> {
        let d = exps.len();
        let mut relations = vec![vec![0i128; d]; d];
        for (i, &e) in exps.iter().enumerate() {
            relations[i][i] = p_pow(p, e)? as i128;
        }
        Ok(Self {
            p,
            relations,
            sigma,
        })
    }

    pub fn dim(&self) -> usize {
        self.relations.len()
    }

    pub fn order(&self) -> u128 {
        self.relations
            .iter()
            .enumerate()
            .map(|(i, r)| r[i] as u128)
            .product()
    }

    /// Canonical representative with `0 ≤ x_i < L_ii`.
    pub fn reduce(&self, x: &mut [i128]) {
        for (i, r) in self.relations.iter().enumerate() {
            let q = x[i].div_euclid(r[i]);
            if q != 0 {
                for (xj, rj) in x.iter_mut().zip(r).skip(i) {
                    *xj -= q * rj;
                }
            }
        }
    }

    pub fn structure(&self) -> Result<ClassGroupStructure> {
        let c = snf::cokernel(&self.relations, self.dim())?;
        Ok(ClassGroupStructure {
            elementary_divisors: c.invariants,
        })
    }

    pub fn one_minus_sigma(&self) -> Matrix {
        sub(&identity(self.dim()), &self.sigma)
    }

    pub fn power(&self, m: &Matrix, k: u32) -> Result<Matrix> {
        let mut acc = identity(self.dim());
        for _ in 0..k {
            acc = snf::mat_mul(&acc, m)?;
            for row in acc.iter_mut() {
                self.reduce(row);
            }
        }
        Ok(acc)
    }

    pub fn scalar(&self, c: i128) -> Matrix {
        let mut m = identity(self.dim());
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = c;
        }
        m
    }

    fn is_zero_map(&self, m: &Matrix) -> bool {
        m.iter().all(|row| {
            let mut r = row.clone();
            self.reduce(&mut r);
            r.iter().all(|&v| v == 0)
        })
    }

    fn elements(&self) -> impl Iterator<Item = Vec<i128>> + '_ {
        let bounds: Vec<i128> = self.relations.iter().enumerate().map(|(i, r)| r[i]).collect();
        let total = self.order();
        (0..total).map(move |mut idx| {
            bounds
                .iter()
                .map(|&b| {
                    let v = (idx % b as u128) as i128;
                    idx /= b as u128;
                    v
                })
                .collect()
        })
    }

    /// `#{x : x·F_k = 0 for every k}` by enumeration.
    pub fn kernel_order_enumerated(&self, maps: &[&Matrix]) -> Result<u128> {
        let mut count = 0u128;
        for x in self.elements() {
            let mut ok = true;
            for f in maps {
                let mut y = snf::vec_mul(&x, f)?;
                self.reduce(&mut y);
                if y.iter().any(|&v| v != 0) {
                    ok = false;
                    break;
                }
            }
            count += u128::from(ok);
        }
        Ok(count)
    }

    /// The same count from the Smith form of `[F_1 | … | F_k]` stacked over
    /// `k` copies of the relations: `#ker = #coker / #G^{k-1}`.
    pub fn kernel_order_smith(&self, maps: &[&Matrix]) -> Result<u128> {
        let d = self.dim();
        let k = maps.len();
        let mut rows: Matrix = Vec::new();
        for i in 0..d {
            rows.push(maps.iter().flat_map(|f| f[i].iter().copied()).collect());
        }
        for block in 0..k {
            for r in &self.relations {
                let mut row = vec![0i128; d * k];
                row[block * d..(block + 1) * d].copy_from_slice(r);
                rows.push(row);
            }
        }
        let c = snf::cokernel(&rows, d * k)?;
        if c.free_rank != 0 {
            return Err(Error::Internal("stacked relation matrix lost rank".into()));
        }
        let coker: u128 = c.invariants.iter().map(|&v| v as u128).product();
        let g = self.order();
        Ok(coker / g.pow(k as u32 - 1))
    }

    pub fn kernel_order(&self, maps: &[&Matrix]) -> Result<u128> {
        if self.order() <= ENUMERATION_LIMIT {
            self.kernel_order_enumerated(maps)
        } else {
            self.kernel_order_smith(maps)
        }
    }

    /// `#M_{i+1}/#M_i` with `M_i = ker (1-σ)^i`, until `M_i = M`.
    pub fn brute_filtration(&self) -> Result<Vec<u64>> {
        let t = self.one_minus_sigma();
        let total = self.order();
        let mut orders = Vec::new();
        let mut prev = 1u128;
        let mut power = identity(self.dim());
        while prev < total {
            power = snf::mat_mul(&power, &t)?;
            for row in power.iter_mut() {
                self.reduce(row);
            }
            let cur = self.kernel_order(&[&power])?;
            if cur == prev {
                return Err(Error::Internal("kernel chain stalled below the full module".into()));
            }
            orders.push(u64::try_from(cur / prev).map_err(|_| Error::Overflow("filtration"))?);
            prev = cur;
        }
        Ok(orders)
    }

    /// `ker(p^k) = ker((1-σ)^{k(p-1)})` as subgroups.
    pub fn kernel_identity(&self, k: u32) -> Result<bool> {
        let pk = self.scalar(p_pow(self.p, k)? as i128);
        let t = self.power(&self.one_minus_sigma(), k * (self.p as u32 - 1))?;
        let a = self.kernel_order(&[&pk])?;
        let b = self.kernel_order(&[&t])?;
        let both = self.kernel_order(&[&pk, &t])?;
        Ok(a == b && both == a)
    }

    pub fn sigma_has_order_dividing_p(&self) -> Result<bool> {
        let sp = self.power(&self.sigma, self.p as u32)?;
        Ok(self.is_zero_map(&sub(&sp, &identity(self.dim()))))
    }

    pub fn norm_is_trivial(&self) -> Result<bool> {
        let mut nu = identity(self.dim());
        let mut s = identity(self.dim());
        for _ in 1..self.p {
            s = snf::mat_mul(&s, &self.sigma)?;
            nu = nu.iter().zip(&s).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        }
        Ok(self.is_zero_map(&nu))
    }
}

pub fn simulate_module(profile: &DivisorProfile) -> Result<SimModule> {
    SimModule::from_profile(profile)
}

/// All profiles for `p` with `Σ n_j ≤ budget`.
pub fn profiles_up_to(p: u64, budget: u32) -> Result<Vec<DivisorProfile>> {
    fn rec(min: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for n in min..=left {
            cur.push(n);
            rec(n, left - n, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(1, budget, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|v| DivisorProfile::new(p, v)).collect()
}

/// Outcome of the exhaustive search over endomorphisms of small groups.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationSearch {
    pub p: u64,
    pub groups_searched: usize,
    pub matrices_examined: u64,
    /// `(n, structure)` pairs met with `#M_1 = p`, `M^ν ≠ 1`.
    pub realized: Vec<(u32, ClassGroupStructure)>,
    pub violations: Vec<(u32, ClassGroupStructure)>,
}

/// Exponent partitions with at most `max_parts` parts each at most
/// `max_exp`, whose endomorphism count stays below `matrix_budget`.
fn candidate_groups(p: u64, max_exp: u32, max_parts: usize, matrix_budget: u64) -> Vec<Vec<u32>> {
    fn rec(max: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if parts == 0 {
            return;
        }
        for e in (1..=max).rev() {
            cur.push(e);
            rec(e, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(max_exp, max_parts, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|es| {
            let log: u32 = es.iter().flat_map(|&a| es.iter().map(move |&b| a.min(b))).sum();
            (p as f64).powi(log as i32) <= matrix_budget as f64
        })
        .collect()
}

/// Endomorphism arithmetic on `⊕ Z/p^{e_i}` with entries `S_ij` taken mod
/// `p^{e_j}` and divisible by `p^{max(0, e_j - e_i)}`.
struct SmallGroup {
    mods: Vec<u64>,
    steps: Vec<Vec<u64>>,
}

impl SmallGroup {
    fn new(p: u64, exps: &[u32]) -> Self {
        let mods: Vec<u64> = exps.iter().map(|&e| p.pow(e)).collect();
        let steps = exps
            .iter()
            .map(|&ei| exps.iter().map(|&ej| p.pow(ej.saturating_sub(ei))).collect())
            .collect();
        Self { mods, steps }
    }

    fn mul(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let d = self.mods.len();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let m = self.mods[j];
                        (0..d).fold(0u64, |acc, k| (acc + a[i][k] * b[k][j]) % m)
                    })
                    .collect()
            })
            .collect()
    }

    fn identity(&self) -> Vec<Vec<u64>> {
        let d = self.mods.len();
        (0..d)
            .map(|i| (0..d).map(|j| u64::from(i == j) % self.mods[j]).collect())
            .collect()
    }

    fn one_minus(&self, s: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let id = self.identity();
        id.iter()
            .zip(s)
            .map(|(r, q)| {
                r.iter()
                    .zip(q)
                    .zip(&self.mods)
                    .map(|((a, b), m)| (a + m - b) % m)
                    .collect()
            })
            .collect()
    }

    fn is_zero(a: &[Vec<u64>]) -> bool {
        a.iter().all(|r| r.iter().all(|&v| v == 0))
    }

    fn kernel_order(&self, f: &[Vec<u64>]) -> u64 {
        let d = self.mods.len();
        let total: u64 = self.mods.iter().product();
        let mut count = 0;
        let mut x = vec![0u64; d];
        for mut idx in 0..total {
            for i in 0..d {
                x[i] = idx % self.mods[i];
                idx /= self.mods[i];
            }
            let zero = (0..d).all(|j| {
                let m = self.mods[j];
                (0..d).fold(0u64, |acc, i| (acc + x[i] * f[i][j]) % m) == 0
            });
            count += u64::from(zero);
        }
        count
    }
}

/// Searches every endomorphism `S` of every small abelian `p`-group with
/// `S^p = 1`, `#ker(1-S) = p` and `1 + S + … + S^{p-1} ≠ 0`, and records
/// whether the group structure is among the allowed ones for its length.
pub fn realization_search(p: u64, max_exp: u32, max_parts: usize, matrix_budget: u64) -> Result<RealizationSearch> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as i64));
    }
    let mut out = RealizationSearch {
        p,
        ..Default::default()
    };
    for exps in candidate_groups(p, max_exp, max_parts, matrix_budget) {
        out.groups_searched += 1;
        let g = SmallGroup::new(p, &exps);
        let d = exps.len();
        let structure = ClassGroupStructure::from_cyclic_orders(&g.mods);
        // choices per entry: multiples of steps[i][j] below mods[j]
        let counts: Vec<u64> = (0..d * d)
            .map(|k| g.mods[k % d] / g.steps[k / d][k % d])
            .collect();
        let total: u64 = counts.iter().product();
        let mut s = vec![vec![0u64; d]; d];
        for mut idx in 0..total {
            for k in 0..d * d {
                let (i, j) = (k / d, k % d);
                s[i][j] = (idx % counts[k]) * g.steps[i][j];
                idx /= counts[k];
            }
            out.matrices_examined += 1;
            let mut sp = g.identity();
            for _ in 0..p {
                sp = g.mul(&sp, &s);
            }
            if sp != g.identity() {
                continue;
            }
            let mut nu = g.identity();
            let mut pw = g.identity();
            for _ in 1..p {
                pw = g.mul(&pw, &s);
                nu = nu
                    .iter()
                    .zip(&pw)
                    .map(|(r, q)| r.iter().zip(q).zip(&g.mods).map(|((a, b), m)| (a + b) % m).collect())
                    .collect();
            }
            if SmallGroup::is_zero(&nu) {
                continue;
            }
            let t = g.one_minus(&s);
            if g.kernel_order(&t) != p {
                continue;
            }
            let mut n = 1u32;
            let mut tn = t.clone();
            while !SmallGroup::is_zero(&tn) {
                tn = g.mul(&tn, &t);
                n += 1;
            }
            let entry = (n, structure.clone());
            let allowed = n >= 2 && structure_nontrivial_norm(p, n)?.contains(&structure);
            if !allowed && !out.violations.contains(&entry) {
                out.violations.push(entry.clone());
            }
            if !out.realized.contains(&entry) {
                out.realized.push(entry);
            }
        }
    }
    out.realized.sort_by(|a, b| (a.0, &a.1.elementary_divisors).cmp(&(b.0, &b.1.elementary_divisors)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(p: u64, n: &[u32]) -> DivisorProfile {
        DivisorProfile::new(p, n.to_vec()).unwrap()
    }

    fn divs(s: &ClassGroupStructure) -> Vec<u64> {
        s.descending()
    }

    #[test]
    fn structures_from_divisors() {
        assert_eq!(divs(&structure_from_divisors(&prof(3, &[3])).unwrap()), vec![9, 3]);
        assert_eq!(divs(&structure_from_divisors(&prof(2, &[5])).unwrap()), vec![32]);
        assert_eq!(divs(&structure_from_divisors(&prof(5, &[7])).unwrap()), vec![25, 25, 25, 5]);
        assert!(structure_from_divisors(&prof(7, &[])).unwrap().is_trivial());
    }

    #[test]
    fn ranks_and_orders() {
        assert_eq!(pk_ranks(&prof(3, &[3])), vec![2, 1]);
        assert_eq!(pk_ranks(&prof(5, &[7])), vec![4, 3]);
        assert!(pk_ranks(&prof(5, &[])).is_empty());
        assert_eq!(filtration_orders_from_divisors(&prof(3, &[1, 2])).unwrap(), vec![9, 3]);
        assert_eq!(filtration_orders_from_divisors(&prof(2, &[1, 1])).unwrap(), vec![4]);
        assert!(filtration_orders_from_divisors(&prof(2, &[])).unwrap().is_empty());
    }

    #[test]
    fn nontrivial_norm_cases() {
        let f = |p, n| -> Vec<Vec<u64>> {
            structure_nontrivial_norm(p, n).unwrap().iter().map(divs).collect()
        };
        assert_eq!(f(5, 3), vec![vec![25, 5]]);
        assert_eq!(f(3, 3), vec![vec![3, 3, 3], vec![9, 3]]);
        assert_eq!(f(3, 7), vec![vec![81, 27]]);
        assert_eq!(structure_nontrivial_norm(3, 1), Err(Error::LengthTooSmall(1)));
    }

    #[test]
    fn simulator_basics() {
        let m = simulate_module(&prof(3, &[2])).unwrap();
        assert_eq!(m.order(), 9);
        assert!(m.sigma_has_order_dividing_p().unwrap());
        assert!(m.norm_is_trivial().unwrap());
        let t2 = m.power(&m.one_minus_sigma(), 2).unwrap();
        assert_eq!(m.kernel_order(&[&t2]).unwrap(), 9);
        assert_eq!(m.brute_filtration().unwrap(), vec![3, 3]);
        let m = simulate_module(&prof(2, &[1])).unwrap();
        assert_eq!(m.order(), 2);
        assert_eq!(m.structure().unwrap().elementary_divisors, vec![2]);
        assert_eq!(simulate_module(&prof(5, &[1])).unwrap().order(), 5);
        assert_eq!(
            simulate_module(&prof(3, &[1, 2])).unwrap().brute_filtration().unwrap(),
            vec![9, 3]
        );
        assert!(simulate_module(&prof(2, &[])).unwrap().brute_filtration().unwrap().is_empty());
        assert!(matches!(simulate_module(&prof(5, &[9])), Err(Error::SizeBound(_))));
    }

    #[test]
    fn enumeration_agrees_with_smith() {
        for pr in [prof(3, &[1, 3]), prof(5, &[2, 3]), prof(2, &[1, 2, 4])] {
            let m = simulate_module(&pr).unwrap();
            let t = m.one_minus_sigma();
            for k in 1..4 {
                let tk = m.power(&t, k).unwrap();
                assert_eq!(
                    m.kernel_order_enumerated(&[&tk]).unwrap(),
                    m.kernel_order_smith(&[&tk]).unwrap()
                );
                let pk = m.scalar(m.p.pow(k) as i128);
                assert_eq!(
                    m.kernel_order_enumerated(&[&tk, &pk]).unwrap(),
                    m.kernel_order_smith(&[&tk, &pk]).unwrap()
                );
            }
        }
    }

    #[test]
    fn simulator_matches_formulas() {
        for p in [2u64, 3, 5] {
            for pr in profiles_up_to(p, 4).unwrap() {
                let Ok(m) = simulate_module(&pr) else { continue };
                assert_eq!(m.structure().unwrap(), structure_from_divisors(&pr).unwrap(), "{pr:?}");
                assert_eq!(m.brute_filtration().unwrap(), filtration_orders_from_divisors(&pr).unwrap());
                for k in 1..3 {
                    assert!(m.kernel_identity(k).unwrap(), "{pr:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn small_search_has_no_violation() {
        let r = realization_search(3, 2, 2, 10_000).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(!r.realized.is_empty());
    }
}
