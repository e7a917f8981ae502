//! Binary quadratic forms and their class groups.
//!
//! This is the brute-force side of the crate: narrow class groups realized by
//! reduced forms (definite case) or by cycles of reduced forms (indefinite
//! case) under Gauss composition. Nothing here uses genus theory, so the
//! results serve as an independent check on everything else.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, is_square};
use crate::error::{Error, Result};
use crate::quadfield::{is_fundamental_discriminant, PrimeIdeal, QuadraticField};
use crate::structure::ClassGroupStructure;
use crate::Sense;

/// The form `a x² + b x y + c y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("quadratic form"))
}

impl QuadForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    /// The form `(a, b, (b² - D) / 4a)`; fails if `4a` does not divide `b² - D`.
    pub fn from_ab(a: i64, b: i64, disc: i64) -> Result<Self> {
        if a == 0 {
            return Err(Error::Zero);
        }
        let num = b as i128 * b as i128 - disc as i128;
        let den = 4 * a as i128;
        if num % den != 0 {
            return Err(Error::Internal(format!(
                "4*{a} does not divide {b}^2 - ({disc})"
            )));
        }
        Ok(Self::new(a, b, to_i64(num / den)?))
    }

    pub fn discriminant(&self) -> i64 {
        (self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128) as i64
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `(1, D mod 2, (D mod 2 - D) / 4)`.
    pub fn principal(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        Self::from_ab(1, b, disc).expect("principal form exists for D = 0, 1 mod 4")
    }

    /// `(-1, D mod 2, …)`: the class of principal ideals whose generators
    /// have negative norm.
    pub fn negative_principal(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        Self::from_ab(-1, b, disc).expect("form exists for D = 0, 1 mod 4")
    }

    /// Inverse class: `(a, -b, c)`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a, -self.b, self.c)
    }

    pub fn is_definite(&self) -> bool {
        self.discriminant() < 0
    }

    fn check(&self) -> Result<i64> {
        let d = self.discriminant();
        if is_square(d as i128) {
            return Err(Error::SquareDiscriminant(d));
        }
        if !self.is_primitive() {
            return Err(Error::NotPrimitive(self.a, self.b, self.c));
        }
        if d < 0 && self.a < 0 {
            return Err(Error::Unsupported("negative definite form".into()));
        }
        Ok(d)
    }

    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d < 0 {
            let (a, b, c) = (self.a, self.b, self.c);
            a > 0 && b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
        } else {
            is_reduced_indefinite(self.a, self.b, d)
        }
    }

    /// Reduced representative. Definite forms get the unique reduced form of
    /// their class; indefinite forms land somewhere on their reduction cycle.
    pub fn reduce(&self) -> Result<Self> {
        let d = self.check()?;
        if d < 0 {
            Ok(self.reduce_definite())
        } else {
            let mut f = *self;
            // the number of rho steps to reach a reduced form is
            // O(log(|a| / sqrt D)) + 2
            for _ in 0..10_000 {
                if f.is_reduced() {
                    return Ok(f);
                }
                f = f.rho()?;
            }
            Err(Error::Internal(format!("indefinite reduction of {self} did not terminate")))
        }
    }

    fn reduce_definite(&self) -> Self {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            // normalize b into (-a, a]
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            let k = (r - b) / two_a;
            c += a * k * k + b * k;
            b = r;
            if a > c {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        Self::new(a as i64, b as i64, c as i64)
    }

    /// One reduction step on an indefinite form: `(a, b, c) -> (c, b', a')`
    /// with `b' = -b mod 2c` chosen in the standard normalization range.
    pub fn rho(&self) -> Result<Self> {
        let d = self.discriminant();
        if d <= 0 {
            return Err(Error::Unsupported("rho on a definite form".into()));
        }
        let s = (d as u64).sqrt() as i128;
        let c = self.c as i128;
        let b = self.b as i128;
        let two_c = 2 * c.abs();
        let nb = if c * c > d as i128 {
            // b' in (-|c|, |c|]
            let mut r = (-b).rem_euclid(two_c);
            if r > c.abs() {
                r -= two_c;
            }
            r
        } else {
            // largest b' = -b mod 2|c| with b' < sqrt(D)
            s - (s + b).rem_euclid(two_c)
        };
        let na = (nb * nb - d as i128) / (4 * c);
        Ok(Self::new(self.c, to_i64(nb)?, to_i64(na)?))
    }

    /// Gauss composition (Dirichlet's united forms), followed by reduction.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let d1 = self.discriminant();
        let d2 = other.discriminant();
        if d1 != d2 {
            return Err(Error::MismatchedDiscriminants(d1, d2));
        }
        self.check()?;
        other.check()?;
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2, c2) = (other.a as i128, other.b as i128, other.c as i128);
        let beta = (b1 + b2) / 2;
        let (g1, _, y1) = ext_gcd(a1, a2);
        let (n, x2, y2) = ext_gcd(g1, beta);
        let (v, w) = (x2 * y1, y2);
        let big_a = a1 * a2 / (n * n);
        let mut big_b = b2 + 2 * (a2 / n) * (v * (beta - b2) - w * c2);
        let two_a = 2 * big_a.abs();
        big_b = big_b.rem_euclid(two_a);
        if big_b > big_a.abs() {
            big_b -= two_a;
        }
        let num = big_b * big_b - d1 as i128;
        if num % (4 * big_a) != 0 {
            return Err(Error::Internal(format!("composition of {self} and {other} failed")));
        }
        let f = Self::new(to_i64(big_a)?, to_i64(big_b)?, to_i64(num / (4 * big_a))?);
        f.reduce()
    }

    /// The reduction cycle of an indefinite reduced form.
    pub fn cycle(&self) -> Result<Vec<Self>> {
        if !self.is_reduced() || self.discriminant() < 0 {
            return Err(Error::Unsupported("cycle of a non-reduced or definite form".into()));
        }
        let mut out = vec![*self];
        let mut f = self.rho()?;
        while f != *self {
            out.push(f);
            f = f.rho()?;
            if out.len() > 1_000_000 {
                return Err(Error::PeriodTooLong(1_000_000));
            }
        }
        Ok(out)
    }
}

fn is_reduced_indefinite(a: i64, b: i64, d: i64) -> bool {
    // 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b
    let (a, b, d) = (a.unsigned_abs() as i128, b as i128, d as i128);
    if b <= 0 || b * b >= d {
        return false;
    }
    let lower = (2 * a + b) * (2 * a + b) > d;
    let upper = 2 * a - b < 0 || (2 * a - b) * (2 * a - b) < d;
    lower && upper
}

/// All reduced forms of a fundamental discriminant.
pub fn reduced_forms(disc: i64) -> Result<Vec<QuadForm>> {
    if is_square(disc as i128) {
        return Err(Error::SquareDiscriminant(disc));
    }
    let mut out = Vec::new();
    if disc < 0 {
        let n = -disc;
        let mut a = 1i64;
        while 3 * a * a <= n {
            for b in -a + 1..=a {
                if (b - disc).rem_euclid(2) != 0 {
                    continue;
                }
                let num = b * b - disc;
                if num % (4 * a) != 0 {
                    continue;
                }
                let f = QuadForm::new(a, b, num / (4 * a));
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
            a += 1;
        }
    } else {
        let s = (disc as u64).sqrt() as i64;
        for b in 1..=s {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let n = (disc - b * b) / 4;
            for a in 1..=n {
                if n % a != 0 {
                    continue;
                }
                for sa in [a, -a] {
                    let f = QuadForm::new(sa, b, -n / sa);
                    if f.is_reduced() && f.is_primitive() {
                        out.push(f);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The narrow class group of a fundamental discriminant, realized on forms.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    discriminant: i64,
    reps: Vec<QuadForm>,
    lookup: HashMap<QuadForm, usize>,
    identity: usize,
}

impl FormClassGroup {
    pub fn new(disc: i64) -> Result<Self> {
        if !is_fundamental_discriminant(disc) {
            return Err(Error::NotFundamental(disc));
        }
        let forms = reduced_forms(disc)?;
        let mut reps = Vec::new();
        let mut lookup = HashMap::new();
        if disc < 0 {
            for f in forms {
                lookup.insert(f, reps.len());
                reps.push(f);
            }
        } else {
            for f in forms {
                if lookup.contains_key(&f) {
                    continue;
                }
                let idx = reps.len();
                for g in f.cycle()? {
                    lookup.insert(g, idx);
                }
                reps.push(f);
            }
        }
        let mut g = Self {
            discriminant: disc,
            reps,
            lookup,
            identity: 0,
        };
        g.identity = g.class_of_form(&QuadForm::principal(disc))?;
        Ok(g)
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// Narrow class number.
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// A reduced form in the given class.
    pub fn representative(&self, class: usize) -> QuadForm {
        self.reps[class]
    }

    pub fn class_of_form(&self, f: &QuadForm) -> Result<usize> {
        if f.discriminant() != self.discriminant {
            return Err(Error::MismatchedDiscriminants(f.discriminant(), self.discriminant));
        }
        let r = f.reduce()?;
        self.lookup
            .get(&r)
            .copied()
            .ok_or_else(|| Error::Internal(format!("reduced form {r} missing from table")))
    }

    pub fn mul(&self, x: usize, y: usize) -> Result<usize> {
        self.class_of_form(&self.reps[x].compose(&self.reps[y])?)
    }

    pub fn inverse(&self, x: usize) -> Result<usize> {
        self.class_of_form(&self.reps[x].conjugate())
    }

    pub fn pow(&self, x: usize, mut k: u64) -> Result<usize> {
        let mut acc = self.identity;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn element_order(&self, x: usize) -> Result<u64> {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x)?;
            k += 1;
        }
        Ok(k)
    }

    /// Class of the narrow-principal ideals with a generator of negative norm.
    /// Trivial iff the fundamental unit has norm -1 (always trivial for D < 0).
    pub fn negative_class(&self) -> Result<usize> {
        if self.discriminant < 0 {
            return Ok(self.identity);
        }
        self.class_of_form(&QuadForm::negative_principal(self.discriminant))
    }

    /// Class of the form attached to a degree-one prime ideal.
    pub fn class_of_ideal(&self, ideal: &PrimeIdeal) -> Result<usize> {
        self.class_of_form(&ideal.form)
    }

    /// Closure of a set of classes under multiplication.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Vec<usize>> {
        let mut members = vec![false; self.order()];
        members[self.identity] = true;
        let mut list = vec![self.identity];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(x, g)?;
                if !members[y] {
                    members[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        Ok(list)
    }

    /// Whether the `p`-parts of `classes` generate the `p`-Sylow subgroup.
    pub fn generates_sylow(&self, classes: &[usize], p: u64) -> Result<bool> {
        let strip = |mut n: u64| {
            while n % p == 0 {
                n /= p;
            }
            n
        };
        let gens = classes
            .iter()
            .map(|&c| self.pow(c, strip(self.element_order(c)?)))
            .collect::<Result<Vec<_>>>()?;
        let order = self.order() as u64;
        Ok(self.subgroup(&gens)?.len() as u64 == order / strip(order))
    }

    /// Structure of the quotient by the subgroup generated by `kernel`.
    fn quotient_structure(&self, kernel: &[usize]) -> Result<ClassGroupStructure> {
        let sub = self.subgroup(kernel)?;
        let mut in_sub = vec![false; self.order()];
        for &s in &sub {
            in_sub[s] = true;
        }
        // orders of elements in the quotient, counted once per coset
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut coset_orders = Vec::new();
        for x in 0..self.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = coset_orders.len();
            for &s in &sub {
                coset_of[self.mul(x, s)?] = id;
            }
            let mut k = 1u64;
            let mut y = x;
            while !in_sub[y] {
                y = self.mul(y, x)?;
                k += 1;
            }
            coset_orders.push(k);
        }
        Ok(structure_from_orders(&coset_orders))
    }

    pub fn structure(&self, sense: Sense) -> Result<ClassGroupStructure> {
        match sense {
            Sense::Narrow => self.quotient_structure(&[]),
            Sense::Ordinary => self.quotient_structure(&[self.negative_class()?]),
        }
    }
}

/// Structure of a finite abelian group from the multiset of its element
/// orders: the number of elements killed by `p^j` fixes every `p^j`-rank.
pub fn structure_from_orders(orders: &[u64]) -> ClassGroupStructure {
    let n = orders.len() as u64;
    let mut parts: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, e) in crate::arith::factorize_u64(n.max(1)).unwrap_or_default() {
        // logs[j] = log_p #G[p^j]
        let mut logs = vec![0u32];
        let mut pj = 1u64;
        for _ in 0..e {
            pj *= p;
            let mut count = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            let mut l = 0;
            while count > 1 {
                count /= p;
                l += 1;
            }
            logs.push(l);
        }
        let ranks: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let first = ranks.first().copied().unwrap_or(0) as usize;
        let exps: Vec<u32> = (0..first)
            .map(|j| ranks.iter().filter(|&&r| r as usize > j).count() as u32)
            .collect();
        if !exps.is_empty() {
            parts.insert(p, exps);
        }
    }
    ClassGroupStructure::from_prime_partitions(&parts)
}

/// Narrow or ordinary class group structure of a fundamental discriminant.
pub fn class_group(disc: i64, sense: Sense) -> Result<ClassGroupStructure> {
    FormClassGroup::new(disc)?.structure(sense)
}

/// The class of a degree-one prime ideal of `field`, together with its order.
pub fn class_of_ideal(field: &QuadraticField, ideal: &PrimeIdeal) -> Result<(usize, u64)> {
    let g = FormClassGroup::new(field.discriminant)?;
    let c = g.class_of_ideal(ideal)?;
    Ok((c, g.element_order(c)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_definite_examples() {
        let f = QuadForm::new(2, 1, 6);
        assert_eq!(f.reduce().unwrap(), f);
        // (6, 1, 2) is equivalent to (2, -1, 6), which is the inverse class
        // of (2, 1, 6); both are reduced and distinct.
        assert_eq!(QuadForm::new(6, 1, 2).reduce().unwrap(), QuadForm::new(2, -1, 6));
        assert_eq!(QuadForm::new(3, 3, 4).reduce().unwrap(), QuadForm::new(3, 3, 4));
        assert_eq!(QuadForm::new(4, -3, 4).reduce().unwrap(), QuadForm::new(4, 3, 4));
    }

    #[test]
    fn reduced_forms_minus_47() {
        let forms = reduced_forms(-47).unwrap();
        assert_eq!(
            forms,
            vec![
                QuadForm::new(1, 1, 12),
                QuadForm::new(2, -1, 6),
                QuadForm::new(2, 1, 6),
                QuadForm::new(3, -1, 4),
                QuadForm::new(3, 1, 4),
            ]
        );
    }

    #[test]
    fn composition_minus_47() {
        let g = FormClassGroup::new(-47).unwrap();
        let f = g.class_of_form(&QuadForm::new(2, 1, 6)).unwrap();
        let sq = g.mul(f, f).unwrap();
        assert_eq!(g.representative(sq).a, 3);
        assert_eq!(
            g.representative(sq),
            QuadForm::new(4, 1, 3).reduce().unwrap()
        );
        assert_eq!(g.pow(f, 5).unwrap(), g.identity());
        assert_eq!(g.element_order(f).unwrap(), 5);
        assert_eq!(g.structure(Sense::Narrow).unwrap().elementary_divisors, vec![5]);
    }

    #[test]
    fn identity_and_inverse_laws() {
        for d in [-47i64, -84, -231, 328, 136, 229, 4 * 210] {
            let g = FormClassGroup::new(d).unwrap();
            for x in 0..g.order() {
                assert_eq!(g.mul(g.identity(), x).unwrap(), x);
                let inv = g.inverse(x).unwrap();
                assert_eq!(g.mul(x, inv).unwrap(), g.identity(), "D={d} x={x}");
            }
        }
    }

    #[test]
    fn principal_cycle_of_328() {
        let p = QuadForm::principal(328).reduce().unwrap();
        let cyc = p.cycle().unwrap();
        assert!(cyc.iter().all(|f| f.is_reduced() && f.discriminant() == 328));
        // (1, 18, -1) is reduced for D = 328 and lies on the principal cycle
        assert!(cyc.contains(&QuadForm::new(1, 18, -1)));
        assert!(cyc.contains(&QuadForm::new(-1, 18, 1)));
    }

    #[test]
    fn class_group_examples() {
        assert_eq!(class_group(328, Sense::Narrow).unwrap().elementary_divisors, vec![4]);
        assert!(class_group(-4, Sense::Narrow).unwrap().is_trivial());
        assert_eq!(class_group(-47, Sense::Narrow).unwrap().elementary_divisors, vec![5]);
        assert_eq!(class_group(-84, Sense::Narrow).unwrap().elementary_divisors, vec![2, 2]);
        // Q(sqrt 3): narrow class number 2, ordinary 1
        assert_eq!(class_group(12, Sense::Narrow).unwrap().elementary_divisors, vec![2]);
        assert!(class_group(12, Sense::Ordinary).unwrap().is_trivial());
        assert_eq!(class_group(136, Sense::Ordinary).unwrap().elementary_divisors, vec![2]);
        assert_eq!(class_group(136, Sense::Narrow).unwrap().elementary_divisors, vec![4]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(class_group(-12 * 4, Sense::Narrow), Err(Error::NotFundamental(-48)));
        assert_eq!(
            QuadForm::new(1, 2, 1).reduce(),
            Err(Error::SquareDiscriminant(0))
        );
        assert!(matches!(
            QuadForm::new(1, 1, 12).compose(&QuadForm::new(1, 0, 1)),
            Err(Error::MismatchedDiscriminants(-47, -4))
        ));
    }
}
