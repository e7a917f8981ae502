//! Exact elements of `Q(ζ_N)` on the power basis `1, ζ, …, ζ^{φ(N)-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize_u64, valuation};
use crate::error::{Error, Result};

/// Integer coefficients of `Φ_N`, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let q = rem[i + dd] / lead;
        quot[i] = q;
        for (j, &c) in den.iter().enumerate() {
            rem[i + j] -= q * c;
        }
    }
    quot
}

pub fn euler_phi(n: u64) -> u64 {
    factorize_u64(n)
        .expect("n ≥ 1")
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// `ζ^k` in the power basis for `0 ≤ k < N`.
fn power_table(n: u64) -> Vec<Vec<i64>> {
    let phi = euler_phi(n) as usize;
    let poly = cyclotomic_polynomial(n);
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        out.push(cur.clone());
        // multiply by ζ and reduce with the monic Φ_N
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..phi {
            cur[i] -= top * poly[i];
        }
    }
    out
}

/// `(Σ c_i ζ_N^i) / den` with `den > 0` and no common factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicInt {
    pub n: u64,
    pub coeffs: Vec<BigInt>,
    pub den: BigInt,
}

impl CyclotomicInt {
    pub fn zero(n: u64) -> Self {
        Self {
            n,
            coeffs: vec![BigInt::zero(); euler_phi(n) as usize],
            den: BigInt::one(),
        }
    }

    pub fn rational(n: u64, q: &BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q.numer().clone();
        z.den = q.denom().clone();
        z
    }

    /// `(Σ_k sums[k] ζ^k) / den` for exponents `k` modulo `N`.
    pub fn from_exponent_sums(n: u64, sums: &[BigInt], den: BigInt) -> Self {
        let table = power_table(n);
        let mut z = Self::zero(n);
        for (k, s) in sums.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for (c, &t) in z.coeffs.iter_mut().zip(&table[k % n as usize]) {
                *c += s * t;
            }
        }
        z.den = den;
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.coeffs.iter_mut() {
                *c = -&*c;
            }
        }
        let g = self.coeffs.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            self.den /= &g;
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).any(|c| !c.is_zero()) {
            return None;
        }
        Some(BigRational::new(self.coeffs[0].clone(), self.den.clone()))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Unsupported(format!(
                "cyclotomic levels {} and {} differ",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut z = Self {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * &other.den + b * &self.den)
                .collect(),
            den: &self.den * &other.den,
        };
        z.normalize();
        Ok(z)
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut sums = vec![BigInt::zero(); self.n as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                sums[(i + j) % self.n as usize] += a * b;
            }
        }
        Ok(Self::from_exponent_sums(self.n, &sums, &self.den * &other.den))
    }

    /// `τ_c : ζ ↦ ζ^c` for `c` prime to `N`.
    pub fn galois(&self, c: u64) -> Result<Self> {
        if c.gcd(&self.n) != 1 {
            return Err(Error::Unsupported(format!("{c} is not prime to {}", self.n)));
        }
        let mut sums = vec![BigInt::zero(); self.n as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            sums[(i as u64 * c % self.n) as usize] += a;
        }
        Ok(Self::from_exponent_sums(self.n, &sums, self.den.clone()))
    }

    /// `N_{Q(ζ_N)/Q}`, as the determinant of multiplication by `self`.
    pub fn norm(&self) -> BigRational {
        let phi = self.coeffs.len();
        let table = power_table(self.n);
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let mut row = vec![BigInt::zero(); phi];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (r, &t) in row.iter_mut().zip(&table[(i + j) % self.n as usize]) {
                    *r += a * t;
                }
            }
            rows.push(row);
        }
        BigRational::new(bareiss_det(rows), self.den.pow(phi as u32))
    }

    /// `v_p(N(self))`; for `N ∈ {p, 2p}` with `p` odd, or `N = 4` and
    /// `p = 2`, this is the valuation at the unique prime above `p`.
    pub fn norm_valuation(&self, p: u64) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::Zero);
        }
        valuation(&self.norm(), p)
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.n),
                _ => format!("{c}*z{}^{i}", self.n),
            });
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        match (self.den.is_one(), terms.len() > 1) {
            (true, _) => write!(f, "{body}"),
            (false, true) => write!(f, "({body})/{}", self.den),
            (false, false) => write!(f, "{body}/{}", self.den),
        }
    }
}
