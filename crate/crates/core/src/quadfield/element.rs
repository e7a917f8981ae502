use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// The element `(x + y·√m) / z` of `Q(√m)`, kept with `gcd(x, y, z) = 1`
/// and `z > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadElement {
    pub m: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl QuadElement {
    pub fn new(m: i64, x: BigInt, y: BigInt, z: BigInt) -> Self {
        assert!(!z.is_zero(), "zero denominator");
        let mut e = Self { m, x, y, z };
        e.normalize();
        e
    }

    pub fn from_ints(m: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(m, x.into(), y.into(), z.into())
    }

    pub fn rational(m: i64, q: &BigRational) -> Self {
        Self::new(m, q.numer().clone(), BigInt::zero(), q.denom().clone())
    }

    pub fn one(m: i64) -> Self {
        Self::from_ints(m, 1, 0, 1)
    }

    fn normalize(&mut self) {
        let g = self.x.gcd(&self.y).gcd(&self.z);
        if !g.is_zero() && !g.is_one() {
            self.x /= &g;
            self.y /= &g;
            self.z /= &g;
        }
        if self.z.is_negative() {
            self.x = -&self.x;
            self.y = -&self.y;
            self.z = -&self.z;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Galois conjugate `(x - y√m) / z`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.m, self.x.clone(), -&self.y, self.z.clone())
    }

    /// `N(α) = (x² - m y²) / z²`.
    pub fn norm(&self) -> BigRational {
        BigRational::new(self.norm_numerator(), &self.z * &self.z)
    }

    /// `x² - m y²`, the norm of the numerator `x + y√m`.
    pub fn norm_numerator(&self) -> BigInt {
        &self.x * &self.x - BigInt::from(self.m) * &self.y * &self.y
    }

    pub fn trace(&self) -> BigRational {
        BigRational::new(2 * &self.x, self.z.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "elements of different fields");
        let m = BigInt::from(self.m);
        Self::new(
            self.m,
            &self.x * &other.x + &m * &self.y * &other.y,
            &self.x * &other.y + &self.y * &other.x,
            &self.z * &other.z,
        )
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(
            self.m,
            &self.x * q.numer(),
            &self.y * q.numer(),
            &self.z * q.denom(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.m, -&self.x, -&self.y, self.z.clone())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/α = z · conj(numerator) / N(numerator)
        let n = self.norm_numerator();
        Some(Self::new(
            self.m,
            &self.x * &self.z,
            -&self.y * &self.z,
            n,
        ))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.m);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Sign under the real embedding with `√m > 0`. Only meaningful for
    /// `m > 0`; for imaginary fields this compares the real part.
    pub fn sign(&self) -> Ordering {
        let sx = self.x.sign();
        let sy = if self.m > 0 { self.y.sign() } else { num_bigint::Sign::NoSign };
        use num_bigint::Sign::*;
        match (sx, sy) {
            (NoSign, NoSign) => Ordering::Equal,
            (Plus, Plus) | (Plus, NoSign) | (NoSign, Plus) => Ordering::Greater,
            (Minus, Minus) | (Minus, NoSign) | (NoSign, Minus) => Ordering::Less,
            (Plus, Minus) | (Minus, Plus) => {
                let x2 = &self.x * &self.x;
                let my2 = BigInt::from(self.m) * &self.y * &self.y;
                let x_wins = x2 > my2;
                if (sx == Plus) == x_wins {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Whether the element is an algebraic integer of `Q(√m)`.
    pub fn is_integral(&self) -> bool {
        self.trace().is_integer() && self.norm().is_integer()
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.y.is_negative() { "-" } else { "+" };
        let body = format!("{} {} {}*sqrt({})", self.x, sign, self.y.abs(), self.m);
        if self.z.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.z)
        }
    }
}
