use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use super::QuadElement;
use crate::error::{Error, Result};

pub const MAX_CF_STEPS: usize = 1_000_000;

/// Fundamental unit `ε > 1` of the real field `Q(√m)` and its norm, found
/// among the continued-fraction convergents of `√m` (or of `(1+√m)/2` when
/// `m ≡ 1 mod 4`).
pub fn fundamental_unit(m: i64) -> Result<(QuadElement, i8)> {
    if m <= 1 {
        return Err(Error::Unsupported(format!("no fundamental unit for m = {m}")));
    }
    let omega_half = m.rem_euclid(4) == 1;
    let d = m as i128;
    let s = (m as u64).sqrt() as i128;
    // ω = (P + √d)/Q
    let (mut p_, mut q_) = if omega_half { (1i128, 2i128) } else { (0, 1) };
    let (mut h1, mut h2) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k2) = (BigInt::zero(), BigInt::one());
    let big_m = BigInt::from(m);
    for _ in 0..MAX_CF_STEPS {
        let a = (p_ + s).div_euclid(q_);
        let h = BigInt::from(a) * &h1 + &h2;
        let k = BigInt::from(a) * &k1 + &k2;
        let norm = if omega_half {
            // N(h - kω') with ω' the conjugate of ω
            (&h * &h - &h * &k) + &k * &k * (1 - &big_m) / 4
        } else {
            &h * &h - &big_m * &k * &k
        };
        if norm.is_one() || norm == -BigInt::one() {
            let unit = if omega_half {
                QuadElement::new(m, 2 * &h - &k, k, BigInt::from(2))
            } else {
                QuadElement::new(m, h, k, BigInt::one())
            };
            let sign = if norm.is_one() { 1 } else { -1 };
            return Ok((unit, sign));
        }
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
        p_ = a * q_ - p_;
        q_ = (d - p_ * p_) / q_;
    }
    Err(Error::PeriodTooLong(MAX_CF_STEPS))
}
