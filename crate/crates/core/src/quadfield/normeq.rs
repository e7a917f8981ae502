//! The norm equation `N(y) = x` over `Q(√m)`.
//!
//! Solutions over `K^×` come from Legendre's descent on `X² = aY² + bZ²`;
//! integral solutions from an exhaustive search in Nagell's box.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{QuadElement, QuadraticField};
use crate::arith::{factorize_big, is_square_big};
use crate::error::{Error, Result};

/// Splits `n ≠ 0` as `s² · f` with `f` squarefree (sign kept on `f`).
fn square_split(n: &BigInt) -> Result<(BigInt, BigInt)> {
    let mut s = BigInt::one();
    let mut f = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factorize_big(n)? {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
    }
    Ok((s, f))
}

/// Square root of `a` modulo a prime `p` (Tonelli–Shanks on big integers).
fn sqrt_mod_prime_big(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() || p == &BigInt::from(2) {
        return Some(a);
    }
    let one = BigInt::one();
    let pm1 = p - 1u32;
    if a.modpow(&(&pm1 >> 1), p) != one {
        return None;
    }
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigInt::from(2);
    while z.modpow(&(&pm1 >> 1), p) != pm1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while t != one {
        let mut i = 0u64;
        let mut tt = t.clone();
        while tt != one {
            tt = &tt * &tt % p;
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = &b * &b % p;
        t = &t * &c % p;
        r = &r * &b % p;
    }
    Some(r)
}

/// Some `x0` with `x0² ≡ a (mod |b|)` and `|x0| ≤ |b|/2`, `b` squarefree.
fn sqrt_mod_squarefree(a: &BigInt, b: &BigInt) -> Result<Option<BigInt>> {
    let n = b.abs();
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (p, _) in factorize_big(&n)? {
        let r = match sqrt_mod_prime_big(a, &p) {
            Some(r) => r,
            None => return Ok(None),
        };
        // combine x mod modulus with r mod p
        let inv = modulus
            .modinv(&p)
            .ok_or_else(|| Error::Internal("non-coprime moduli in squarefree CRT".into()))?;
        let t = ((&r - &x) * inv).mod_floor(&p);
        x += &modulus * t;
        modulus *= p;
    }
    let x = x.mod_floor(&n);
    let half = &n >> 1;
    Ok(Some(if x > half { x - n } else { x }))
}

/// A nontrivial integer solution of `X² = aY² + bZ²` for squarefree `a`,
/// `b`, or `None` when there is none.
pub(crate) fn legendre_solve(a: &BigInt, b: &BigInt) -> Result<Option<(BigInt, BigInt, BigInt)>> {
    let one = BigInt::one();
    if a.is_one() {
        return Ok(Some((one.clone(), one, BigInt::zero())));
    }
    if b.is_one() {
        return Ok(Some((one.clone(), BigInt::zero(), one)));
    }
    if a.is_negative() && b.is_negative() {
        return Ok(None);
    }
    if a.abs() > b.abs() {
        return Ok(legendre_solve(b, a)?.map(|(x, y, z)| (x, z, y)));
    }
    let x0 = match sqrt_mod_squarefree(a, b)? {
        Some(x0) => x0,
        None => return Ok(None),
    };
    let c = (&x0 * &x0 - a) / b;
    if c.is_zero() {
        return Err(Error::Internal("descent reached a square coefficient".into()));
    }
    let (k, c1) = square_split(&c)?;
    let Some((x1, y1, z1)) = legendre_solve(a, &c1)? else {
        return Ok(None);
    };
    let x = &x0 * &x1 + a * &y1;
    let y = &x1 + &x0 * &y1;
    let z = &c1 * &k * &z1;
    Ok(Some((x, y, z)))
}

/// Some `y ∈ K^×` with `N(y) = x`, or `None` if `x` is not a norm.
pub fn solve_norm_equation(field: &QuadraticField, x: &BigRational) -> Result<Option<QuadElement>> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    let m = field.m;
    // N(y·den) = num·den
    let n = x.numer() * x.denom();
    let (s, f) = square_split(&n)?;
    let Some((big_x, big_y, big_z)) = legendre_solve(&BigInt::from(m), &f)? else {
        return Ok(None);
    };
    // X² - mY² = fZ², so N((X + Y√m)/Z) = f
    let y0 = QuadElement::new(m, big_x, big_y, big_z);
    let y = y0.scale(&BigRational::new(s, x.denom().clone()));
    if &y.norm() != x {
        return Err(Error::Internal(format!("norm solver produced N(y) = {} ≠ {x}", y.norm())));
    }
    Ok(Some(y))
}

/// An algebraic integer of norm `n`, if one exists.
///
/// Integers of `K` are `(X + Y√m)/2` with `X² - mY² = 4n` (and `X, Y` even
/// unless `m ≡ 1 mod 4`). Every orbit of solutions under the norm-one units
/// meets the box `0 ≤ Y ≤ U·√(n/(T+2))` (resp. `U·√(|n|/(T-2))` for `n < 0`),
/// where `(T + U√m)/2 > 1` generates the norm-one units.
pub fn integral_norm_solution(field: &QuadraticField, n: &BigInt) -> Result<Option<QuadElement>> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let m = field.m;
    let bm = BigInt::from(m);
    let four_n: BigInt = n * 4;
    let y_bound_sq: BigRational = if m < 0 {
        if n.is_negative() {
            return Ok(None);
        }
        // X² + |m|Y² = 4n
        BigRational::new(four_n.clone(), -&bm)
    } else {
        let eps = field
            .fundamental_unit
            .as_ref()
            .ok_or_else(|| Error::Internal("real field without unit".into()))?;
        let eta = if field.unit_norm == Some(-1) { eps.mul(eps) } else { eps.clone() };
        // η = (T + U√m)/2
        let scale = BigInt::from(2) / &eta.z;
        let t = &eta.x * &scale;
        let u = &eta.y * &scale;
        if n.is_positive() {
            BigRational::new(&u * &u * n, t + 2)
        } else {
            BigRational::new(&u * &u * n.abs(), t - 2)
        }
    };
    let y_max = y_bound_sq.floor().to_integer().sqrt();
    let odd_allowed = m.rem_euclid(4) == 1;
    let limit = y_max
        .to_u64()
        .filter(|&v| v <= 50_000_000)
        .ok_or_else(|| Error::SizeBound(format!("integral search box of height {y_max}")))?;
    for yv in 0..=limit {
        if !odd_allowed && yv % 2 == 1 {
            continue;
        }
        let y = BigInt::from(yv);
        let x2 = &four_n + &bm * &y * &y;
        if !is_square_big(&x2) {
            continue;
        }
        let x = x2.sqrt();
        if x.is_odd() != y.is_odd() {
            continue;
        }
        if !odd_allowed && x.is_odd() {
            continue;
        }
        return Ok(Some(QuadElement::new(m, x, y, BigInt::from(2))));
    }
    Ok(None)
}
