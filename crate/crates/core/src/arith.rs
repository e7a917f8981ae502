//! Exact integer primitives: Kronecker symbols, Chinese remaindering,
//! factorization and p-adic valuations.
//!
//! Factorization is trial division up to [`TRIAL_LIMIT`] followed by a
//! deterministic Miller–Rabin test and Pollard's rho (Brent variant). Inputs
//! in this crate are desk-scale, so nothing more elaborate is needed.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization of a nonzero integer. The sign is not recorded in
/// `factors`; callers that care keep it from `value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: i64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// A system of congruences `x = r_i mod m_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CongruenceSystem {
    pub congruences: Vec<(i64, u64)>,
}

impl CongruenceSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, residue: i64, modulus: u64) -> Self {
        self.congruences.push((residue, modulus));
        self
    }

    pub fn push(&mut self, residue: i64, modulus: u64) {
        self.congruences.push((residue, modulus));
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Extended gcd on i128: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

/// Deterministic Miller–Rabin for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn big_pow_mod(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Miller–Rabin on big integers with the first 20 prime bases. Deterministic
/// below 3.3e24 and overwhelmingly reliable above.
pub fn is_prime_big(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_negative() || n.is_even() {
        return false;
    }
    const BASES: [u64; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in BASES {
        let a = BigInt::from(a);
        let mut x = big_pow_mod(&a, &d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x).mod_floor(n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn rho_big(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c).mod_floor(n);
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

fn push_factor(out: &mut Vec<(u64, u32)>, p: u64) {
    match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    }
}

fn split_u64(n: u64, out: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        push_factor(out, n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

/// Factorization of a nonzero `u64`.
pub fn factorize_u64(mut n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push_factor(&mut out, p);
            n /= p;
        }
    }
    // wheel mod 30
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p <= TRIAL_LIMIT && p * p <= n {
        while n % p == 0 {
            push_factor(&mut out, p);
            n /= p;
        }
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if n > 1 {
        split_u64(n, &mut out);
    }
    out.sort_unstable();
    Ok(out)
}

/// Factorization of a nonzero `i64`, sign recorded in `value` only.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    Ok(Factorization {
        value: n,
        factors: factorize_u64(n.unsigned_abs())?,
    })
}

/// Factorization of the absolute value of a nonzero big integer.
pub fn factorize_big(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small)?
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect());
    }
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n;
    let push = |out: &mut Vec<(BigInt, u32)>, p: BigInt| match out.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => out.push((p, 1)),
    };
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            push(&mut out, bp.clone());
            rest /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            for (q, e) in factorize_u64(small)? {
                for _ in 0..e {
                    push(&mut out, BigInt::from(q));
                }
            }
        } else if is_prime_big(&m) {
            push(&mut out, m);
        } else {
            let d = rho_big(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    out.sort();
    Ok(out)
}

/// Whether `n` is squarefree (`n != 0`).
pub fn is_squarefree(n: i64) -> bool {
    n != 0
        && factorize(n)
            .map(|f| f.is_squarefree())
            .unwrap_or(false)
}

/// Kronecker symbol `(a/n)`.
///
/// At `n = 0` the value is 1 when `a = ±1` and 0 otherwise.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result: i8 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= v;
    }
    // Jacobi symbol (a/n) with n odd positive.
    a = a.rem_euclid(n);
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Least positive solution of a system of congruences. Moduli need not be
/// coprime as long as the residues agree on overlaps.
pub fn crt(system: &CongruenceSystem) -> Result<i128> {
    let mut x: i128 = 0;
    let mut m: i128 = 1;
    for &(r, modulus) in &system.congruences {
        if modulus == 0 {
            return Err(Error::Zero);
        }
        let mi = modulus as i128;
        let r = (r as i128).rem_euclid(mi);
        let (g, p, _) = ext_gcd(m, mi);
        if (r - x).rem_euclid(g) != 0 {
            return Err(Error::InconsistentSystem);
        }
        let lcm = m / g * mi;
        let step = ((r - x) / g).rem_euclid(mi / g) * p.rem_euclid(mi / g) % (mi / g);
        x = (x + m * step).rem_euclid(lcm);
        m = lcm;
    }
    Ok(if x == 0 { m } else { x })
}

/// `v_p(n)` for a nonzero integer.
pub fn valuation_int(n: i128, p: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Zero);
    }
    if p < 2 {
        return Err(Error::NotPrime(p as i64));
    }
    let p = p as i128;
    let mut n = n.abs();
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Ok(v)
}

pub fn valuation_big(n: &BigInt, p: u64) -> Result<i64> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(n)` for a nonzero rational; negative for denominators.
pub fn valuation(n: &BigRational, p: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as i64));
    }
    if n.is_zero() {
        return Err(Error::Zero);
    }
    Ok(valuation_big(n.numer(), p)? - valuation_big(n.denom(), p)?)
}

/// Square root of `a` modulo an odd prime `p` (Tonelli–Shanks), or modulo 2.
pub fn sqrt_mod_prime(a: i64, p: u64) -> Option<u64> {
    let a = (a as i128).rem_euclid(p as i128) as u64;
    if p == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = (n as u128).sqrt();
        r * r == n as u128
    }
}

pub fn is_square_big(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// A generator of `(Z/pZ)^×` for an odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p as i64));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = factorize_u64(p - 1)?;
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| Error::Internal(format!("no primitive root mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_jacobi(a: i64, n: i64) -> i8 {
        // Euler's criterion over the prime factorization of n.
        let f = factorize(n).unwrap();
        let mut r = 1i8;
        for (p, e) in f.factors {
            let leg = if a.rem_euclid(p as i64) == 0 {
                0
            } else if pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p) == 1 {
                1
            } else {
                -1
            };
            for _ in 0..e {
                r *= leg;
            }
        }
        r
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(82, 249), -1);
        assert_eq!(kronecker(82, 105), 1);
        assert_eq!(kronecker(12345, 1), 1);
        assert_eq!(kronecker(-7, 1), 1);
    }

    #[test]
    fn kronecker_at_zero_and_even() {
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(2, 0), 0);
        // (a/2) = +1 for a = ±1 mod 8, -1 for a = ±3 mod 8
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(4, 2), 0);
        assert_eq!(kronecker(-1, -1), -1);
    }

    #[test]
    fn kronecker_matches_euler_on_odd() {
        for n in (1..200i64).step_by(2) {
            for a in -60..60 {
                assert_eq!(kronecker(a, n), brute_jacobi(a, n), "({a}/{n})");
            }
        }
    }

    #[test]
    fn crt_examples() {
        let s = CongruenceSystem::new().with(1, 8).with(3, 41);
        assert_eq!(crt(&s).unwrap(), 249);
        let s = CongruenceSystem::new().with(1, 8).with(23, 41);
        assert_eq!(crt(&s).unwrap(), 105);
        assert_eq!(crt(&CongruenceSystem::new().with(5, 7)).unwrap(), 5);
    }

    #[test]
    fn crt_non_coprime() {
        let ok = CongruenceSystem::new().with(1, 4).with(3, 6);
        assert_eq!(crt(&ok).unwrap(), 9);
        let bad = CongruenceSystem::new().with(1, 4).with(2, 6);
        assert_eq!(crt(&bad), Err(Error::InconsistentSystem));
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(328).unwrap().factors, vec![(2, 3), (41, 1)]);
        assert!(factorize(1).unwrap().factors.is_empty());
        let f = factorize(-47).unwrap();
        assert_eq!(f.factors, vec![(47, 1)]);
        assert_eq!(f.value, -47);
        assert_eq!(factorize(0), Err(Error::Zero));
    }

    #[test]
    fn factorize_large_semiprime() {
        // two primes above the trial-division limit
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(factorize_u64(p * q).unwrap(), vec![(p, 1), (q, 1)]);
        let big = BigInt::from(p) * BigInt::from(q) * BigInt::from(4_294_967_311u64);
        let f = factorize_big(&big).unwrap();
        assert_eq!(f.len(), 3);
        let prod: BigInt = f.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(prod, big);
    }

    #[test]
    fn valuation_examples() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(valuation(&r(8, 1), 2).unwrap(), 3);
        assert_eq!(valuation(&r(-5, 1), 5).unwrap(), 1);
        assert_eq!(valuation(&r(1, 9), 3).unwrap(), -2);
        assert_eq!(valuation(&r(0, 1), 3), Err(Error::Zero));
        assert!(valuation(&r(3, 1), 4).is_err());
    }

    #[test]
    fn sqrt_mod_prime_all_residues() {
        for p in primes_up_to(200) {
            for a in 0..p {
                match sqrt_mod_prime(a as i64, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a),
                    None => assert_eq!(kronecker(a as i64, p as i64), -1),
                }
            }
        }
    }

    #[test]
    fn primality_against_sieve() {
        let sieve = primes_up_to(10_000);
        for n in 0..10_000u64 {
            assert_eq!(is_prime(n), sieve.binary_search(&n).is_ok(), "{n}");
        }
        assert!(is_prime_big(&BigInt::from(4_294_967_311u64)));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(41).unwrap(), 6);
    }
}
