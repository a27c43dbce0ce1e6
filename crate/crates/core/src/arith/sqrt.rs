//! Square roots, primality and small-integer factorisation.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Int, Rat};

/// Exact integer square root, if `n` is a perfect square.
pub fn sqrt_int(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Non-negative rational square root, or `None` if `x` is not a square.
pub fn sqrt_rational(x: &Rat) -> Option<Rat> {
    let n = sqrt_int(x.numer())?;
    let d = sqrt_int(x.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_square_rat(x: &Rat) -> bool {
    sqrt_rational(x).is_some()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = super::fp::pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = super::fp::mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors_u64(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

/// Trial-division factorisation of a word-sized integer.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factorisation of a big integer by trial division up to `limit`; the
/// returned cofactor (possibly 1) has no prime factor below `limit`.
pub fn factor_int_partial(n: &Int, limit: u64) -> (Vec<(Int, u32)>, Int) {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return (out, n);
    }
    let mut d = 2u64;
    while d <= limit {
        let dd = BigInt::from(d);
        if &dd * &dd > n {
            break;
        }
        if (&n % &dd).is_zero() {
            let mut e = 0;
            while (&n % &dd).is_zero() {
                n /= &dd;
                e += 1;
            }
            out.push((dd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if let Some(v) = n.to_u64() {
            if is_prime_u64(v) {
                out.push((n.clone(), 1));
                return (out, BigInt::one());
            }
        }
        let dd = BigInt::from(d);
        if &dd * &dd > n {
            out.push((n.clone(), 1));
            return (out, BigInt::one());
        }
    }
    (out, n)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &Int, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while n.is_multiple_of(&pb) {
        n /= &pb;
        v += 1;
    }
    v
}

pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: &Int) -> Int {
    let (fac, rest) = factor_int_partial(n, 1 << 20);
    let mut r = if n.sign() == Sign::Minus { -BigInt::one() } else { BigInt::one() };
    for (p, e) in fac {
        if e % 2 == 1 {
            r *= p;
        }
    }
    r * rest
}
