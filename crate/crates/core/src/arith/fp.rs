//! Prime fields of word-sized characteristic and dense polynomials over them.
//!
//! Everything that runs in inner loops (point counting, divisor arithmetic,
//! factoring modulo a prime) goes through the `u64` representation here
//! rather than the generic [`RingElem`] machinery.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::ring::RingElem;
use super::Int;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Legendre symbol as 1, p-1 (for -1) or 0.
pub fn legendre(a: u64, p: u64) -> u64 {
    pow_mod(a % p, (p - 1) / 2, p)
}

pub fn is_square_mod(a: u64, p: u64) -> bool {
    let a = a % p;
    a == 0 || legendre(a, p) == 1
}

/// Tonelli–Shanks square root modulo an odd prime.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre(z, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
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

pub fn int_mod_u64(n: &Int, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Element of the prime field F_p, p < 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }
}

impl RingElem for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn from_int_like(&self, n: &Int) -> Self {
        Fp { v: int_mod_u64(n, self.p), p: self.p }
    }
    fn plus(&self, o: &Self) -> Self {
        Fp { v: add_mod(self.v, o.v, self.p), p: self.p }
    }
    fn minus(&self, o: &Self) -> Self {
        Fp { v: sub_mod(self.v, o.v, self.p), p: self.p }
    }
    fn times(&self, o: &Self) -> Self {
        Fp { v: mul_mod(self.v, o.v, self.p), p: self.p }
    }
    fn negate(&self) -> Self {
        Fp { v: sub_mod(0, self.v, self.p), p: self.p }
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn try_inv(&self) -> Option<Self> {
        inv_mod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
}

/// Dense polynomial over F_p, coefficients from low to high degree, no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    pub c: Vec<u64>,
    pub p: u64,
}

impl FpPoly {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        let mut r = FpPoly { c, p };
        r.trim();
        r
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { c: vec![], p }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::constant(1, p)
    }

    pub fn constant(a: u64, p: u64) -> Self {
        FpPoly::new(vec![a], p)
    }

    /// The monomial x.
    pub fn x(p: u64) -> Self {
        FpPoly { c: vec![0, 1], p }
    }

    pub fn from_ints(c: &[Int], p: u64) -> Self {
        FpPoly::new(c.iter().map(|a| int_mod_u64(a, p)).collect(), p)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        *self.c.get(i).unwrap_or(&0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), self.p)).collect();
        FpPoly::new(c, self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), self.p)).collect();
        FpPoly::new(c, self.p)
    }

    pub fn neg(&self) -> Self {
        FpPoly::zero(self.p).sub(self)
    }

    pub fn scale(&self, a: u64) -> Self {
        FpPoly::new(self.c.iter().map(|&x| mul_mod(x, a, self.p)).collect(), self.p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = (p as u128) * (p as u128);
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                let s = acc[i + j] + a as u128 * b as u128;
                acc[i + j] = if s >= pp * 64 { s % p as u128 } else { s };
            }
        }
        FpPoly::new(acc.into_iter().map(|x| (x % p as u128) as u64).collect(), p)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        FpPoly { c, p: self.p }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p).unwrap();
        self.scale(inv)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.deg() < d.deg() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p).unwrap();
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = mul_mod(r[i + dd], inv, p);
            q[i] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    r[i + j] = sub_mod(r[i + j], mul_mod(coef, b, p), p);
                }
            }
        }
        r.truncate(dd);
        (FpPoly::new(q, p), FpPoly::new(r, p))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s2 = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s2;
            let t2 = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = add_mod(mul_mod(acc, x, self.p), a, self.p);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod(a, i as u64 % p, p))
            .collect();
        FpPoly::new(c, p)
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: Int, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p).rem(m);
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e /= &two;
        }
        acc
    }

    pub fn random<R: Rng>(deg: usize, p: u64, rng: &mut R) -> Self {
        FpPoly::new((0..=deg).map(|_| rng.gen_range(0..p)).collect(), p)
    }

    pub fn random_monic<R: Rng>(deg: usize, p: u64, rng: &mut R) -> Self {
        let mut c: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
        c.push(1);
        FpPoly { c, p }
    }

    /// Rabin irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = self.deg();
        if n <= 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let n = n as u64;
        let f = self.monic();
        let p = self.p;
        let x = FpPoly::x(p);
        let pbig = BigInt::from(p);
        let xpn = x.powmod(pbig.pow(n as u32), &f);
        if xpn != x.rem(&f) {
            return false;
        }
        for q in super::sqrt::prime_factors_u64(n) {
            let h = x.powmod(pbig.pow((n / q) as u32), &f).sub(&x);
            if h.gcd(&f).deg() != 0 {
                return false;
            }
        }
        true
    }

    /// Squarefree factorisation (Yun-style, with the p-th root step).
    pub fn squarefree_decomposition(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() <= 0 {
            return out;
        }
        let df = f.derivative();
        if df.is_zero() {
            // f = g(x^p)
            let g = FpPoly::new(f.c.iter().step_by(p as usize).copied().collect(), p);
            for (h, m) in g.squarefree_decomposition() {
                out.push((h, m * p as usize));
            }
            return out;
        }
        let mut c = f.gcd(&df);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if z.deg() > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.div_exact(&w);
        }
        if c.deg() > 0 {
            let g = FpPoly::new(c.c.iter().step_by(p as usize).copied().collect(), p);
            for (h, m) in g.squarefree_decomposition() {
                out.push((h, m * p as usize));
            }
        }
        out
    }

    /// Distinct-degree factorisation of a squarefree monic polynomial.
    pub fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let x = FpPoly::x(p);
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut d = 0;
        let pbig = BigInt::from(p);
        while f.deg() >= 2 * (d as isize + 1) {
            d += 1;
            h = h.powmod(pbig.clone(), &f);
            let g = h.sub(&x).gcd(&f);
            if g.deg() > 0 {
                f = f.div_exact(&g);
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.deg() > 0 {
            let dd = f.deg() as usize;
            out.push((f, dd));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus, odd p).
    pub fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<FpPoly> {
        let n = self.deg() as usize;
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        let e = (BigInt::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = FpPoly::random(n - 1, p, rng);
            if a.deg() < 1 {
                continue;
            }
            let b = a.powmod(e.clone(), self).sub(&FpPoly::one(p));
            let g = b.gcd(self);
            if g.deg() > 0 && g.deg() < self.deg() {
                let mut out = g.equal_degree(d, rng);
                out.extend(self.div_exact(&g).equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorisation into monic irreducibles with multiplicities.
    pub fn factor<R: Rng>(&self, rng: &mut R) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d, rng) {
                    out.push((irr, m));
                }
            }
        }
        out.sort_by(|a, b| a.0.c.len().cmp(&b.0.c.len()).then(a.0.c.cmp(&b.0.c)));
        out
    }

    /// All roots in F_p.
    pub fn roots<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        if self.deg() <= 0 {
            return vec![];
        }
        let x = FpPoly::x(self.p);
        let f = self.monic();
        let g = x.powmod(BigInt::from(self.p), &f).sub(&x).gcd(&f);
        if g.deg() <= 0 {
            return vec![];
        }
        let mut r: Vec<u64> = g
            .equal_degree(1, rng)
            .into_iter()
            .map(|l| sub_mod(0, l.coeff(0), self.p))
            .collect();
        r.sort_unstable();
        r
    }
}
