//! Divisor-class arithmetic on J(F_p): Cantor's algorithm for models with one
//! point at infinity and balanced divisors for models with two.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

use crate::arith::fp::{inv_mod, is_square_mod, mul_mod, sqrt_mod, FpPoly};
use crate::arith::Int;
use crate::error::{Error, Result};

use super::curve::CurveFp;

/// How the working model Y² = h(X) was obtained from y² = f(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordChange {
    /// If set, x = x0 + 1/t (an F_p-point moved to infinity).
    pub x0: Option<u64>,
    /// Odd degree: X = c·t, Y = c^g·y₁. Even degree: X = t, Y = y₁/√c.
    pub c: u64,
    /// √c for even degree.
    pub sqrt_c: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelType {
    /// Monic h of degree 2g+1.
    Imaginary,
    /// Monic h of degree 2g+2.
    Real,
}

/// A divisor class: div(u, v) + n·∞₊ + m·∞₋ − D_∞ with m = g − deg u − n
/// (n = m = 0 on imaginary models).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JacElem {
    pub u: FpPoly,
    pub v: FpPoly,
    pub n: i64,
}

#[derive(Clone, Debug)]
pub struct JacobianFp {
    pub curve: CurveFp,
    pub genus: usize,
    pub p: u64,
    pub h: FpPoly,
    pub kind: ModelType,
    pub change: CoordChange,
    /// Polynomial part of √h (real models).
    vplus: FpPoly,
}

/// t^{2g+2}·f(x0 + 1/t).
fn move_to_infinity(f: &FpPoly, x0: u64, deg: usize) -> FpPoly {
    let p = f.p;
    // f(x0 + s) coefficients via Taylor shift, then reverse to degree `deg`.
    let shift = FpPoly::new(vec![x0, 1], p);
    let mut acc = FpPoly::zero(p);
    for &a in f.c.iter().rev() {
        acc = acc.mul(&shift).add(&FpPoly::constant(a, p));
    }
    let mut c = acc.c.clone();
    c.resize(deg + 1, 0);
    c.reverse();
    FpPoly::new(c, p)
}

fn make_monic_model(f1: &FpPoly, g: usize) -> Result<(FpPoly, ModelType, u64, Option<u64>)> {
    let p = f1.p;
    let c = f1.lc();
    if f1.deg() as usize == 2 * g + 1 {
        // h(X) = c^{2g}·f1(X/c)
        let d = f1.c.len() - 1;
        let mut out = Vec::with_capacity(d + 1);
        for (i, &a) in f1.c.iter().enumerate() {
            let e = d as i64 - 1 - i as i64;
            let v = if e >= 0 { mul_mod(a, crate::arith::fp::pow_mod(c, e as u64, p), p) } else { 1 };
            out.push(v);
        }
        Ok((FpPoly::new(out, p), ModelType::Imaginary, c, None))
    } else {
        let s = sqrt_mod(c, p).ok_or(Error::NoRationalPoint(p))?;
        let inv = inv_mod(c, p).unwrap();
        Ok((f1.scale(inv), ModelType::Real, c, Some(s)))
    }
}

/// Polynomial part of √h for monic h of even degree.
fn sqrt_principal(h: &FpPoly, g: usize) -> FpPoly {
    let p = h.p;
    let d = g + 1;
    // V = x^d + ..., determine coefficients from the top down
    let mut v = vec![0u64; d + 1];
    v[d] = 1;
    let inv2 = inv_mod(2, p).unwrap();
    for k in (0..d).rev() {
        // coefficient of x^{d+k} in V² must match h
        let mut s = 0u64;
        for i in k + 1..=d {
            let j = d + k - i;
            if j > k && j <= d {
                s = (s + mul_mod(v[i], v[j], p)) % p;
            }
        }
        let target = h.coeff(d + k);
        // 2·v[k]·v[d] + s = target
        v[k] = mul_mod((target + p - s % p) % p, inv2, p);
    }
    FpPoly::new(v, p)
}

impl JacobianFp {
    /// Working model for J(F_p), moving an F_p-point to infinity if needed.
    pub fn new(curve: &CurveFp) -> Result<Self> {
        let g = curve.genus;
        let p = curve.p;
        let f = &curve.f;
        let deg = 2 * g + 2;
        let (f1, x0) = if f.deg() as usize == 2 * g + 1 || crate::arith::fp::is_square_mod(f.lc(), p) {
            (f.clone(), None)
        } else if let Some(r) = (0..p).find(|&x| f.eval(x) == 0) {
            (move_to_infinity(f, r, deg), Some(r))
        } else if let Some(x) = (0..p).find(|&x| is_square_mod(f.eval(x), p)) {
            (move_to_infinity(f, x, deg), Some(x))
        } else {
            return Err(Error::NoRationalPoint(p));
        };
        let (h, kind, c, sqrt_c) = make_monic_model(&f1, g)?;
        let vplus = if kind == ModelType::Real { sqrt_principal(&h, g) } else { FpPoly::zero(p) };
        Ok(JacobianFp { curve: curve.clone(), genus: g, p, h, kind, change: CoordChange { x0, c, sqrt_c }, vplus })
    }

    fn inf_split(&self) -> (i64, i64) {
        let g = self.genus as i64;
        ((g + 1) / 2, g / 2)
    }

    pub fn zero(&self) -> JacElem {
        let n = if self.kind == ModelType::Real { self.inf_split().0 } else { 0 };
        JacElem { u: FpPoly::one(self.p), v: FpPoly::zero(self.p), n }
    }

    pub fn is_zero(&self, a: &JacElem) -> bool {
        *a == self.zero()
    }

    /// Checks the representation invariants.
    pub fn is_valid(&self, a: &JacElem) -> bool {
        let du = a.u.deg();
        if du < 0 || a.u.lc() != 1 || du > self.genus as isize || a.v.deg() >= du {
            return false;
        }
        if !self.h.sub(&a.v.mul(&a.v)).rem(&a.u).is_zero() {
            return false;
        }
        match self.kind {
            ModelType::Imaginary => a.n == 0,
            ModelType::Real => a.n >= 0 && a.n <= self.genus as i64 - du as i64,
        }
    }

    fn m_of(&self, a: &JacElem) -> i64 {
        self.genus as i64 - a.u.deg() as i64 - a.n
    }

    /// Cantor composition; returns (u, v, deg of the removed common part).
    fn compose(&self, a: &JacElem, b: &JacElem) -> (FpPoly, FpPoly, i64) {
        let (d1, e1, e2) = a.u.xgcd(&b.u);
        let (d, c1, c2) = d1.xgcd(&a.v.add(&b.v));
        let s1 = c1.mul(&e1);
        let s2 = c1.mul(&e2);
        let s3 = c2;
        let u = a.u.mul(&b.u).div_exact(&d.mul(&d));
        let num = s1
            .mul(&a.u)
            .mul(&b.v)
            .add(&s2.mul(&b.u).mul(&a.v))
            .add(&s3.mul(&a.v.mul(&b.v).add(&self.h)));
        let v = num.div_exact(&d).rem(&u);
        (u, v, d.deg() as i64)
    }

    pub fn add(&self, a: &JacElem, b: &JacElem) -> JacElem {
        let (u, v, dh) = self.compose(a, b);
        match self.kind {
            ModelType::Imaginary => self.reduce_imaginary(u, v),
            ModelType::Real => {
                let n = a.n + b.n + dh;
                let m = self.m_of(a) + self.m_of(b) + dh;
                self.reduce_real(u, v, n, m)
            }
        }
    }

    fn reduce_imaginary(&self, mut u: FpPoly, mut v: FpPoly) -> JacElem {
        let g = self.genus as isize;
        while u.deg() > g {
            let u2 = self.h.sub(&v.mul(&v)).div_exact(&u).monic();
            v = v.neg().rem(&u2);
            u = u2;
        }
        JacElem { u, v, n: 0 }
    }

    /// One step with y − w, w ≡ v (mod u) chosen near s·V⁺. Returns the new
    /// (u, v, n, m).
    fn real_step(&self, u: &FpPoly, v: &FpPoly, n: i64, m: i64, s: i64) -> (FpPoly, FpPoly, i64, i64) {
        let sv = if s > 0 { self.vplus.clone() } else { self.vplus.neg() };
        let w = sv.add(&v.sub(&sv).rem(u));
        let hw = self.h.sub(&w.mul(&w));
        let u2 = hw.div_exact(u).monic();
        let a = w.sub(&self.vplus).deg() as i64;
        let b = w.add(&self.vplus).deg() as i64;
        let dh = hw.deg() as i64;
        let (pp, pm) = if a >= b { (a, dh - a) } else { (dh - b, b) };
        let du2 = u2.deg() as i64;
        let v2 = w.neg().rem(&u2);
        (u2, v2, n + pp - du2, m + pm - du2)
    }

    fn reduce_real(&self, mut u: FpPoly, mut v: FpPoly, mut n: i64, mut m: i64) -> JacElem {
        let g = self.genus as i64;
        while u.deg() as i64 > g {
            let s = if n >= m { 1 } else { -1 };
            (u, v, n, m) = self.real_step(&u, &v, n, m, s);
        }
        let (c, f) = self.inf_split();
        n -= c;
        m -= f;
        let mut guard = 0;
        while n < 0 || m < 0 {
            let s = if n < 0 { -1 } else { 1 };
            (u, v, n, m) = self.real_step(&u, &v, n, m, s);
            guard += 1;
            assert!(guard < 64 * (g as usize + 1), "balanced reduction did not terminate");
        }
        debug_assert_eq!(u.deg() as i64 + n + m, g);
        JacElem { u, v, n }
    }

    /// The reduced class of div(u, v) + a·∞₊ + b·∞₋ − D_∞ on the working
    /// model, where v² ≡ h (mod u) and deg u + a + b = g; on imaginary
    /// models this is div(u, v) − deg(u)·∞ and `a`, `b` are ignored.
    pub fn class_of(&self, u: &FpPoly, v: &FpPoly, a: i64, b: i64) -> JacElem {
        let u = u.monic();
        let v = v.rem(&u);
        match self.kind {
            ModelType::Imaginary => self.reduce_imaginary(u, v),
            ModelType::Real => {
                let (c, f) = self.inf_split();
                self.reduce_real(u, v, a + c, b + f)
            }
        }
    }

    pub fn neg(&self, a: &JacElem) -> JacElem {
        let v = a.v.neg();
        match self.kind {
            ModelType::Imaginary => JacElem { u: a.u.clone(), v, n: 0 },
            ModelType::Real => {
                let (c, f) = self.inf_split();
                let d = a.u.deg() as i64;
                let n = 2 * c - d - a.n;
                let m = 2 * f - d - self.m_of(a);
                self.reduce_real(a.u.clone(), v, n + c, m + f)
            }
        }
    }

    pub fn sub(&self, a: &JacElem, b: &JacElem) -> JacElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &JacElem, k: &Int) -> JacElem {
        let mut base = if k.is_negative() { self.neg(a) } else { a.clone() };
        let mut e = k.abs();
        let mut acc = self.zero();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.add(&acc, &base);
            }
            e /= &two;
            if !e.is_zero() {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    pub fn mul_u(&self, a: &JacElem, k: u64) -> JacElem {
        self.mul(a, &BigInt::from(k))
    }

    /// A random class: a random irreducible place of degree ≤ g (plus a
    /// random infinity split on real models), summed a few times.
    pub fn random<R: Rng>(&self, rng: &mut R) -> JacElem {
        let mut acc = self.zero();
        for _ in 0..self.genus {
            acc = self.add(&acc, &self.random_prime_divisor(rng));
        }
        acc
    }

    fn random_prime_divisor<R: Rng>(&self, rng: &mut R) -> JacElem {
        let p = self.p;
        // degree 0 stands for a divisor supported at infinity; on imaginary
        // models that is the identity, drawn only as a fallback when the
        // affine search keeps failing (curves with no affine points at all)
        let lo = if self.kind == ModelType::Real { 0 } else { 1 };
        for attempt in 0.. {
            let d = if attempt > 64 * p { 0 } else { rng.gen_range(lo..=self.genus) };
            if d == 0 {
                let n = match self.kind {
                    ModelType::Imaginary => 0,
                    ModelType::Real => rng.gen_range(0..=self.genus as i64),
                };
                return JacElem { u: FpPoly::one(p), v: FpPoly::zero(p), n };
            }
            let u = FpPoly::random_monic(d, p, rng);
            if !u.is_irreducible() {
                continue;
            }
            let a = self.h.rem(&u);
            let Some(v) = sqrt_in_field(&a, &u, rng) else { continue };
            let v = if rng.gen_bool(0.5) { v.neg().rem(&u) } else { v };
            let n = match self.kind {
                ModelType::Imaginary => 0,
                ModelType::Real => rng.gen_range(0..=(self.genus - d) as i64),
            };
            let e = JacElem { u, v, n };
            debug_assert!(self.is_valid(&e));
            return e;
        }
        unreachable!()
    }

    /// The class of P − ∞ (P − ∞₊ on real models) for an affine point of the
/// working model.
    pub fn point_class(&self, x: u64, y: u64) -> JacElem {
        let p = self.p;
        let u = FpPoly::new(vec![(p - x % p) % p, 1], p);
        let v = FpPoly::constant(y, p);
        let e = JacElem { u, v, n: 0 };
        match self.kind {
            ModelType::Imaginary => e,
            // P − ∞₊
            ModelType::Real => JacElem { n: self.inf_split().0 - 1, ..e },
        }
    }
}

/// Square root in F_p[x]/(u), u irreducible, by Tonelli–Shanks.
pub fn sqrt_in_field<R: Rng>(a: &FpPoly, u: &FpPoly, rng: &mut R) -> Option<FpPoly> {
    let p = u.p;
    if a.is_zero() {
        return Some(FpPoly::zero(p));
    }
    let d = u.deg() as u32;
    let q: Int = BigInt::from(p).pow(d);
    let one = FpPoly::one(p);
    let qm1: Int = &q - 1u32;
    if a.powmod(&qm1 / 2u32, u) != one {
        return None;
    }
    let mut s = 0u32;
    let mut t = qm1.clone();
    while t.is_even() {
        t /= 2u32;
        s += 1;
    }
    let z = loop {
        let c = FpPoly::random(d as usize - 1, p, rng);
        if !c.is_zero() && c.powmod(&qm1 / 2u32, u) != one {
            break c;
        }
    };
    let mut m = s;
    let mut c = z.powmod(t.clone(), u);
    let mut tt = a.powmod(t.clone(), u);
    let mut r = a.powmod((&t + 1u32) / 2u32, u);
    while tt != one {
        let mut i = 0;
        let mut x = tt.clone();
        while x != one {
            x = x.mulmod(&x, u);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = b.mulmod(&b, u);
        }
        m = i;
        c = b.mulmod(&b, u);
        tt = tt.mulmod(&c, u);
        r = r.mulmod(&b, u);
    }
    Some(r)
}
