//! Dense univariate polynomials and binary forms over a [`RingElem`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::RingElem;
use super::{Int, Rat};

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<R: RingElem> {
    /// Coefficients from degree 0 upward; no trailing zeros.
    pub c: Vec<R>,
    zero: R,
}

impl<R: RingElem> Poly<R> {
    pub fn new(c: Vec<R>, zero: &R) -> Self {
        let mut p = Poly { c, zero: zero.zero_like() };
        p.trim();
        p
    }

    pub fn zero(sample: &R) -> Self {
        Poly { c: vec![], zero: sample.zero_like() }
    }

    pub fn one(sample: &R) -> Self {
        Poly { c: vec![sample.one_like()], zero: sample.zero_like() }
    }

    pub fn constant(a: R) -> Self {
        let z = a.zero_like();
        Poly::new(vec![a], &z)
    }

    pub fn x(sample: &R) -> Self {
        Poly { c: vec![sample.zero_like(), sample.one_like()], zero: sample.zero_like() }
    }

    pub fn sample(&self) -> &R {
        &self.zero
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero_elem()) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn lc(&self) -> R {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn map<S: RingElem>(&self, sample: &S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect(), sample)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).plus(&o.coeff(i))).collect(), &self.zero)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i).minus(&o.coeff(i))).collect(), &self.zero)
    }

    pub fn neg(&self) -> Self {
        Poly::new(self.c.iter().map(|a| a.negate()).collect(), &self.zero)
    }

    pub fn scale(&self, a: &R) -> Self {
        Poly::new(self.c.iter().map(|x| x.times(a)).collect(), &self.zero)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut c = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        Poly::new(c, &self.zero)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(&self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&self.zero);
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(a.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.times(&a.from_i64_like(i as i64)))
            .collect();
        Poly::new(c, &self.zero)
    }

    /// Division with remainder; the divisor's leading coefficient must be a unit.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        if d.is_zero() {
            return None;
        }
        let inv = d.lc().try_inv()?;
        if self.deg() < d.deg() {
            return Some((Poly::zero(&self.zero), self.clone()));
        }
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = r[i + dd].times(&inv);
            if !coef.is_zero_elem() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] = r[i + j].minus(&coef.times(b));
                }
            }
            q[i] = coef;
        }
        r.truncate(dd);
        Some((Poly::new(q, &self.zero), Poly::new(r, &self.zero)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).expect("non-unit leading coefficient").1
    }

    pub fn monic(&self) -> Self {
        match self.lc().try_inv() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Poly<Rat> {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&a| Rat::from_integer(BigInt::from(a))).collect(), &Rat::zero())
    }

    pub fn from_rats(c: Vec<Rat>) -> Self {
        Poly::new(c, &Rat::zero())
    }

    /// Integer polynomial with coprime coefficients and positive leading
    /// coefficient, proportional to `self`.
    pub fn primitive_int(&self) -> Vec<Int> {
        if self.is_zero() {
            return vec![];
        }
        let mut l = Int::one();
        for a in &self.c {
            l = l.lcm(a.denom());
        }
        let mut v: Vec<Int> = self.c.iter().map(|a| (a * Rat::from_integer(l.clone())).to_integer()).collect();
        let mut g = Int::zero();
        for a in &v {
            g = g.gcd(a);
        }
        if v.last().unwrap().is_negative() {
            g = -g;
        }
        for a in v.iter_mut() {
            *a = &*a / &g;
        }
        v
    }

    pub fn from_int_vec(v: &[Int]) -> Self {
        Poly::new(v.iter().map(|a| Rat::from_integer(a.clone())).collect(), &Rat::zero())
    }

    /// Discriminant of the polynomial of its actual degree.
    pub fn discriminant(&self) -> Rat {
        let n = self.deg();
        if n < 1 {
            return Rat::zero();
        }
        let res = resultant(self, &self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 0 { Rat::one() } else { -Rat::one() };
        sign * res / self.lc()
    }
}

/// Resultant over ℚ via the Sylvester matrix and fraction-free elimination.
pub fn resultant(a: &Poly<Rat>, b: &Poly<Rat>) -> Rat {
    let (m, n) = (a.deg(), b.deg());
    if m < 0 || n < 0 {
        return Rat::zero();
    }
    let (m, n) = (m as usize, n as usize);
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut mat = vec![vec![Rat::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = a.c[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = b.c[n - j].clone();
        }
    }
    det_rat(mat)
}

pub fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for col in 0..n {
        let piv = match (col..n).find(|&r| !Zero::is_zero(&m[r][col])) {
            Some(r) => r,
            None => return Rat::zero(),
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if Zero::is_zero(&m[r][col]) {
                continue;
            }
            let fac = &m[r][col] / &pv;
            for c in col..n {
                let t = &fac * &m[col][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Homogeneous binary form of a declared degree; coefficient `i` belongs to
/// `x^i z^(d-i)`.
#[derive(Clone, PartialEq, Debug)]
pub struct BiForm<R: RingElem> {
    pub c: Vec<R>,
}

impl<R: RingElem> BiForm<R> {
    pub fn from_poly(p: &Poly<R>, degree: usize) -> Self {
        assert!(p.deg() <= degree as isize, "form degree too small");
        BiForm { c: (0..=degree).map(|i| p.coeff(i)).collect() }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn eval(&self, x: &R, z: &R) -> R {
        let d = self.degree();
        let mut acc = x.zero_like();
        let mut zp = vec![x.one_like(); d + 1];
        for i in 1..=d {
            zp[i] = zp[i - 1].times(z);
        }
        let mut xp = x.one_like();
        for i in 0..=d {
            acc = acc.plus(&self.c[i].times(&xp).times(&zp[d - i]));
            xp = xp.times(x);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_of_cubic() {
        // x^3 + a x + b has discriminant -4a^3 - 27b^2
        let f = Poly::from_ints(&[1, 0, 0, 1]);
        assert_eq!(f.discriminant(), Rat::from_integer((-27).into()));
        let f = Poly::from_ints(&[0, -1, 0, 1]);
        assert_eq!(f.discriminant(), Rat::from_integer(4.into()));
    }

    #[test]
    fn binary_form_dehomogenises() {
        let f = Poly::from_ints(&[1, 2, 7, 8, 9, 4, 3, 2]);
        let form = BiForm::from_poly(&f, 8);
        let x = Rat::from_integer(3.into());
        assert_eq!(form.eval(&x, &Rat::one()), f.eval(&x));
        assert_eq!(form.eval(&Rat::one(), &Rat::zero()), Rat::zero());
    }
}
