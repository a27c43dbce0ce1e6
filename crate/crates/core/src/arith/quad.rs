//! Quadratic number fields ℚ(√d).

use num_traits::{One, Zero};

use super::ring::RingElem;
use super::{Int, Rat};

/// `a + b√d` with `d` squarefree, `d ∉ {0, 1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadElem {
    pub a: Rat,
    pub b: Rat,
    pub d: Int,
}

impl QuadElem {
    pub fn new(a: Rat, b: Rat, d: &Int) -> Self {
        QuadElem { a, b, d: d.clone() }
    }

    pub fn from_rat(a: Rat, d: &Int) -> Self {
        QuadElem { a, b: Rat::zero(), d: d.clone() }
    }

    /// √d itself.
    pub fn sqrt_d(d: &Int) -> Self {
        QuadElem { a: Rat::zero(), b: Rat::one(), d: d.clone() }
    }

    pub fn conj(&self) -> Self {
        QuadElem { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(self.d.clone())
    }

    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.b)
    }
}

impl RingElem for QuadElem {
    fn zero_like(&self) -> Self {
        QuadElem::from_rat(Rat::zero(), &self.d)
    }
    fn one_like(&self) -> Self {
        QuadElem::from_rat(Rat::one(), &self.d)
    }
    fn from_int_like(&self, n: &Int) -> Self {
        QuadElem::from_rat(Rat::from_integer(n.clone()), &self.d)
    }
    fn plus(&self, o: &Self) -> Self {
        QuadElem { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() }
    }
    fn minus(&self, o: &Self) -> Self {
        QuadElem { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d.clone() }
    }
    fn times(&self, o: &Self) -> Self {
        let d = Rat::from_integer(self.d.clone());
        QuadElem {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }
    fn negate(&self) -> Self {
        QuadElem { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let c = self.conj();
        Some(QuadElem { a: c.a / &n, b: c.b / &n, d: self.d.clone() })
    }
    fn from_rat_like(&self, r: &Rat) -> Option<Self> {
        Some(QuadElem::from_rat(r.clone(), &self.d))
    }
}
