use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Int, Rat};

/// Elements of a commutative ring whose context (modulus, field, ...) is
/// carried by the element itself, so generic code can build constants from
/// any sample element.
pub trait RingElem: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: &Int) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    /// Multiplicative inverse, if the element is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.try_inv().is_some()
    }

    fn from_i64_like(&self, n: i64) -> Self {
        self.from_int_like(&BigInt::from(n))
    }

    /// Image of a rational number; `None` when the denominator is not a unit.
    fn from_rat_like(&self, r: &Rat) -> Option<Self> {
        let num = self.from_int_like(r.numer());
        let den = self.from_int_like(r.denom()).try_inv()?;
        Some(num.times(&den))
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    fn square(&self) -> Self {
        self.times(self)
    }
}

impl RingElem for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_int_like(&self, n: &Int) -> Self {
        Rat::from_integer(n.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat_like(&self, r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
}

/// Exact rational helpers shared across modules.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn abs_int(n: &Int) -> Int {
    n.abs()
}
