use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ring::RingElem;
use super::Int;

/// Element of ℤ/mℤ with canonical representative in `[0, m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Zmod {
    pub v: Int,
    pub m: Arc<Int>,
}

impl Zmod {
    pub fn new(v: &Int, m: &Arc<Int>) -> Self {
        assert!(**m > BigInt::one(), "modulus must exceed 1");
        Zmod { v: v.mod_floor(m), m: m.clone() }
    }

    pub fn modulus(&self) -> &Int {
        &self.m
    }

    /// Reduce to a smaller modulus dividing the current one.
    pub fn reduce_to(&self, m: &Arc<Int>) -> Self {
        debug_assert!(self.m.is_multiple_of(m));
        Zmod::new(&self.v, m)
    }

    /// Symmetric lift in `(-m/2, m/2]`.
    pub fn centered(&self) -> Int {
        let half: Int = &*self.m / 2u32;
        if self.v > half {
            &self.v - &*self.m
        } else {
            self.v.clone()
        }
    }
}

impl RingElem for Zmod {
    fn zero_like(&self) -> Self {
        Zmod { v: Int::zero(), m: self.m.clone() }
    }
    fn one_like(&self) -> Self {
        Zmod { v: Int::one(), m: self.m.clone() }
    }
    fn from_int_like(&self, n: &Int) -> Self {
        Zmod { v: n.mod_floor(&self.m), m: self.m.clone() }
    }
    fn plus(&self, o: &Self) -> Self {
        let mut v = &self.v + &o.v;
        if v >= *self.m {
            v -= &*self.m;
        }
        Zmod { v, m: self.m.clone() }
    }
    fn minus(&self, o: &Self) -> Self {
        let mut v = &self.v - &o.v;
        if v < Int::zero() {
            v += &*self.m;
        }
        Zmod { v, m: self.m.clone() }
    }
    fn times(&self, o: &Self) -> Self {
        Zmod { v: (&self.v * &o.v) % &*self.m, m: self.m.clone() }
    }
    fn negate(&self) -> Self {
        if self.v.is_zero() {
            self.clone()
        } else {
            Zmod { v: &*self.m - &self.v, m: self.m.clone() }
        }
    }
    fn is_zero_elem(&self) -> bool {
        self.v.is_zero()
    }
    fn try_inv(&self) -> Option<Self> {
        let e = self.v.extended_gcd(&self.m);
        if !e.gcd.is_one() {
            return None;
        }
        Some(Zmod { v: e.x.mod_floor(&self.m), m: self.m.clone() })
    }
}
