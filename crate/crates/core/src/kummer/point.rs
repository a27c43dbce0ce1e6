use num_integer::Integer;
use num_traits::One;

use crate::arith::{Int, Rat, RingElem};
use crate::lattice::primitive_vector;

/// A projective point on a Kummer variety in ℙ^(2^g − 1) over a ring R.
#[derive(Clone, Debug, PartialEq)]
pub struct KummerPoint<R: RingElem> {
    pub coords: Vec<R>,
}

impl<R: RingElem> KummerPoint<R> {
    pub fn new(coords: Vec<R>) -> Self {
        KummerPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Index of the lowest unit coordinate.
    pub fn unit_index(&self) -> Option<usize> {
        self.coords.iter().position(|c| c.is_unit())
    }

    /// Scale so that the lowest unit coordinate becomes 1.
    pub fn normalized(&self) -> Option<Self> {
        let k = self.unit_index()?;
        let inv = self.coords[k].try_inv()?;
        Some(KummerPoint { coords: self.coords.iter().map(|c| c.times(&inv)).collect() })
    }

    /// Projective equality: all 2×2 minors of the coordinate matrix vanish.
    pub fn proj_eq(&self, o: &Self) -> bool {
        let n = self.coords.len();
        if n != o.coords.len() {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let m = self.coords[i].times(&o.coords[j]).minus(&self.coords[j].times(&o.coords[i]));
                if !m.is_zero_elem() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero_vector(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero_elem())
    }
}

impl KummerPoint<Rat> {
    pub fn from_ints(v: &[Int]) -> Self {
        KummerPoint { coords: v.iter().map(|x| Rat::from_integer(x.clone())).collect() }
    }

    /// Primitive integer representative with first nonzero entry positive.
    pub fn primitive(&self) -> Vec<Int> {
        let mut l = Int::one();
        for c in &self.coords {
            l = l.lcm(c.denom());
        }
        let v: Vec<Int> = self.coords.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        primitive_vector(&v)
    }

    /// Reduction of the primitive representative into another ring.
    pub fn reduce<S: RingElem>(&self, sample: &S) -> KummerPoint<S> {
        KummerPoint { coords: self.primitive().iter().map(|c| sample.from_int_like(c)).collect() }
    }
}
