use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::fp::{int_mod_u64, FpPoly};
use crate::arith::sqrt::{factor_int_partial, is_prime_u64};
use crate::arith::{Int, Poly, Rat};
use crate::error::{Error, Result};

/// y² = f(x) over ℚ of genus g ∈ {1, 2, 3}, with deg f ∈ {2g+1, 2g+2}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperellipticCurveQ {
    pub genus: usize,
    /// Coefficients f₀, f₁, … as given.
    pub f: Vec<Rat>,
    /// Integral model d²·f with d the lcm of the denominators; the curves
    /// are isomorphic via y ↦ d·y.
    pub f_int: Vec<Int>,
    /// Discriminant of the binary form of degree 2g+2 attached to `f_int`.
    pub disc: Int,
}

impl HyperellipticCurveQ {
    pub fn new(genus: usize, f: Vec<Rat>) -> Result<Self> {
        if !(1..=3).contains(&genus) {
            return Err(Error::InvalidInput(format!("unsupported genus {genus}")));
        }
        let poly = Poly::from_rats(f.clone());
        let deg = poly.deg();
        if deg != 2 * genus as isize + 1 && deg != 2 * genus as isize + 2 {
            return Err(Error::InvalidInput(format!("degree {deg} does not fit genus {genus}")));
        }
        let mut d = Int::one();
        for c in &poly.c {
            d = d.lcm(c.denom());
        }
        let d2 = Rat::from_integer(&d * &d);
        let f_int: Vec<Int> = poly.c.iter().map(|c| (c * &d2).to_integer()).collect();
        let disc = form_discriminant(&f_int, 2 * genus + 2);
        if disc.is_zero() {
            return Err(Error::InvalidInput("f is not squarefree".into()));
        }
        Ok(HyperellipticCurveQ { genus, f: poly.c, f_int, disc })
    }

    pub fn from_ints(genus: usize, f: &[i64]) -> Result<Self> {
        HyperellipticCurveQ::new(genus, f.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn degree(&self) -> usize {
        self.f_int.len() - 1
    }

    pub fn poly(&self) -> Poly<Rat> {
        Poly::from_rats(self.f.clone())
    }

    pub fn poly_int(&self) -> Poly<Rat> {
        Poly::from_int_vec(&self.f_int)
    }

    /// Odd primes not dividing the discriminant.
    pub fn is_good_prime(&self, p: u64) -> bool {
        p > 2 && is_prime_u64(p) && !self.disc.is_multiple_of(&BigInt::from(p))
    }

    pub fn good_primes(&self, bound: u64) -> Vec<u64> {
        (3..=bound).filter(|&p| self.is_good_prime(p)).collect()
    }

    /// Bad primes found by trial division of the discriminant up to `limit`,
    /// always including 2; a remaining composite cofactor is reported last.
    pub fn bad_primes(&self, limit: u64) -> (Vec<Int>, Int) {
        let (fac, rest) = factor_int_partial(&self.disc, limit);
        let mut out: Vec<Int> = fac.into_iter().map(|(p, _)| p).collect();
        if !out.contains(&BigInt::from(2)) {
            out.insert(0, BigInt::from(2));
        }
        (out, rest)
    }

    /// Reduction modulo a good odd prime.
    pub fn reduce(&self, p: u64) -> Result<CurveFp> {
        if !self.is_good_prime(p) {
            return Err(Error::GoodPrimeRequired(p));
        }
        let f = FpPoly::from_ints(&self.f_int, p);
        Ok(CurveFp { genus: self.genus, p, f })
    }

    pub fn lc_int(&self) -> &Int {
        self.f_int.last().unwrap()
    }
}

/// Discriminant of the binary form of degree `n` whose dehomogenisation has
/// the given coefficients (a missing top coefficient is a root at infinity).
pub fn form_discriminant(f: &[Int], n: usize) -> Int {
    let poly = Poly::from_int_vec(f);
    let deg = poly.deg();
    if deg < 1 {
        return Int::zero();
    }
    let d = poly.discriminant();
    let d = match n as isize - deg {
        0 => d,
        1 => d * poly.lc() * poly.lc(),
        _ => Rat::zero(),
    };
    d.to_integer()
}

/// The reduced curve over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFp {
    pub genus: usize,
    pub p: u64,
    pub f: FpPoly,
}

impl CurveFp {
    /// Directly from coefficients mod p; checks that the form is squarefree.
    pub fn new(genus: usize, p: u64, f: FpPoly) -> Result<Self> {
        let c = CurveFp { genus, p, f };
        let fi: Vec<Int> = c.f.c.iter().map(|&x| BigInt::from(x)).collect();
        let d = form_discriminant(&fi, 2 * genus + 2);
        if p == 2 || !is_prime_u64(p) || int_mod_u64(&d, p) == 0 || c.f.deg() < 2 * genus as isize + 1 {
            return Err(Error::GoodPrimeRequired(p));
        }
        Ok(c)
    }

    /// Number of F_p-points on the smooth model.
    pub fn points_at_infinity(&self) -> u64 {
        if self.f.deg() as usize == 2 * self.genus + 1 {
            1
        } else if crate::arith::fp::is_square_mod(self.f.lc(), self.p) {
            2
        } else {
            0
        }
    }
}
