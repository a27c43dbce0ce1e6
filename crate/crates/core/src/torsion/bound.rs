//! Upper bounds for J(ℚ)_tors from reductions at good primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::sqrt::{factor_int_partial, valuation};
use crate::arith::Int;
use crate::error::{Error, Result};
use crate::jacobian::group::{combine_invariants, sylow_subgroup};
use crate::jacobian::{jacobian_order, HyperellipticCurveQ, JacobianFp};

/// What one good prime contributes.
#[derive(Clone, Debug)]
pub struct PrimeData {
    pub p: u64,
    pub order: Int,
    /// Invariant factors of the part of J(F_p) supported on the primes of
    /// the order bound, when J(F_p) could be modelled.
    pub structure: Option<Vec<Int>>,
}

#[derive(Clone, Debug)]
pub struct ReductionBound {
    /// gcd of #J(F_p).
    pub order: Int,
    /// Meet of the group structures; `None` if no prime gave a structure.
    pub structure: Option<Vec<Int>>,
    pub primes: Vec<PrimeData>,
}

/// Deterministic per-prime RNG stream.
pub fn prime_rng(seed: u64, p: u64, salt: u64) -> ChaCha8Rng {
    let mut s = seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt.wrapping_mul(0xD1B5_4A32_D192_ED03);
    s = s.rotate_left(17);
    ChaCha8Rng::seed_from_u64(s)
}

/// Largest divisor of n supported on the primes dividing t.
pub fn restrict_to(n: &Int, t: &Int) -> Int {
    let mut out = Int::one();
    let mut rest = n.clone();
    loop {
        let g = rest.gcd(t);
        if g.is_one() {
            break;
        }
        out *= &g;
        rest /= &g;
    }
    out
}

/// Componentwise gcd of two invariant-factor lists aligned at the largest
/// factor, padding the shorter list with 1s.
pub fn structure_meet(a: &[Int], b: &[Int]) -> Vec<Int> {
    let len = a.len().max(b.len());
    let pad = |v: &[Int]| {
        let mut out = vec![Int::one(); len - v.len()];
        out.extend(v.iter().cloned());
        out
    };
    let (a, b) = (pad(a), pad(b));
    let out: Vec<Int> = a.iter().zip(&b).map(|(x, y)| x.gcd(y)).collect();
    out.into_iter().filter(|d| !d.is_one()).collect()
}

/// The t-part of J(F_p) as invariant factors.
pub fn restricted_structure(jac: &JacobianFp, order: &Int, t: &Int, seed: u64) -> Result<Vec<Int>> {
    let (fac, rest) = factor_int_partial(t, 1 << 24);
    if !rest.is_one() {
        return Err(Error::Internal("order bound not fully factored".into()));
    }
    let mut parts = Vec::new();
    for (q, _) in fac {
        let ell = q.to_u64().unwrap();
        let mut rng = prime_rng(seed, jac.p, ell);
        parts.push(sylow_subgroup(jac, order, ell, &mut rng)?.invariants());
    }
    Ok(combine_invariants(&parts).into_iter().filter(|d| !d.is_one()).collect())
}

/// gcd of #J(F_p) and the meet of the group structures over the good odd
/// primes up to `prime_bound`.
pub fn reduction_upper_bound(curve: &HyperellipticCurveQ, prime_bound: u64, seed: u64) -> Result<ReductionBound> {
    let primes = curve.good_primes(prime_bound);
    if primes.is_empty() {
        return Err(Error::PrimePoolExhausted(format!("no good odd primes up to {prime_bound}")));
    }
    let orders: Vec<(u64, Int)> = primes
        .par_iter()
        .map(|&p| Ok((p, jacobian_order(&curve.reduce(p)?))))
        .collect::<Result<_>>()?;
    let t = orders.iter().fold(Int::zero(), |acc, (_, n)| acc.gcd(n));
    let data: Vec<PrimeData> = orders
        .into_par_iter()
        .map(|(p, order)| {
            let structure = if t.is_one() {
                Some(vec![])
            } else {
                match JacobianFp::new(&curve.reduce(p)?) {
                    Ok(jac) => Some(restricted_structure(&jac, &order, &t, seed)?),
                    Err(Error::NoRationalPoint(_)) => None,
                    Err(e) => return Err(e),
                }
            };
            Ok(PrimeData { p, order, structure })
        })
        .collect::<Result<_>>()?;
    let mut structure: Option<Vec<Int>> = None;
    for d in &data {
        if let Some(s) = &d.structure {
            structure = Some(match structure {
                None => s.clone(),
                Some(acc) => structure_meet(&acc, s),
            });
        }
    }
    Ok(ReductionBound { order: t, structure, primes: data })
}

impl ReductionBound {
    /// Primes dividing the order bound.
    pub fn prime_divisors(&self) -> Vec<u64> {
        let (fac, _) = factor_int_partial(&self.order, 1 << 24);
        fac.into_iter().filter_map(|(q, _)| q.to_u64()).collect()
    }

    /// The q-power invariant factors of the structure bound.
    pub fn q_structure(&self, q: u64) -> Option<Vec<Int>> {
        let s = self.structure.as_ref()?;
        Some(
            s.iter()
                .map(|d| BigInt::from(q).pow(valuation(d, q)))
                .filter(|d| !d.is_one())
                .collect(),
        )
    }
}
