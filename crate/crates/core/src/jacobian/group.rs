//! Abelian group structure of J(F_p) from random elements.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::snf::{smith_normal_form, IntMatrix};
use crate::arith::sqrt::factor_int_partial;
use crate::arith::Int;
use crate::error::{Error, Result};

use super::divisor::{JacElem, JacobianFp};

/// Largest ℓ-subgroup we are prepared to enumerate.
const ENUM_LIMIT: u64 = 1 << 22;

/// An ℓ-Sylow subgroup given by independent generators of orders ℓ^{eᵢ}.
#[derive(Clone, Debug)]
pub struct SylowBasis {
    pub ell: u64,
    pub gens: Vec<JacElem>,
    /// Exponents eᵢ, nondecreasing.
    pub exps: Vec<u32>,
}

impl SylowBasis {
    /// Invariants ℓ^{eᵢ} in divisibility order.
    pub fn invariants(&self) -> Vec<Int> {
        self.exps.iter().map(|&e| BigInt::from(self.ell).pow(e)).collect()
    }

    pub fn order(&self) -> Int {
        BigInt::from(self.ell).pow(self.exps.iter().sum())
    }
}

/// All elements of the subgroup generated by a basis, keyed to coordinates.
fn enumerate(jac: &JacobianFp, gens: &[JacElem], orders: &[u64]) -> HashMap<JacElem, Vec<u64>> {
    let mut table = HashMap::new();
    table.insert(jac.zero(), vec![0; gens.len()]);
    for (i, (g, &o)) in gens.iter().zip(orders).enumerate() {
        let current: Vec<(JacElem, Vec<u64>)> = table.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for (e, c) in current {
            let mut x = e;
            for k in 1..o {
                x = jac.add(&x, g);
                let mut cc = c.clone();
                cc[i] = k;
                table.insert(x.clone(), cc);
            }
        }
    }
    table
}

/// ℓ-Sylow subgroup of J(F_p), given the group order.
pub fn sylow_subgroup<R: Rng>(jac: &JacobianFp, order: &Int, ell: u64, rng: &mut R) -> Result<SylowBasis> {
    let l = BigInt::from(ell);
    let mut e_total = 0u32;
    let mut cof = order.clone();
    while cof.is_multiple_of(&l) {
        cof /= &l;
        e_total += 1;
    }
    let mut basis = SylowBasis { ell, gens: Vec::new(), exps: Vec::new() };
    if e_total == 0 {
        return Ok(basis);
    }
    if ell.checked_pow(e_total).is_none_or(|s| s > ENUM_LIMIT) {
        return Err(Error::Internal(format!("{ell}-Sylow subgroup too large to enumerate")));
    }
    let mut attempts = 0;
    while basis.exps.iter().sum::<u32>() < e_total {
        attempts += 1;
        if attempts > 2000 {
            return Err(Error::Internal("group structure did not stabilise".into()));
        }
        let h = jac.mul(&jac.random(rng), &cof);
        let orders: Vec<u64> = basis.exps.iter().map(|&e| ell.pow(e)).collect();
        let table = enumerate(jac, &basis.gens, &orders);
        // smallest j with ℓ^j·h ∈ H
        let mut j = 0u32;
        let mut x = h.clone();
        let coords = loop {
            if let Some(c) = table.get(&x) {
                break c.clone();
            }
            x = jac.mul_u(&x, ell);
            j += 1;
            if j > e_total {
                return Err(Error::Internal("element order exceeds Sylow order".into()));
            }
        };
        if j == 0 {
            continue;
        }
        // relations among (g₁, …, g_r, h)
        let r = basis.gens.len();
        let mut rows = Vec::with_capacity(r + 1);
        for (i, &o) in orders.iter().enumerate() {
            let mut row = vec![Int::zero(); r + 1];
            row[i] = BigInt::from(o);
            rows.push(row);
        }
        let mut last: Vec<Int> = coords.iter().map(|&c| -BigInt::from(c)).collect();
        last.push(BigInt::from(ell).pow(j));
        rows.push(last);
        let snf = smith_normal_form(&IntMatrix::from_rows(rows));
        let d = snf.invariants();
        let mut all_gens = basis.gens.clone();
        all_gens.push(h);
        let mut new_gens = Vec::new();
        let mut new_exps = Vec::new();
        for (k, dk) in d.iter().enumerate() {
            if dk.is_one() {
                continue;
            }
            let mut g = jac.zero();
            for (i, gi) in all_gens.iter().enumerate() {
                let c = &snf.v_inv.a[k][i];
                if !c.is_zero() {
                    g = jac.add(&g, &jac.mul(gi, c));
                }
            }
            let mut e = 0u32;
            let mut t = dk.clone();
            while t.is_multiple_of(&l) {
                t /= &l;
                e += 1;
            }
            new_gens.push(g);
            new_exps.push(e);
        }
        let mut idx: Vec<usize> = (0..new_exps.len()).collect();
        idx.sort_by_key(|&i| new_exps[i]);
        basis.gens = idx.iter().map(|&i| new_gens[i].clone()).collect();
        basis.exps = idx.iter().map(|&i| new_exps[i]).collect();
    }
    Ok(basis)
}

/// Invariant factors d₁ | d₂ | … of J(F_p), omitting 1s.
pub fn group_structure<R: Rng>(jac: &JacobianFp, order: &Int, rng: &mut R) -> Result<Vec<Int>> {
    let (fac, rest) = factor_int_partial(order, 1 << 20);
    if !rest.is_one() {
        return Err(Error::Internal("group order not fully factored".into()));
    }
    let mut sylows = Vec::new();
    for (q, _) in fac {
        let ell = q.to_u64().ok_or_else(|| Error::Internal("prime too large".into()))?;
        sylows.push(sylow_subgroup(jac, order, ell, rng)?.invariants());
    }
    Ok(combine_invariants(&sylows))
}

/// Combines per-prime invariants (each nondecreasing) into d₁ | d₂ | ….
pub fn combine_invariants(parts: &[Vec<Int>]) -> Vec<Int> {
    let len = parts.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![Int::one(); len];
    for v in parts {
        let off = len - v.len();
        for (i, x) in v.iter().enumerate() {
            out[off + i] *= x;
        }
    }
    out
}
