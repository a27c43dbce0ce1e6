//! Point counting by enumeration and the L-polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::ffield::FqField;
use crate::arith::fp::{legendre, mul_mod};
use crate::arith::Int;

use super::curve::CurveFp;

/// Σ_{x ∈ F_q} χ(f(x)) over F_q = F_{p^k}.
fn char_sum(c: &CurveFp, k: usize) -> i64 {
    let p = c.p;
    let coeffs = &c.f.c;
    if k == 1 {
        let mut chi = vec![-1i64; p as usize];
        chi[0] = 0;
        for a in 1..p {
            chi[mul_mod(a, a, p) as usize] = 1;
        }
        return (0..p)
            .map(|x| {
                let mut acc = 0u64;
                for &a in coeffs.iter().rev() {
                    acc = (acc * x + a) % p;
                }
                chi[acc as usize]
            })
            .sum();
    }
    let field = FqField::new(p, k);
    let q = field.size();
    let mut sum = 0i64;
    let mut x = vec![0u64; k];
    let mut acc = vec![0u64; k];
    let mut tmp = vec![0u64; k];
    for idx in 0..q {
        let mut t = idx;
        for xi in x.iter_mut() {
            *xi = t % p;
            t /= p;
        }
        acc.iter_mut().for_each(|a| *a = 0);
        for &a in coeffs.iter().rev() {
            field.mul_raw(&acc, &x, &mut tmp);
            tmp[0] = (tmp[0] + a) % p;
            std::mem::swap(&mut acc, &mut tmp);
        }
        sum += field.chi_raw(&acc) as i64;
    }
    sum
}

/// #X(F_{p^k}) on the smooth projective model.
pub fn count_points(c: &CurveFp, k: usize) -> Int {
    let q = BigInt::from(c.p).pow(k as u32);
    let inf: i64 = if c.f.deg() as usize == 2 * c.genus + 1 {
        1
    } else if k % 2 == 0 || legendre(c.f.lc(), c.p) == 1 {
        2
    } else {
        0
    };
    q + BigInt::from(char_sum(c, k) + inf)
}

/// Coefficients a₀..a_{2g} of L(T) = Π(1 − αᵢT).
pub fn l_polynomial(c: &CurveFp) -> Vec<Int> {
    let g = c.genus;
    let p = BigInt::from(c.p);
    // power sums s_k = Σ αᵢ^k = q^k + 1 − N_k
    let s: Vec<Int> = (1..=g).map(|k| p.pow(k as u32) + 1u32 - count_points(c, k)).collect();
    // Newton: k e_k = Σ_{i=1}^k (−1)^{i−1} e_{k−i} s_i
    let mut e = vec![Int::one()];
    for k in 1..=g {
        let mut acc = Int::zero();
        for i in 1..=k {
            let t = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        e.push(acc / BigInt::from(k));
    }
    let mut a: Vec<Int> = e.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).collect();
    for i in (0..g).rev() {
        a.push(p.pow((g - i) as u32) * &a[i]);
    }
    a
}

/// #J(F_p) = L(1).
pub fn jacobian_order(c: &CurveFp) -> Int {
    l_polynomial(c).into_iter().sum()
}
