//! J(ℚ)[2] from the factorisation of f over ℚ and over quadratic fields.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factor::{factor_over_q, factor_over_quad};
use crate::arith::sqrt::{factor_int_partial, is_prime_u64};
use crate::arith::fp::{inv_mod, mul_mod, pow_mod, sqrt_mod};
use crate::arith::{Fp, FpPoly, Int, Poly, QuadElem, Rat, RingElem};
use crate::jacobian::{HyperellipticCurveQ, JacElem, JacobianFp, ModelType};

/// A quadratic field ℚ(√d) over which f = lc·h·h^σ with h, h^σ coprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticPair {
    pub d: String,
    /// t_k: half the number of admissible h.
    pub count: u64,
    /// One admissible h, constant term first, coefficients written like
    /// "1-2*sqrt(-1)".
    pub h: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoTorsionReport {
    pub order: u64,
    pub rank: u32,
    /// Degrees of the monic irreducible factors of f over ℚ.
    pub factor_degrees: Vec<usize>,
    pub quadratic_pairs: Vec<QuadraticPair>,
    /// False when the discriminant could not be fully factored, so some
    /// quadratic fields may not have been tried.
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct TwoTorsion {
    pub report: TwoTorsionReport,
    /// Monic irreducible factors of f over ℚ.
    pub rational_factors: Vec<Poly<Rat>>,
    /// One h for each quadratic field in the report, in the same order.
    pub quadratic_factors: Vec<Poly<QuadElem>>,
}

fn format_quad(a: &Rat, b: &Rat, d: &Int) -> String {
    if b.is_zero() {
        return a.to_string();
    }
    let sign = if b.is_negative() { "-" } else { "+" };
    let mag = b.abs();
    let tail = if mag.is_one() { format!("sqrt({d})") } else { format!("{mag}*sqrt({d})") };
    if a.is_zero() {
        return if b.is_negative() { format!("-{tail}") } else { tail };
    }
    format!("{a}{sign}{tail}")
}

fn log2_exact(n: u64) -> u32 {
    debug_assert!(n.is_power_of_two());
    n.trailing_zeros()
}

/// Squarefree d ≠ 1 built from the given primes and −1.
fn quadratic_candidates(primes: &[Int]) -> Vec<Int> {
    let mut out = vec![BigInt::one()];
    for p in primes {
        let more: Vec<Int> = out.iter().map(|d| d * p).collect();
        out.extend(more);
    }
    let neg: Vec<Int> = out.iter().map(|d| -d).collect();
    out.extend(neg);
    out.retain(|d| !d.is_one());
    out.sort_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)));
    out
}

/// #J(ℚ)[2] with the factorisation evidence behind it.
pub fn two_torsion(curve: &HyperellipticCurveQ) -> TwoTorsion {
    let f = curve.poly_int();
    let facs: Vec<Poly<Rat>> = factor_over_q(&f).into_iter().map(|(h, _)| h.monic()).collect();
    let degrees: Vec<usize> = facs.iter().map(|h| h.deg() as usize).collect();
    let deg = f.deg() as usize;
    if deg % 2 == 1 {
        let r = facs.len() as u32;
        return TwoTorsion {
            report: TwoTorsionReport {
                order: 1 << (r - 1),
                rank: r - 1,
                factor_degrees: degrees,
                quadratic_pairs: vec![],
                complete: true,
            },
            rational_factors: facs,
            quadratic_factors: vec![],
        };
    }
    // t_ℚ: half the number of even-degree monic divisors
    let k = facs.len();
    let mut even = 0u64;
    for mask in 0u64..(1 << k) {
        let d: usize = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| degrees[i]).sum();
        if d % 2 == 0 {
            even += 1;
        }
    }
    let t_q = even / 2;
    let mut pairs = Vec::new();
    let mut hs = Vec::new();
    let mut complete = true;
    if (deg / 2) % 2 == 0 {
        let (fac, rest) = factor_int_partial(&(&curve.disc * BigInt::from(2)), 1 << 20);
        let mut primes: Vec<Int> = fac.into_iter().map(|(p, _)| p).collect();
        if !rest.is_one() {
            complete = rest.to_u64().is_some_and(is_prime_u64);
            primes.push(rest);
        }
        for d in quadratic_candidates(&primes) {
            if let Some((pair, h)) = conjugate_pairs(&f, &facs, &d) {
                pairs.push(pair);
                hs.push(h);
            }
        }
    }
    let order = t_q + pairs.iter().map(|p| p.count).sum::<u64>();
    TwoTorsion {
        report: TwoTorsionReport {
            order,
            rank: log2_exact(order),
            factor_degrees: degrees,
            quadratic_pairs: pairs,
            complete,
        },
        rational_factors: facs,
        quadratic_factors: hs,
    }
}

/// t_k for k = ℚ(√d): every rational factor must split into a conjugate
/// pair over k; then h picks one member of each pair.
fn conjugate_pairs(f: &Poly<Rat>, facs: &[Poly<Rat>], d: &Int) -> Option<(QuadraticPair, Poly<QuadElem>)> {
    let mut h = None;
    let mut npairs = 0u32;
    for g in facs {
        if g.deg() < 2 {
            return None;
        }
        let over = factor_over_quad(g, d);
        if over.len() != 2 || over.iter().any(|(_, e)| *e != 1) {
            return None;
        }
        let a = over[0].0.monic();
        let b = over[1].0.monic();
        let conj = Poly::new(a.c.iter().map(|c| c.conj()).collect(), &a.c[0]);
        if conj != b {
            return None;
        }
        h = Some(match h {
            None => a,
            Some(acc) => a.mul(&acc),
        });
        npairs += 1;
    }
    let h = h?;
    if (h.deg() as usize) * 2 != f.deg() as usize {
        return None;
    }
    let pair = QuadraticPair {
        d: d.to_string(),
        count: 1 << (npairs - 1),
        h: h.c.iter().map(|c| format_quad(&c.a, &c.b, d)).collect(),
    };
    Some((pair, h))
}

impl TwoTorsion {
    pub fn order(&self) -> u64 {
        self.report.order
    }

    pub fn rank(&self) -> u32 {
        self.report.rank
    }

    /// The reduction of J(ℚ)[2] in J(F_p), on a working model without a
    /// change of x-coordinate. `None` when some generator cannot be written
    /// down over F_p (a quadratic field in which p is inert, or a moved
    /// x-coordinate).
    pub fn reduce_mod(&self, jac: &JacobianFp) -> Option<Vec<JacElem>> {
        if jac.change.x0.is_some() {
            return None;
        }
        let p = jac.p;
        let sample = Fp::new(0, p);
        let to_fp = |h: &Poly<Rat>| -> Option<FpPoly> {
            let c = h.c.iter().map(|a| sample.from_rat_like(a).map(|x| x.v)).collect::<Option<Vec<u64>>>()?;
            Some(FpPoly::new(c, p))
        };
        let mut supports: Vec<FpPoly> = Vec::new();
        let facs: Vec<FpPoly> = self.rational_factors.iter().map(to_fp).collect::<Option<_>>()?;
        if jac.curve.f.deg() % 2 == 1 {
            supports.extend(facs.iter().cloned());
        } else {
            let (odd, even): (Vec<&FpPoly>, Vec<&FpPoly>) = facs.iter().partition(|h| h.deg() % 2 == 1);
            supports.extend(even.into_iter().cloned());
            if let Some((first, rest)) = odd.split_first() {
                supports.extend(rest.iter().map(|h| first.mul(h)));
            }
            for h in &self.quadratic_factors {
                let d = int_to_fp(&h.c[0].d, p);
                let r = sqrt_mod(d, p)?;
                let c = h
                    .c
                    .iter()
                    .map(|q| {
                        let a = sample.from_rat_like(&q.a)?;
                        let b = sample.from_rat_like(&q.b)?;
                        Some(a.plus(&b.times(&Fp::new(r, p))).v)
                    })
                    .collect::<Option<Vec<u64>>>()?;
                supports.push(FpPoly::new(c, p));
            }
        }
        let c_inf = (jac.genus as i64 + 1) / 2;
        let gens: Vec<JacElem> = supports
            .iter()
            .map(|u| {
                let k = u.deg() as i64;
                let u = match jac.kind {
                    // X = c·x: u(X/c)·c^k
                    ModelType::Imaginary => {
                        let cinv = inv_mod(jac.change.c, p).unwrap();
                        let coeffs = (0..=k as usize)
                            .map(|i| mul_mod(u.coeff(i), pow_mod(cinv, i as u64, p), p))
                            .collect();
                        FpPoly::new(coeffs, p).monic()
                    }
                    ModelType::Real => u.monic(),
                };
                // div(u) − (k/2)(∞₊ + ∞₋) on real models
                let g = jac.genus as i64;
                let a = c_inf - k / 2;
                let b = g - k - a;
                jac.class_of(&u, &FpPoly::zero(p), a, b)
            })
            .collect();
        let mut span = vec![jac.zero()];
        for g in &gens {
            if span.contains(g) {
                continue;
            }
            let more: Vec<JacElem> = span.iter().map(|x| jac.add(x, g)).collect();
            span.extend(more);
        }
        (span.len() as u64 == self.order()).then_some(span)
    }
}

fn int_to_fp(n: &Int, p: u64) -> u64 {
    crate::arith::fp::int_mod_u64(n, p)
}
