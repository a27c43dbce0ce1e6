//! Explicit genus-3 formulas: κ on degree-2 divisors and the lift check.

use num_traits::Zero;

use crate::arith::sqrt::is_square_rat;
use crate::arith::{Poly, Rat, RingElem};
use crate::error::{Error, Result};

use super::model::{KummerModel, ModelKind};
use super::point::KummerPoint;

/// A point of y² = F(x, z) on the weighted projective model, either affine
/// (z = 1) or at infinity (1 : w : 0) with w² = f₈.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvePt<R: RingElem> {
    Affine { x: R, y: R },
    Infinity { w: R },
}

fn f_of<R: RingElem>(f: &[R], x: &R) -> R {
    let mut acc = x.zero_like();
    for c in f.iter().rev() {
        acc = acc.times(x).plus(c);
    }
    acc
}

/// G(x₁, x₂) = 2 Σ f_{2j}(x₁x₂)^j + (x₁ + x₂) Σ f_{2j+1}(x₁x₂)^j, written in
/// terms of s = x₁ + x₂ and q = x₁x₂.
pub fn g_sym<R: RingElem>(f: &[R], s: &R, q: &R) -> R {
    let mut even = s.zero_like();
    let mut odd = s.zero_like();
    let mut qp = s.one_like();
    for j in 0..=4 {
        if let Some(c) = f.get(2 * j) {
            even = even.plus(&c.times(&qp));
        }
        if let Some(c) = f.get(2 * j + 1) {
            odd = odd.plus(&c.times(&qp));
        }
        qp = qp.times(q);
    }
    even.plus(&even).plus(&s.times(&odd))
}

pub fn g_poly<R: RingElem>(f: &[R], x1: &R, x2: &R) -> R {
    g_sym(f, &x1.plus(x2), &x1.times(x2))
}

fn pad9<R: RingElem>(f: &[R]) -> Result<Vec<R>> {
    if f.is_empty() || f.len() > 9 {
        return Err(Error::InvalidInput("genus-3 curve needs f₀..f₈".into()));
    }
    let mut v = f.to_vec();
    v.resize(9, f[0].zero_like());
    Ok(v)
}

/// ξ₈ from a degree-2 Mumford triple with A = a₀z² + a₁xz + a₂x²,
/// B = Σ bᵢxⁱz^(4−i), C = Σ cᵢxⁱz^(6−i).
pub fn xi8_from_abc<R: RingElem>(a: &[R; 3], b: &[R; 5], c: &[R; 7]) -> R {
    let two = a[0].from_i64_like(2);
    let (a0, a1, a2) = (&a[0], &a[1], &a[2]);
    let t = |xs: &[&R]| xs.iter().skip(1).fold(xs[0].clone(), |acc, x| acc.times(x));
    let mut r = t(&[a0, a0, a0, &c[6]]).negate();
    r = r.minus(&t(&[a0, a0, a2, &c[4]]));
    r = r.plus(&two.times(&t(&[a0, a0, &b[2], &b[4]])));
    r = r.minus(&two.times(&t(&[a0, a1, &b[1], &b[4]])));
    r = r.minus(&t(&[a0, a2, a2, &c[2]]));
    r = r.plus(&two.times(&t(&[a0, a2, &b[1], &b[3]])));
    r = r.plus(&two.times(&t(&[a1, a1, &b[0], &b[4]])));
    r = r.minus(&two.times(&t(&[a1, a2, &b[0], &b[3]])));
    r = r.minus(&t(&[a2, a2, a2, &c[0]]));
    r.plus(&two.times(&t(&[a2, a2, &b[0], &b[2]])))
}

/// κ(Q) for Q = [(P₁) + (P₂) − D_∞] of degree 2 on a genus-3 curve.
pub fn kappa_degree2<R: RingElem>(f: &[R], p1: &CurvePt<R>, p2: &CurvePt<R>) -> Result<KummerPoint<R>> {
    let f = pad9(f)?;
    let z = f[0].zero_like();
    let one = f[0].one_like();
    let two = f[0].from_i64_like(2);
    let four = f[0].from_i64_like(4);
    match (p1, p2) {
        (CurvePt::Affine { x: x1, y: y1 }, CurvePt::Affine { x: x2, y: y2 }) => {
            let a1 = x1.plus(x2).negate();
            let a2 = x1.times(x2);
            let xi8 = if x1 != x2 {
                let dx = x1.minus(x2);
                let num = two.times(y1).times(y2).minus(&g_poly(&f, x1, x2));
                num.times(&dx.times(&dx).try_inv().ok_or(Error::NotGeneralPosition)?)
            } else {
                if y1 != y2 || y1.is_zero_elem() {
                    return Err(Error::NotGeneralPosition);
                }
                // tangent case: b(x) interpolates y to first order at x₁
                let df = Poly::new(f.clone(), &z).derivative().eval(x1);
                let inv = two.times(y1).try_inv().ok_or(Error::NotGeneralPosition)?;
                let b1 = df.times(&inv);
                let b0 = y1.minus(&b1.times(x1));
                let bpoly = Poly::new(vec![b0.clone(), b1.clone()], &z);
                let apoly = Poly::new(vec![a2.clone(), a1.clone(), one.clone()], &z);
                let cpoly = bpoly
                    .mul(&bpoly)
                    .sub(&Poly::new(f.clone(), &z))
                    .divrem(&apoly)
                    .ok_or(Error::NotGeneralPosition)?
                    .0;
                let c: [R; 7] = std::array::from_fn(|i| cpoly.coeff(i));
                let b = [b0, b1, z.clone(), z.clone(), z.clone()];
                xi8_from_abc(&[a2.clone(), a1.clone(), one.clone()], &b, &c)
            };
            Ok(KummerPoint::new(vec![
                z.clone(),
                one.clone(),
                a1.clone(),
                a2.clone(),
                a1.times(&a1).minus(&a2),
                a1.times(&a2),
                a2.times(&a2),
                xi8,
            ]))
        }
        (CurvePt::Affine { x, y }, CurvePt::Infinity { w }) | (CurvePt::Infinity { w }, CurvePt::Affine { x, y }) => {
            let x4 = x.pow_u(4);
            let xi8 = two.times(y).times(w).minus(&two.times(&f[8]).times(&x4)).minus(&f[7].times(&x.pow_u(3)));
            Ok(KummerPoint::new(vec![
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                one,
                x.negate(),
                x.times(x),
                xi8,
            ]))
        }
        (CurvePt::Infinity { w: w1 }, CurvePt::Infinity { w: w2 }) => {
            if w1 != w2 || w1.is_zero_elem() {
                return Err(Error::NotGeneralPosition);
            }
            let mut c = vec![z.clone(); 6];
            c.push(four.times(&f[8]));
            c.push(four.times(&f[6]).times(&f[8]).minus(&f[7].times(&f[7])));
            Ok(KummerPoint::new(c))
        }
    }
}

/// κ(0) for genus 3.
pub fn kappa_zero<R: RingElem>(sample: &R) -> KummerPoint<R> {
    let mut c = vec![sample.zero_like(); 7];
    c.push(sample.one_like());
    KummerPoint::new(c)
}

/// Outcome of a lift check, with the degree of the preimage class (0, 2 or 4).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftCheck {
    pub lifts: bool,
    pub degree: u8,
}

/// Decide whether κ⁻¹(R) ⊂ J(ℚ) for R on a genus-3 Kummer.
pub fn lift_check_genus3(model: &KummerModel, r: &KummerPoint<Rat>) -> Result<LiftCheck> {
    let data = match &model.kind {
        ModelKind::Pack(d) if model.genus == 3 => d,
        _ => return Err(Error::UnsupportedModel("genus-3 pack model required".into())),
    };
    if r.dim() != 8 || r.is_zero_vector() {
        return Err(Error::OffModel);
    }
    if !model.equations.is_empty() && !model.on_model(r)? {
        return Err(Error::OffModel);
    }
    if model.is_identity(r) {
        return Ok(LiftCheck { lifts: true, degree: 0 });
    }
    let f = pad9(&data.f)?;
    let xi = &r.coords;
    if !xi[0].is_zero() {
        let minors = data.minors.as_ref().ok_or_else(|| Error::MissingPack("lift-check matrix".into()))?;
        let m: Vec<Rat> = minors.iter().map(|e| e.eval(&xi[..7]).unwrap()).collect();
        let lifts = minors_3x3(&m).iter().all(is_square_rat);
        return Ok(LiftCheck { lifts, degree: 4 });
    }
    let lifts = lift_degree2(&f, xi);
    Ok(LiftCheck { lifts, degree: 2 })
}

/// The sixteen 3×3 minors of a 4×4 matrix given row-major.
pub fn minors_3x3<R: RingElem>(m: &[R]) -> Vec<R> {
    let mut out = Vec::with_capacity(16);
    for skip_r in 0..4 {
        for skip_c in 0..4 {
            let rows: Vec<usize> = (0..4).filter(|&i| i != skip_r).collect();
            let cols: Vec<usize> = (0..4).filter(|&j| j != skip_c).collect();
            let e = |i: usize, j: usize| &m[rows[i] * 4 + cols[j]];
            let d = e(0, 0).times(&e(1, 1).times(e(2, 2)).minus(&e(1, 2).times(e(2, 1))))
                .minus(&e(0, 1).times(&e(1, 0).times(e(2, 2)).minus(&e(1, 2).times(e(2, 0)))))
                .plus(&e(0, 2).times(&e(1, 0).times(e(2, 1)).minus(&e(1, 1).times(e(2, 0)))));
            out.push(d);
        }
    }
    out
}

/// Degree-2 lift test on a point with ξ₁ = 0.
fn lift_degree2(f: &[Rat], xi: &[Rat]) -> bool {
    let f8_ok = is_square_rat(&f[8]) || f[8].is_zero();
    if xi[1].is_zero() {
        if xi[4].is_zero() {
            // both points at infinity
            return f8_ok && !f[8].is_zero();
        }
        let x1 = -(&xi[5] / &xi[4]);
        return f8_ok && is_square_rat(&f_of(f, &x1));
    }
    let n: Vec<Rat> = xi.iter().map(|c| c / &xi[1]).collect();
    let s = -n[2].clone();
    let q = n[3].clone();
    let dx2 = &s * &s - Rat::from_integer(4.into()) * &q;
    let two = Rat::from_integer(2.into());
    let y1y2 = (&dx2 * &n[7] + g_sym(f, &s, &q)) / &two;
    // power sums x₁^j + x₂^j
    let mut pw = vec![two.clone(), s.clone()];
    for j in 2..=8 {
        let next = &s * &pw[j - 1] - &q * &pw[j - 2];
        pw.push(next);
    }
    let ysq: Rat = f.iter().zip(&pw).map(|(a, b)| a * b).sum();
    let plus = &ysq + &y1y2 * &two;
    let minus = &ysq - &y1y2 * &two;
    if !is_square_rat(&plus) {
        return false;
    }
    dx2.is_zero() || is_square_rat(&(minus / dx2))
}
