//! Genus-2 Kummer coordinates (ξ₁ : ξ₂ : ξ₃ : ξ₄) and the lift check.
//!
//! For a class [P₁ + P₂ − D_∞] with x₁ ≠ x₂ the coordinates are
//! (1 : x₁ + x₂ : x₁x₂ : (G(x₁, x₂) − 2y₁y₂)/(x₁ − x₂)²), the origin is
//! (0 : 0 : 0 : 1).

use num_traits::Zero;

use crate::arith::sqrt::is_square_rat;
use crate::arith::{Poly, Rat, RingElem};
use crate::error::{Error, Result};

use super::genus3::g_sym;
use super::point::KummerPoint;

/// Coordinates of the class of div(u, v) − D_∞ for u = x² + u₁x + u₀ and
/// v = v₁x + v₀, scaled by the discriminant of u so that they are
/// polynomial. The result is the zero vector when u has a double root.
pub fn kappa_mumford<R: RingElem>(f: &[R], u: [&R; 2], v: [&R; 2]) -> KummerPoint<R> {
    let (u0, u1) = (u[0], u[1]);
    let (v0, v1) = (v[0], v[1]);
    let d = u1.times(u1).minus(&u0.from_i64_like(4).times(u0));
    let s = u1.negate();
    let g = g_sym(f, &s, u0);
    let n = v1.times(v1).times(u0).minus(&v0.times(v1).times(u1)).plus(&v0.times(v0));
    KummerPoint::new(vec![d.clone(), s.times(&d), u0.times(&d), g.minus(&n.plus(&n))])
}

/// Whether κ⁻¹(ξ) ⊂ J(ℚ) for ξ on the Kummer surface of y² = f(x),
/// deg f ∈ {5, 6}.
pub fn lift_check_genus2(f: &[Rat], xi: &KummerPoint<Rat>) -> Result<bool> {
    if xi.dim() != 4 || xi.is_zero_vector() {
        return Err(Error::OffModel);
    }
    let mut f = f.to_vec();
    f.resize(7, Rat::zero());
    let k = &xi.coords;
    let f6 = &f[6];
    let inf_rational = f6.is_zero() || is_square_rat(f6);
    if k[0].is_zero() {
        if k[1].is_zero() {
            if k[2].is_zero() {
                return Ok(true);
            }
            // ∞₊ − ∞₋
            return Ok(!f6.is_zero() && is_square_rat(f6));
        }
        // P + ∞± − D_∞ with x(P) = ξ₃/ξ₂
        let x = &k[2] / &k[1];
        let fx = Poly::new(f.clone(), &Rat::zero()).eval(&x);
        return Ok(inf_rational && is_square_rat(&fx));
    }
    let s = &k[1] / &k[0];
    let q = &k[2] / &k[0];
    let b = &k[3] / &k[0];
    let two = Rat::from_integer(2.into());
    let disc = &s * &s - Rat::from_integer(4.into()) * &q;
    let fpoly = Poly::new(f.clone(), &Rat::zero());
    if disc.is_zero() {
        return Ok(is_square_rat(&fpoly.eval(&(&s / &two))));
    }
    // u = x² + S·x + T, y₁y₂ = P
    let big_s = -s.clone();
    let big_t = q.clone();
    let p = (g_sym(&f, &s, &q) - &b * &disc) / &two;
    let u = Poly::new(vec![big_t.clone(), big_s.clone(), Rat::from_integer(1.into())], &Rat::zero());
    let r = fpoly.rem(&u);
    let (r0, r1) = (r.coeff(0), r.coeff(1));
    let w = (&two * (&p - &r0) + &big_s * &r1) / (Rat::from_integer(4.into()) * &big_t - &big_s * &big_s);
    if w.is_zero() {
        return Ok(r1.is_zero() && is_square_rat(&r0));
    }
    Ok(is_square_rat(&w))
}
