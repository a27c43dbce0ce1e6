//! The Kummer line of an elliptic curve: x-only doubling and pseudo-addition.

use num_traits::{One, Zero};

use crate::arith::sqrt::is_square_rat;
use crate::arith::{Poly, Rat};
use crate::error::{Error, Result};

use super::model::{KummerModel, ModelKind};
use super::mpoly::MPoly;
use super::point::KummerPoint;

fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn term(c: Rat, e: [u8; 4]) -> (Rat, Vec<u8>) {
    (c, e.to_vec())
}

/// Kummer model of y² = f(x), deg f = 3, in coordinates (X : Z) with
/// X/Z = lc(f)·x.
pub fn elliptic_model(f: &Poly<Rat>) -> Result<KummerModel> {
    if f.deg() != 3 {
        return Err(Error::InvalidInput("elliptic model needs a cubic".into()));
    }
    if f.discriminant().is_zero() {
        return Err(Error::InvalidInput("cubic is not squarefree".into()));
    }
    let lc = f.lc();
    let a2 = f.coeff(2);
    let a4 = f.coeff(1) * &lc;
    let a6 = f.coeff(0) * &lc * &lc;
    Ok(from_weierstrass(a2, a4, a6, lc))
}

fn from_weierstrass(a2: Rat, a4: Rat, a6: Rat, lc: Rat) -> KummerModel {
    // variables for δ: X, Z
    let d = |c: Rat, ex: u8, ez: u8| (c, vec![ex, ez]);
    let delta_x = MPoly::new(
        2,
        vec![
            d(r(1), 4, 0),
            d(r(-2) * &a4, 2, 2),
            d(r(-8) * &a6, 1, 3),
            d(&a4 * &a4 - r(4) * &a2 * &a6, 0, 4),
        ],
    );
    let delta_z = MPoly::new(
        2,
        vec![d(r(4), 3, 1), d(r(4) * &a2, 2, 2), d(r(4) * &a4, 1, 3), d(r(4) * &a6, 0, 4)],
    );
    // variables for B: X1, Z1, X2, Z2
    let bxx = MPoly::new(
        4,
        vec![
            term(r(2), [2, 0, 2, 0]),
            term(r(-4) * &a4, [1, 1, 1, 1]),
            term(r(2) * &a4 * &a4, [0, 2, 0, 2]),
            term(r(-8) * &a6, [1, 1, 0, 2]),
            term(r(-8) * &a6, [0, 2, 1, 1]),
            term(r(-8) * &a6 * &a2, [0, 2, 0, 2]),
        ],
    );
    let bxz = MPoly::new(
        4,
        vec![
            term(r(2), [2, 0, 1, 1]),
            term(r(2), [1, 1, 2, 0]),
            term(r(2) * &a4, [1, 1, 0, 2]),
            term(r(2) * &a4, [0, 2, 1, 1]),
            term(r(4) * &a2, [1, 1, 1, 1]),
            term(r(4) * &a6, [0, 2, 0, 2]),
        ],
    );
    let bzz = MPoly::new(4, vec![term(r(2), [2, 0, 0, 2]), term(r(-4), [1, 1, 1, 1]), term(r(2), [0, 2, 2, 0])]);
    KummerModel {
        genus: 1,
        delta: vec![delta_x, delta_z],
        bqf: Some(vec![bxx, bxz, bzz]),
        equations: vec![],
        identity: vec![Rat::one(), Rat::zero()],
        kind: ModelKind::Elliptic { a2, a4, a6, lc },
    }
}

impl KummerModel {
    fn elliptic_data(&self) -> Result<(&Rat, &Rat, &Rat, &Rat)> {
        match &self.kind {
            ModelKind::Elliptic { a2, a4, a6, lc } => Ok((a2, a4, a6, lc)),
            _ => Err(Error::UnsupportedModel("not an elliptic model".into())),
        }
    }

    /// κ of an affine point with x-coordinate `x` (the y-coordinate is not needed).
    pub fn kappa_elliptic_x(&self, x: &Rat) -> Result<KummerPoint<Rat>> {
        let (_, _, _, lc) = self.elliptic_data()?;
        Ok(KummerPoint::new(vec![x * lc, Rat::one()]))
    }

    /// The x-coordinate on the original curve of a non-identity point.
    pub fn elliptic_x(&self, p: &KummerPoint<Rat>) -> Result<Option<Rat>> {
        let (_, _, _, lc) = self.elliptic_data()?;
        if p.coords[1].is_zero() {
            return Ok(None);
        }
        Ok(Some(&p.coords[0] / &p.coords[1] / lc))
    }

    /// Whether (X : Z) is the image of a rational point of the curve.
    pub fn lift_check_elliptic(&self, p: &KummerPoint<Rat>) -> Result<bool> {
        let (a2, a4, a6, _) = self.elliptic_data()?;
        if p.is_zero_vector() {
            return Err(Error::OffModel);
        }
        if p.coords[1].is_zero() {
            return Ok(true);
        }
        let x = &p.coords[0] / &p.coords[1];
        let rhs = &x * &x * &x + a2 * &x * &x + a4 * &x + a6;
        Ok(is_square_rat(&rhs))
    }
}
