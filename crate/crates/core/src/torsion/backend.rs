//! What the torsion algorithms need from a concrete Kummer model.


use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::jacobian::{HyperellipticCurveQ, JacElem, JacobianFp, ModelType};
use crate::kummer::{elliptic_model, KummerModel, KummerPoint};

use super::height::{elliptic_height_bound, HeightBound};

pub trait KummerBackend: Send + Sync {
    fn curve(&self) -> &HyperellipticCurveQ;

    /// The Kummer model over ℚ, with coefficients for the integral model.
    fn model(&self) -> &KummerModel;

    /// Whether κ̃ can be computed on this model of J(F_p).
    fn usable(&self, jac: &JacobianFp) -> bool;

    /// κ̃ of a class, as residues mod p.
    fn kummer_fp(&self, jac: &JacobianFp, e: &JacElem) -> Result<Vec<u64>>;

    /// Whether κ⁻¹(R) ⊂ J(ℚ).
    fn lift_check(&self, r: &KummerPoint<Rat>) -> Result<bool>;

    fn height_bound(&self) -> Result<HeightBound>;
}

/// The x-line of a genus-1 curve y² = f(x), deg f = 3.
pub struct EllipticBackend {
    curve: HyperellipticCurveQ,
    model: KummerModel,
    a: [Int; 3],
}

impl EllipticBackend {
    pub fn new(curve: &HyperellipticCurveQ) -> Result<Self> {
        if curve.genus != 1 {
            return Err(Error::UnsupportedModel("elliptic backend needs genus 1".into()));
        }
        if curve.degree() != 3 {
            return Err(Error::UnsupportedModel("genus-1 torsion needs a cubic model".into()));
        }
        let f = curve.poly_int();
        let model = elliptic_model(&f)?;
        let fi = &curve.f_int;
        let lc = &fi[3];
        let a = [fi[2].clone(), &fi[1] * lc, &fi[0] * lc * lc];
        Ok(EllipticBackend { curve: curve.clone(), model, a })
    }

    /// Integral Weierstrass coefficients (a2, a4, a6) of the monic model.
    pub fn weierstrass(&self) -> &[Int; 3] {
        &self.a
    }
}

impl KummerBackend for EllipticBackend {
    fn curve(&self) -> &HyperellipticCurveQ {
        &self.curve
    }

    fn model(&self) -> &KummerModel {
        &self.model
    }

    fn usable(&self, jac: &JacobianFp) -> bool {
        jac.kind == ModelType::Imaginary && jac.change.x0.is_none()
    }

    fn kummer_fp(&self, jac: &JacobianFp, e: &JacElem) -> Result<Vec<u64>> {
        if !self.usable(jac) {
            return Err(Error::UnsupportedModel("coordinate change on the elliptic model".into()));
        }
        Ok(match e.u.deg() {
            0 => vec![1, 0],
            1 => vec![(jac.p - e.u.coeff(0)) % jac.p, 1],
            _ => return Err(Error::Internal("unreduced class on an elliptic curve".into())),
        })
    }

    fn lift_check(&self, r: &KummerPoint<Rat>) -> Result<bool> {
        self.model.lift_check_elliptic(r)
    }

    fn height_bound(&self) -> Result<HeightBound> {
        Ok(elliptic_height_bound(&self.a[0], &self.a[1], &self.a[2]))
    }
}
