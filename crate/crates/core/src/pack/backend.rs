use num_traits::Zero;

use crate::arith::sqrt::is_square_rat;
use crate::arith::{Poly, Rat};
use crate::error::{Error, Result};
use crate::jacobian::{HyperellipticCurveQ, JacElem, JacobianFp};
use crate::kummer::genus2::lift_check_genus2;
use crate::kummer::genus3::lift_check_genus3;
use crate::kummer::{KummerModel, KummerPoint, ModelKind};
use crate::torsion::height::{pack_height_bound, HeightBound};
use crate::torsion::KummerBackend;

use super::format::FormulaPack;
use super::kappa::kappa_fp;
use super::model::specialize;
use super::validate::ValidationReport;

/// A pack that passed validation in this process or is listed in the
/// trusted cache. Only these can drive the torsion algorithms.
#[derive(Clone, Debug)]
pub struct ValidatedPack {
    pack: FormulaPack,
    report: Option<ValidationReport>,
}

impl ValidatedPack {
    /// Validate (or accept a cached checksum) and wrap.
    pub fn new(
        pack: FormulaPack,
        cache: Option<&super::cache::TrustedCache>,
        trials: usize,
        seed: u64,
    ) -> Result<Self> {
        let report = super::validate::ensure_valid(&pack, cache, trials, seed)?;
        Ok(ValidatedPack { pack, report })
    }

    pub fn pack(&self) -> &FormulaPack {
        &self.pack
    }

    /// The validation run, or `None` when the checksum was trusted.
    pub fn report(&self) -> Option<&ValidationReport> {
        self.report.as_ref()
    }
}

/// Kummer backend built from a validated formula pack.
pub struct PackBackend {
    curve: HyperellipticCurveQ,
    model: KummerModel,
}

impl PackBackend {
    pub fn new(curve: &HyperellipticCurveQ, pack: &ValidatedPack) -> Result<Self> {
        let pack = pack.pack();
        if pack.genus != curve.genus {
            return Err(Error::MissingPack(format!("pack is for genus {}, curve has genus {}", pack.genus, curve.genus)));
        }
        if curve.genus == 1 && curve.degree() != 3 {
            return Err(Error::UnsupportedModel("genus-1 packs describe cubic models".into()));
        }
        let f: Vec<Rat> = curve.f_int.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let model = specialize(pack, &f)?;
        Ok(PackBackend { curve: curve.clone(), model })
    }

    fn f(&self) -> &[Rat] {
        match &self.model.kind {
            ModelKind::Pack(d) => &d.f,
            _ => unreachable!(),
        }
    }
}

impl KummerBackend for PackBackend {
    fn curve(&self) -> &HyperellipticCurveQ {
        &self.curve
    }

    fn model(&self) -> &KummerModel {
        &self.model
    }

    fn usable(&self, jac: &JacobianFp) -> bool {
        jac.change.x0.is_none()
    }

    fn kummer_fp(&self, jac: &JacobianFp, e: &JacElem) -> Result<Vec<u64>> {
        let k = kappa_fp(&self.model, jac, e)?;
        Ok(k.coords.iter().map(|c| c.v).collect())
    }

    fn lift_check(&self, r: &KummerPoint<Rat>) -> Result<bool> {
        match self.model.genus {
            1 => {
                // (X : Z) with X/Z = lc·x
                if r.is_zero_vector() {
                    return Err(Error::OffModel);
                }
                if r.coords[1].is_zero() {
                    return Ok(true);
                }
                let f = self.f();
                let x = &r.coords[0] / &r.coords[1] / &f[3];
                Ok(is_square_rat(&Poly::new(f.to_vec(), &Rat::zero()).eval(&x)))
            }
            2 => lift_check_genus2(self.f(), r),
            _ => Ok(lift_check_genus3(&self.model, r)?.lifts),
        }
    }

    fn height_bound(&self) -> Result<HeightBound> {
        Ok(pack_height_bound(&self.curve.disc, &self.model.delta))
    }
}
