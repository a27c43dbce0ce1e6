//! The assembled torsion subgroup.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::sqrt::valuation;
use crate::arith::{Int, Rat};
use crate::error::{Error, Result};
use crate::jacobian::group::combine_invariants;
use crate::jacobian::HyperellipticCurveQ;

use super::backend::{EllipticBackend, KummerBackend};
use super::bound::{reduction_upper_bound, ReductionBound};
use super::height::HeightBound;
use super::lift::LiftConfig;
use super::qpart::{q_part, QPartInput, QPartReport};
use super::two_torsion::{two_torsion, TwoTorsionReport};

#[derive(Clone, Debug)]
pub struct TorsionConfig {
    pub prime_bound: u64,
    pub beta_override: Option<Rat>,
    pub max_precision: Option<u32>,
    pub no_bqf: bool,
    pub audit: bool,
    pub seed: u64,
}

impl Default for TorsionConfig {
    fn default() -> Self {
        TorsionConfig { prime_bound: 100, beta_override: None, max_precision: None, no_bqf: false, audit: false, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSummary {
    pub p: u64,
    pub order: String,
    pub structure: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub order: String,
    pub structure: Option<Vec<String>>,
    pub primes: Vec<PrimeSummary>,
}

impl From<&ReductionBound> for BoundReport {
    fn from(b: &ReductionBound) -> Self {
        let strs = |v: &[Int]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>();
        BoundReport {
            order: b.order.to_string(),
            structure: b.structure.as_deref().map(strs),
            primes: b
                .primes
                .iter()
                .map(|d| PrimeSummary { p: d.p, order: d.order.to_string(), structure: d.structure.as_deref().map(strs) })
                .collect(),
        }
    }
}

/// Everything the torsion computation found, without timing data so that a
/// fixed seed gives identical output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub genus: usize,
    pub f: Vec<String>,
    pub beta: String,
    pub exp_beta_bound: String,
    pub bound: BoundReport,
    pub two_torsion: TwoTorsionReport,
    pub parts: Vec<QPartReport>,
    pub invariants: Vec<String>,
    pub order: String,
    pub flags: Vec<String>,
}

impl TorsionReport {
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.invariants.iter().map(|s| s.parse().unwrap()).collect()
    }
}

/// Picks the built-in model for genus 1.
pub fn backend_for(curve: &HyperellipticCurveQ) -> Result<Box<dyn KummerBackend>> {
    match curve.genus {
        1 => Ok(Box::new(EllipticBackend::new(curve)?)),
        g => Err(Error::MissingPack(format!("genus {g} needs a formula pack"))),
    }
}

/// J(ℚ)_tors for a curve, using the built-in genus-1 model.
pub fn torsion_subgroup(curve: &HyperellipticCurveQ, cfg: &TorsionConfig) -> Result<TorsionReport> {
    let backend = backend_for(curve)?;
    full_torsion(backend.as_ref(), cfg)
}

/// Height bound, reduction bound, q-parts, and their combination.
pub fn full_torsion<B: KummerBackend + ?Sized>(backend: &B, cfg: &TorsionConfig) -> Result<TorsionReport> {
    let curve = backend.curve();
    let mut flags = Vec::new();
    let height = match &cfg.beta_override {
        Some(b) => {
            flags.push("beta-override".to_string());
            HeightBound::from_beta(b.clone())
        }
        None => backend.height_bound()?,
    };
    let bound = reduction_upper_bound(curve, cfg.prime_bound, cfg.seed)?;
    let tt = two_torsion(curve);
    if !tt.report.complete {
        flags.push("two-torsion-candidates-incomplete".to_string());
    }
    let lift = LiftConfig { no_bqf: cfg.no_bqf, audit: cfg.audit, max_precision: cfg.max_precision };
    let mut parts = Vec::new();
    for q in bound.prime_divisors() {
        let part = if q == 2 {
            two_part(backend, &bound, &height, lift, &tt, cfg.seed, &mut flags)?
        } else {
            let input = QPartInput { backend, bound: &bound, height: &height, lift, two_torsion: None, seed: cfg.seed };
            q_part(&input, q)?
        };
        parts.push(part);
    }
    let inv = combine_invariants(&parts.iter().map(|p| p.invariants()).collect::<Vec<_>>());
    let inv: Vec<Int> = inv.into_iter().filter(|d| !d.is_one()).collect();
    let order: Int = inv.iter().product();
    if !(&bound.order % &order == BigInt::from(0)) {
        return Err(Error::Internal("torsion order does not divide the reduction bound".into()));
    }
    Ok(TorsionReport {
        genus: curve.genus,
        f: curve.f.iter().map(|c| c.to_string()).collect(),
        beta: height.beta.to_string(),
        exp_beta_bound: height.exp_beta.to_string(),
        bound: (&bound).into(),
        two_torsion: tt.report.clone(),
        parts,
        invariants: inv.iter().map(|d| d.to_string()).collect(),
        order: order.to_string(),
        flags,
    })
}

/// The 2-part: J(ℚ)[2] when the bound forces it, otherwise the q-part
/// algorithm with q = 2 seeded by κ(J(ℚ)[2]).
fn two_part<B: KummerBackend + ?Sized>(
    backend: &B,
    bound: &ReductionBound,
    height: &HeightBound,
    lift: super::lift::LiftConfig,
    tt: &super::two_torsion::TwoTorsion,
    seed: u64,
    flags: &mut Vec<String>,
) -> Result<QPartReport> {
    let rank = tt.rank();
    let elementary = || QPartReport {
        q: 2,
        prime: None,
        sylow: vec![],
        structure: vec!["2".to_string(); rank as usize],
        lift_calls: 0,
        records: vec![],
    };
    let forced = valuation(&bound.order, 2) == rank
        || bound.q_structure(2).is_some_and(|s| s.len() as u32 == rank && s.iter().all(|d| *d == BigInt::from(2)));
    if forced {
        flags.push("two-part-from-bound".to_string());
        return Ok(elementary());
    }
    let input = QPartInput { backend, bound, height, lift, two_torsion: Some(tt), seed };
    let part = q_part(&input, 2)?;
    let got2 = part.invariants().len() as u32;
    if got2 != rank {
        return Err(Error::Internal(format!("2-rank {got2} from lifting disagrees with J(Q)[2] rank {rank}")));
    }
    Ok(part)
}
