//! The subcommands as functions returning JSON values.

use std::path::Path;

use kummer_torsion::jacobian::{group_structure, jacobian_order, l_polynomial, HyperellipticCurveQ, JacobianFp};
use kummer_torsion::pack::{load_pack, pack_checksum, validate_pack, TrustedCache, ValidationReport};
use kummer_torsion::torsion::bound::prime_rng;
use kummer_torsion::torsion::full::BoundReport;
use kummer_torsion::torsion::{reduction_upper_bound, two_torsion, TorsionReport};
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub p: u64,
    pub order: String,
    /// L-polynomial coefficients, constant term first.
    pub l_polynomial: Vec<String>,
    pub structure: Vec<String>,
}

pub fn count(curve: &HyperellipticCurveQ, p: u64, seed: u64) -> CliResult<CountReport> {
    if !curve.is_good_prime(p) {
        return Err(CliError::Input(format!("p = {p} is not a good odd prime for this curve")));
    }
    let c = curve.reduce(p)?;
    let order = jacobian_order(&c);
    let jac = JacobianFp::new(&c)?;
    let structure = group_structure(&jac, &order, &mut prime_rng(seed, p, 0))?;
    Ok(CountReport {
        p,
        order: order.to_string(),
        l_polynomial: l_polynomial(&c).iter().map(|a| a.to_string()).collect(),
        structure: structure.iter().map(|d| d.to_string()).collect(),
    })
}

pub fn bound(curve: &HyperellipticCurveQ, primes_bound: u64, seed: u64) -> CliResult<BoundReport> {
    Ok((&reduction_upper_bound(curve, primes_bound, seed)?).into())
}

pub fn two_torsion_report(curve: &HyperellipticCurveQ) -> kummer_torsion::torsion::two_torsion::TwoTorsionReport {
    two_torsion(curve).report
}

#[derive(Clone, Debug, Serialize)]
pub struct PackCheck {
    pub path: String,
    pub checksum: String,
    pub genus: usize,
    pub trusted: bool,
    pub report: ValidationReport,
}

/// Validate a pack; a passing pack is added to the trusted cache if given.
pub fn validate(path: &Path, trials: usize, seed: u64, cache: Option<&Path>) -> CliResult<PackCheck> {
    let pack = load_pack(path)?;
    let report = validate_pack(&pack, trials, seed);
    let checksum = pack_checksum(&pack);
    let mut trusted = false;
    if report.passed() {
        if let Some(c) = cache {
            let mut cache = TrustedCache::load(c)?;
            cache.insert(&checksum);
            cache.save()?;
            trusted = true;
        }
    }
    Ok(PackCheck { path: path.display().to_string(), checksum, genus: pack.genus, trusted, report })
}

pub fn torsion_summary(r: &TorsionReport) -> String {
    let group = if r.invariants.is_empty() {
        "trivial".to_string()
    } else {
        r.invariants.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    };
    let mut s = format!("J(Q)_tors = {group} (order {})\n", r.order);
    s += &format!("reduction bound: order {}", r.bound.order);
    if let Some(st) = &r.bound.structure {
        s += &format!(", structure [{}]", st.join(","));
    }
    s += &format!("\nJ(Q)[2] has order {}\n", r.two_torsion.order);
    for part in &r.parts {
        s += &format!(
            "{}-part [{}] via p = {}\n",
            part.q,
            part.structure.join(","),
            part.prime.map_or("-".into(), |p| p.to_string())
        );
    }
    for f in &r.flags {
        s += &format!("flag: {f}\n");
    }
    s
}
