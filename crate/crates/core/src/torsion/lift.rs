//! Hensel lifting of a torsion point of K(F_p) to K(ℤ/p^N) and recognition
//! of its rational preimage.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{Int, Rat, RingElem, Zmod};
use crate::error::{Error, Result};
use crate::kummer::{KummerModel, KummerPoint};
use crate::lattice::{precision_factor, recognize_candidate};

use super::backend::KummerBackend;
use super::height::HeightBound;

/// The multiplier M ≡ 1 (mod m) of the iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Multiplier {
    /// M = 1 + a·m, applied with the full ladder.
    Linear { a: u64, m: u64 },
    /// M = sign·2^s, applied by s doublings.
    PowerOfTwo { s: u32, negative: bool },
}

impl Multiplier {
    pub fn value(&self) -> Int {
        match *self {
            Multiplier::Linear { a, m } => BigInt::from(a) * m + 1,
            Multiplier::PowerOfTwo { s, negative } => {
                let v = BigInt::one() << s;
                if negative { -v } else { v }
            }
        }
    }

    fn apply<R: RingElem>(&self, model: &KummerModel, r: &KummerPoint<R>) -> Result<KummerPoint<R>> {
        match *self {
            Multiplier::Linear { .. } => {
                let m = self.value().to_u64().ok_or_else(|| Error::Internal("multiplier too large".into()))?;
                model.ladder_u(r, m)
            }
            Multiplier::PowerOfTwo { s, .. } => model.double_n(r, s),
        }
    }
}

/// Smallest admissible M for order m at p. Without B only M = ±2^s is
/// possible, which needs m odd.
pub fn choose_multiplier(m: u64, p: u64, no_bqf: bool) -> Result<Multiplier> {
    if m <= 2 || m % p == 0 {
        return Err(Error::InvalidInput(format!("cannot lift order {m} at p = {p}")));
    }
    if !no_bqf {
        let a = (1..).find(|a| a % p != 0).unwrap();
        return Ok(Multiplier::Linear { a, m });
    }
    if m % 2 == 0 {
        return Err(Error::NeedBQF);
    }
    let mut t = 1u64;
    for s in 1..=(2 * m as u32) {
        t = t * 2 % m;
        let negative = if t == 1 {
            false
        } else if t == m - 1 {
            true
        } else {
            continue;
        };
        let mult = Multiplier::PowerOfTwo { s, negative };
        let a: Int = (mult.value() - 1) / BigInt::from(m);
        if !(a % BigInt::from(p)).is_zero() {
            return Ok(mult);
        }
    }
    Err(Error::NeedBQF)
}

/// Smallest N ≥ 2 with p^N > 2^(g + 2^g)·E², E ≥ e^β.
pub fn target_precision(p: u64, n_coords: usize, exp_beta: &Int) -> u32 {
    let rhs = precision_factor(n_coords) * exp_beta * exp_beta;
    let mut n = 2;
    let mut pn = BigInt::from(p).pow(2);
    while pn <= rhs {
        pn *= p;
        n += 1;
    }
    n
}

/// State of the iteration R̃ₙ ↦ (M·R̃ₙ′ − [[M]](R̃ₙ′))/(M − 1).
#[derive(Clone, Debug)]
pub struct HenselLift<'a> {
    model: &'a KummerModel,
    p: u64,
    mult: Multiplier,
    patch: usize,
    r: u32,
    coords: Vec<Int>,
}

impl<'a> HenselLift<'a> {
    /// Starts from κ̃(Q̃) given mod p; normalised so that the first nonzero
    /// coordinate is 1.
    pub fn new(model: &'a KummerModel, p: u64, start: &[u64], mult: Multiplier) -> Result<Self> {
        let patch = start.iter().position(|&c| c % p != 0).ok_or(Error::OffModel)?;
        let inv = crate::arith::fp::inv_mod(start[patch], p).unwrap();
        let coords = start.iter().map(|&c| BigInt::from(crate::arith::fp::mul_mod(c % p, inv, p))).collect();
        Ok(HenselLift { model, p, mult, patch, r: 1, coords })
    }

    pub fn precision(&self) -> u32 {
        self.r
    }

    pub fn patch(&self) -> usize {
        self.patch
    }

    pub fn modulus(&self) -> Int {
        BigInt::from(self.p).pow(self.r)
    }

    /// Current approximation as residues mod p^r.
    pub fn residues(&self) -> Vec<Zmod> {
        let m = Arc::new(self.modulus());
        self.coords.iter().map(|c| Zmod::new(c, &m)).collect()
    }

    /// One iteration, raising the precision to `r` (at most doubling it).
    pub fn step_to(&mut self, r: u32) -> Result<()> {
        debug_assert!(r > self.r && r <= 2 * self.r);
        let m = Arc::new(BigInt::from(self.p).pow(r));
        let lifted = KummerPoint::new(self.coords.iter().map(|c| Zmod::new(c, &m)).collect::<Vec<_>>());
        let image = self.mult.apply(self.model, &lifted)?;
        let s = &image.coords[self.patch];
        let s_inv = s.try_inv().ok_or(Error::NeedPatchChange)?;
        let big_m = lifted.coords[0].from_int_like(&self.mult.value());
        let denom = big_m.minus(&lifted.coords[0].one_like()).try_inv().ok_or_else(|| {
            Error::Internal("M − 1 is not a unit".into())
        })?;
        self.coords = lifted
            .coords
            .iter()
            .zip(&image.coords)
            .map(|(x, y)| big_m.times(x).minus(&y.times(&s_inv)).times(&denom).v)
            .collect();
        self.r = r;
        Ok(())
    }

    /// Whether [[m]](R̃) ≡ κ(0) mod p^r for the current approximation.
    pub fn is_torsion_mod(&self, m: u64) -> Result<bool> {
        let pt = KummerPoint::new(self.residues());
        let img = self.model.ladder_u(&pt, m)?;
        Ok(img.proj_eq(&self.model.identity_like(&pt.coords[0])))
    }
}

#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct LiftConfig {
    pub no_bqf: bool,
    /// Continue to the full precision after an early success and compare.
    pub audit: bool,
    pub max_precision: Option<u32>,
}


/// A verified rational Kummer point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub point: Vec<String>,
    pub m: u64,
    pub p: u64,
    /// Precision r at which the point was recognised.
    pub precision: u32,
    /// Precision N that would have been required.
    pub target: u32,
    pub multiplier: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Found(LiftCertificate),
    NotRational { precision: u32 },
}

/// Final checks on a candidate: on the model, small enough, m-torsion, and lifting to J(ℚ).
pub fn verify_candidate<B: KummerBackend + ?Sized>(
    backend: &B,
    w: &[Int],
    m: u64,
    bound: &HeightBound,
) -> Result<bool> {
    let model = backend.model();
    let r = KummerPoint::from_ints(w);
    if w.iter().any(|x| x.abs() > bound.exp_beta) {
        return Ok(false);
    }
    if !model.equations.is_empty() && !model.on_model(&r)? {
        return Ok(false);
    }
    if !model.is_identity(&model.ladder_u(&r, m)?) {
        return Ok(false);
    }
    backend.lift_check(&r)
}

/// Decides whether the point of K(F_p) with coordinates `start`, the image
/// of a point of exact order m > 2, is the reduction of κ(Q) for some
/// Q ∈ J(ℚ)[m].
pub fn lift_and_recognize<B: KummerBackend + ?Sized>(
    backend: &B,
    p: u64,
    m: u64,
    start: &[u64],
    bound: &HeightBound,
    cfg: &LiftConfig,
) -> Result<LiftOutcome> {
    let mult = choose_multiplier(m, p, cfg.no_bqf)?;
    let model = backend.model();
    let n_target = target_precision(p, model.n(), &bound.exp_beta);
    let n_stop = match cfg.max_precision {
        Some(cap) if cap < n_target => cap,
        _ => n_target,
    };
    let hb = Rat::from_integer(bound.exp_beta.clone());
    let mut lift = HenselLift::new(model, p, start, mult)?;
    let mut early: Option<LiftCertificate> = None;
    while lift.precision() < n_stop {
        let r = (2 * lift.precision()).min(n_stop);
        lift.step_to(r)?;
        if early.is_some() && r < n_stop {
            continue;
        }
        if let Some(w) = recognize_candidate(&lift.residues(), &hb)? {
            if verify_candidate(backend, &w, m, bound)? {
                let cert = LiftCertificate {
                    point: w.iter().map(|x| x.to_string()).collect(),
                    m,
                    p,
                    precision: r,
                    target: n_target,
                    multiplier: mult.value().to_string(),
                };
                match &early {
                    Some(e) if e.point != cert.point => {
                        return Err(Error::Internal("early recognition disagrees with full precision".into()))
                    }
                    Some(e) => return Ok(LiftOutcome::Found(e.clone())),
                    None if !cfg.audit || r >= n_stop => return Ok(LiftOutcome::Found(cert)),
                    None => early = Some(cert),
                }
            }
        }
    }
    if let Some(e) = early {
        return Err(Error::Internal(format!("early recognition at p^{} not confirmed", e.precision)));
    }
    if n_stop < n_target {
        return Err(Error::PrecisionTooSmall);
    }
    Ok(LiftOutcome::NotRational { precision: n_target })
}
