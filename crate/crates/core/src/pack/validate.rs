//! Randomised consistency checks of a formula pack over small prime fields.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::fp::{is_square_mod, sqrt_mod};
use crate::arith::{Fp, FpPoly, Rat, RingElem};
use crate::error::{Error, Result};
use crate::jacobian::{jacobian_order, HyperellipticCurveQ, JacElem, JacobianFp, ModelType};
use crate::kummer::genus2::kappa_mumford;
use crate::kummer::genus3::{kappa_degree2, minors_3x3, CurvePt};
use crate::kummer::{elliptic_model, KummerModel, KummerPoint, ModelKind};

use super::format::{pack_checksum, FormulaPack, TableKind};
use super::kappa::{kappa_fp, original_mumford};
use super::model::specialize;

pub const VALIDATION_PRIMES: [u64; 4] = [5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    /// Letter of the check, `a` to `e`.
    pub id: char,
    pub name: String,
    pub applicable: bool,
    pub passed: bool,
    pub runs: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checksum: String,
    pub genus: usize,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: char) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }
}

struct Tally {
    runs: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { runs: 0, failures: 0, first: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.runs += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn fail(&mut self, what: String) {
        self.record(false, || what);
    }

    fn finish(self, id: char, name: &str, applicable: bool) -> CheckResult {
        CheckResult {
            id,
            name: name.into(),
            applicable,
            passed: !applicable || self.failures == 0,
            runs: self.runs,
            failures: self.failures,
            first_failure: self.first,
        }
    }
}

/// A random curve of the pack's genus with small coefficients and good
/// reduction at `p`, whose working model needs no change of x-coordinate.
fn random_curve(genus: usize, p: u64, rng: &mut ChaCha8Rng) -> (HyperellipticCurveQ, JacobianFp) {
    loop {
        let deg = if genus == 1 || rng.gen_bool(0.5) { 2 * genus + 1 } else { 2 * genus + 2 };
        let mut f: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
        if f[deg] == 0 {
            f[deg] = 1;
        }
        let Ok(c) = HyperellipticCurveQ::from_ints(genus, &f) else { continue };
        if !c.is_good_prime(p) {
            continue;
        }
        let Ok(jac) = c.reduce(p).and_then(|cp| JacobianFp::new(&cp)) else { continue };
        if jac.change.x0.is_none() {
            return (c, jac);
        }
    }
}

fn fp_coeffs(f: &[Rat], p: u64) -> Vec<Fp> {
    let s = Fp::new(0, p);
    f.iter().map(|c| s.from_rat_like(c).unwrap()).collect()
}

fn random_generic(jac: &JacobianFp, rng: &mut ChaCha8Rng) -> JacElem {
    for _ in 0..1000 {
        let e = jac.random(rng);
        if original_mumford(jac, &e).is_some() {
            return e;
        }
    }
    jac.random(rng)
}

fn show(k: &KummerPoint<Fp>) -> String {
    let v: Vec<u64> = k.normalized().unwrap_or_else(|| k.clone()).coords.iter().map(|c| c.v).collect();
    format!("{v:?}")
}

/// Run checks (a)–(e) on `trials` random curves over F₅, F₇, F₁₁, F₁₃.
///
/// (a) κ̃ lands on the defining equations, (b) doubling commutes with κ̃,
/// (c) pseudo-addition matches the group law, (d) agreement with the
/// built-in coordinates of the genus, (e) genus 3 only: the lift-check
/// matrix separates κ̃(J(F₅)) from the rest of K(F₅).
pub fn validate_pack(pack: &FormulaPack, trials: usize, seed: u64) -> ValidationReport {
    let mut warnings = Vec::new();
    if trials == 0 {
        warnings.push("no trials run: validation is vacuous".to_string());
    }
    if pack.table(TableKind::Xi).is_none() {
        warnings.push("pack has no xi table; nothing can be checked against J(F_p)".to_string());
    }
    let mut ta = Tally::new();
    let mut tb = Tally::new();
    let mut tc = Tally::new();
    let mut td = Tally::new();
    let mut te = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let has_xi = pack.table(TableKind::Xi).is_some();
    for t in 0..trials {
        let p = VALIDATION_PRIMES[t % VALIDATION_PRIMES.len()];
        let (curve, jac) = random_curve(pack.genus, p, &mut rng);
        let model = match specialize(pack, &curve.f_int.iter().map(|c| Rat::from_integer(c.clone())).collect::<Vec<_>>()) {
            Ok(m) => m,
            Err(e) => {
                tb.fail(format!("specialisation failed: {e}"));
                continue;
            }
        };
        if !has_xi {
            tb.fail("no xi table".into());
            continue;
        }
        let d = random_generic(&jac, &mut rng);
        let e = random_generic(&jac, &mut rng);
        let kd = kappa_fp(&model, &jac, &d);
        let (kd, k2d) = match (kd, kappa_fp(&model, &jac, &jac.add(&d, &d))) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(x), _) | (_, Err(x)) => {
                tb.fail(format!("p = {p}: κ̃ failed: {x}"));
                continue;
            }
        };
        if !model.equations.is_empty() {
            let ok = model.on_model(&kd).unwrap_or(false);
            ta.record(ok, || format!("p = {p}, f = {:?}: κ̃(D) = {} off the model", curve.f_int, show(&kd)));
        }
        let doubled = model.double(&kd);
        let ok = doubled.as_ref().is_ok_and(|x| !x.is_zero_vector() && x.proj_eq(&k2d));
        tb.record(ok, || format!("p = {p}, f = {:?}: δ(κ̃(D)) ≠ κ̃(2D) for κ̃(D) = {}", curve.f_int, show(&kd)));
        if model.bqf.is_some() {
            let ok = (|| -> Result<bool> {
                let ke = kappa_fp(&model, &jac, &e)?;
                let kdiff = kappa_fp(&model, &jac, &jac.sub(&d, &e))?;
                let ksum = kappa_fp(&model, &jac, &jac.add(&d, &e))?;
                let s = model.pseudo_add(&kd, &ke, &kdiff)?;
                if s.is_zero_vector() || !s.proj_eq(&ksum) {
                    return Ok(false);
                }
                // every entry of B, not only the row used by the split
                let b = model.b_matrix(&kd, &ke)?;
                let n = model.n();
                let (x, y) = (&ksum.coords, &kdiff.coords);
                let want = (0..n).flat_map(|i| (0..n).map(move |j| x[i].times(&y[j]).plus(&x[j].times(&y[i]))));
                let got = KummerPoint::new(b.into_iter().flatten().collect());
                Ok(got.proj_eq(&KummerPoint::new(want.collect())))
            })();
            let detail = format!("{ok:?}");
            tc.record(ok.unwrap_or(false), || format!("p = {p}, f = {:?}: pseudo-addition mismatch ({detail})", curve.f_int));
        }
        check_builtin(pack, &curve, &jac, &model, &d, &kd, &mut rng, &mut td);
    }
    if pack.genus == 3 && trials > 0 && has_xi {
        check_minors(pack, seed, &mut te);
    }
    let n = |t: &Tally| t.runs > 0;
    let checks = vec![
        { let a = n(&ta); ta.finish('a', "kappa images satisfy the defining equations", a) },
        { let a = trials > 0; tb.finish('b', "doubling commutes with kappa", a) },
        { let a = n(&tc); tc.finish('c', "pseudo-addition agrees with the group law", a) },
        { let a = n(&td); td.finish('d', "agreement with built-in coordinates", a) },
        { let a = n(&te); te.finish('e', "lift-check matrix against enumeration", a) },
    ];
    ValidationReport { checksum: pack_checksum(pack), genus: pack.genus, trials, checks, warnings }
}

/// Check (d) for one curve.
#[allow(clippy::too_many_arguments)]
fn check_builtin(
    pack: &FormulaPack,
    curve: &HyperellipticCurveQ,
    jac: &JacobianFp,
    model: &KummerModel,
    d: &JacElem,
    kd: &KummerPoint<Fp>,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
) {
    let p = jac.p;
    let f: Vec<Rat> = curve.f_int.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let fp = fp_coeffs(&f, p);
    match pack.genus {
        1 => {
            let Ok(builtin) = elliptic_model(&crate::arith::Poly::from_rats(f.clone())) else { return };
            let same = builtin.delta == model.delta && builtin.bqf == model.bqf && builtin.identity == model.identity;
            tally.record(same, || format!("f = {:?}: tables differ from the built-in x-line", curve.f_int));
            if let Some(m) = original_mumford(jac, d) {
                let x = Fp::new(p - m[0] % p, p);
                let lc = fp[3];
                let want = KummerPoint::new(vec![lc.times(&x), lc.one_like()]);
                tally.record(want.proj_eq(kd), || format!("p = {p}: κ̃ of a point differs from (lc·x : 1)"));
            }
        }
        2 => {
            if let Some(m) = original_mumford(jac, d) {
                let v: Vec<Fp> = m.iter().map(|&x| Fp::new(x, p)).collect();
                let want = kappa_mumford(&fp, [&v[0], &v[1]], [&v[2], &v[3]]);
                if !want.is_zero_vector() {
                    tally.record(want.proj_eq(kd), || format!("p = {p}, f = {:?}: κ̃ = {} but coordinates give {}", curve.f_int, show(kd), show(&want)));
                }
            }
        }
        3 => {
            if let Some((cls, p1, p2)) = degree_two_class(jac, &fp, rng) {
                let want = kappa_degree2(&fp, &p1, &p2);
                let got = kappa_fp(model, jac, &cls);
                let ok = matches!((&want, &got), (Ok(w), Ok(g)) if w.proj_eq(g));
                tally.record(ok, || format!("p = {p}, f = {:?}: degree-2 formula mismatch", curve.f_int));
            }
        }
        _ => {}
    }
}

/// [P₁ + P₂ − D∞] for two random affine points with distinct x, where D∞
/// is the polar divisor of x, together with the points on y² = f(x).
fn degree_two_class(jac: &JacobianFp, fp: &[Fp], rng: &mut ChaCha8Rng) -> Option<(JacElem, CurvePt<Fp>, CurvePt<Fp>)> {
    let p = jac.p;
    let fpoly = FpPoly::new(fp.iter().map(|c| c.v).collect(), p);
    let pts: Vec<(u64, u64)> = (0..p)
        .filter_map(|x| {
            let y2 = fpoly.eval(x);
            (y2 != 0 && is_square_mod(y2, p)).then(|| (x, sqrt_mod(y2, p).unwrap()))
        })
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let i = rng.gen_range(0..pts.len());
    let mut j = rng.gen_range(0..pts.len() - 1);
    if j >= i {
        j += 1;
    }
    let mut flip = |y: u64| if rng.gen_bool(0.5) { (p - y) % p } else { y };
    let (x1, y1) = (pts[i].0, flip(pts[i].1));
    let (x2, y2) = (pts[j].0, flip(pts[j].1));
    let cls = |x: u64, y: u64| match jac.kind {
        ModelType::Imaginary => {
            let c = jac.change.c;
            let cg = crate::arith::fp::pow_mod(c, jac.genus as u64, p);
            jac.point_class(crate::arith::fp::mul_mod(c, x, p), crate::arith::fp::mul_mod(cg, y, p))
        }
        ModelType::Real => {
            let inv = crate::arith::fp::inv_mod(jac.change.sqrt_c.unwrap(), p).unwrap();
            jac.point_class(x, crate::arith::fp::mul_mod(y, inv, p))
        }
    };
    let mut sum = jac.add(&cls(x1, y1), &cls(x2, y2));
    if jac.kind == ModelType::Real {
        // point classes are P − ∞₊; add ∞₊ − ∞₋
        let g = jac.genus as i64;
        let shift = JacElem { u: FpPoly::one(p), v: FpPoly::zero(p), n: g };
        sum = jac.add(&sum, &shift);
    }
    let pt = |x: u64, y: u64| CurvePt::Affine { x: Fp::new(x, p), y: Fp::new(y, p) };
    Some((sum, pt(x1, y1), pt(x2, y2)))
}

/// Check (e): over F₅, a point of K with ξ₁ ≠ 0 passes the minors test
/// exactly when it lies in κ̃(J(F₅)).
fn check_minors(pack: &FormulaPack, seed: u64, tally: &mut Tally) {
    let p = 5u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d69_6e6f_7273);
    let (curve, jac) = random_curve(3, p, &mut rng);
    let f: Vec<Rat> = curve.f_int.iter().map(|c| Rat::from_integer(c.clone())).collect();
    let Ok(model) = specialize(pack, &f) else {
        tally.fail("specialisation failed".into());
        return;
    };
    let ModelKind::Pack(data) = &model.kind else { return };
    let Some(minors) = &data.minors else { return };
    if model.equations.is_empty() {
        return;
    }
    let order = jacobian_order(&jac.curve);
    let order_u = order.to_string().parse::<usize>().unwrap_or(usize::MAX);
    let mut elems: HashSet<JacElem> = HashSet::new();
    elems.insert(jac.zero());
    let mut guard = 0;
    while elems.len() < order_u && guard < 10_000 {
        guard += 1;
        let r = jac.random(&mut rng);
        let mut add = Vec::new();
        for s in &elems {
            let mut x = jac.add(s, &r);
            while !elems.contains(&x) && !add.contains(&x) {
                add.push(x.clone());
                x = jac.add(&x, &r);
            }
        }
        elems.extend(add);
    }
    let mut image: HashSet<Vec<u64>> = HashSet::new();
    for e in &elems {
        match kappa_fp(&model, &jac, e) {
            Ok(k) => {
                let k = k.normalized().unwrap();
                image.insert(k.coords.iter().map(|c| c.v).collect());
            }
            Err(err) => {
                tally.fail(format!("κ̃ failed during enumeration: {err}"));
                return;
            }
        }
    }
    let is_sq = |x: &Fp| x.v == 0 || is_square_mod(x.v, p);
    let one = Fp::new(1, p);
    let total = p.pow(7);
    for idx in 0..total {
        let mut coords = vec![one];
        let mut r = idx;
        for _ in 0..7 {
            coords.push(Fp::new(r % p, p));
            r /= p;
        }
        let pt = KummerPoint::new(coords);
        if !model.on_model(&pt).unwrap_or(false) {
            continue;
        }
        let Some(m) = minors.iter().map(|e| e.eval(&pt.coords[..7])).collect::<Option<Vec<Fp>>>() else {
            tally.fail("minor entries not defined mod 5".into());
            return;
        };
        let says = minors_3x3(&m).iter().all(is_sq);
        let key: Vec<u64> = pt.coords.iter().map(|c| c.v).collect();
        let truth = image.contains(&key);
        tally.record(says == truth, || format!("point {key:?}: minors say {says}, enumeration says {truth}"));
    }
}

/// Validate unless the checksum is trusted; returns the report if one was run.
pub fn ensure_valid(
    pack: &FormulaPack,
    cache: Option<&super::cache::TrustedCache>,
    trials: usize,
    seed: u64,
) -> Result<Option<ValidationReport>> {
    if cache.is_some_and(|c| c.contains(&pack_checksum(pack))) {
        return Ok(None);
    }
    let report = validate_pack(pack, trials, seed);
    if !report.passed() {
        let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| format!("({}) {}", c.id, c.name)).collect();
        return Err(Error::PackValidation(failed.join(", ")));
    }
    Ok(Some(report))
}
