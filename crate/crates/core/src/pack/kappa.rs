//! κ̃ : J(F_p) → K(F_p) for a pack model, from Mumford coordinates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::fp::{inv_mod, mul_mod, pow_mod};
use crate::arith::Fp;
use crate::error::{Error, Result};
use crate::jacobian::{JacElem, JacobianFp, ModelType};
use crate::kummer::{KummerModel, KummerPoint, ModelKind};

/// (u₀..u_{g−1}, v₀..v_{g−1}) on y² = f(x) for a class div(u, v) − D_∞
/// with deg u = g; `None` for other classes.
pub fn original_mumford(jac: &JacobianFp, e: &JacElem) -> Option<Vec<u64>> {
    let g = jac.genus;
    if e.u.deg() != g as isize || jac.change.x0.is_some() {
        return None;
    }
    let p = jac.p;
    let mut out = Vec::with_capacity(2 * g);
    match jac.kind {
        ModelType::Imaginary => {
            // X = c·x, Y = c^g·y: coefficient i of u(c·x)/c^g and v(c·x)/c^g
            let c = jac.change.c;
            let cinv = inv_mod(c, p)?;
            for i in 0..g {
                out.push(mul_mod(e.u.coeff(i), pow_mod(cinv, (g - i) as u64, p), p));
            }
            for i in 0..g {
                out.push(mul_mod(e.v.coeff(i), pow_mod(cinv, (g - i) as u64, p), p));
            }
        }
        ModelType::Real => {
            let s = jac.change.sqrt_c?;
            for i in 0..g {
                out.push(e.u.coeff(i));
            }
            for i in 0..g {
                out.push(mul_mod(e.v.coeff(i), s, p));
            }
        }
    }
    Some(out)
}

fn xi_generic(model: &KummerModel, jac: &JacobianFp, e: &JacElem) -> Result<Option<KummerPoint<Fp>>> {
    let ModelKind::Pack(data) = &model.kind else {
        return Err(Error::UnsupportedModel("not a pack model".into()));
    };
    let xi = data.xi.as_ref().ok_or_else(|| Error::MissingPack("xi table".into()))?;
    let Some(m) = original_mumford(jac, e) else { return Ok(None) };
    let vals: Vec<Fp> = m.iter().map(|&x| Fp::new(x, jac.p)).collect();
    let coords = xi
        .iter()
        .map(|t| t.eval(&vals))
        .collect::<Option<Vec<Fp>>>()
        .ok_or_else(|| Error::InvalidInput("xi coefficient not defined mod p".into()))?;
    let k = KummerPoint::new(coords);
    Ok((!k.is_zero_vector()).then_some(k))
}

/// κ̃(e). Classes outside the domain of the xi table are reached through
/// κ(D) = B-split of κ(D + E), κ(E), κ(D + 2E) for a random auxiliary E.
pub fn kappa_fp(model: &KummerModel, jac: &JacobianFp, e: &JacElem) -> Result<KummerPoint<Fp>> {
    if jac.change.x0.is_some() {
        return Err(Error::UnsupportedModel("pack coordinates need the original x-coordinate".into()));
    }
    let sample = Fp::new(0, jac.p);
    if jac.is_zero(e) {
        return Ok(model.identity_like(&sample));
    }
    if let Some(k) = xi_generic(model, jac, e)? {
        return Ok(k);
    }
    if model.bqf.is_none() {
        return Err(Error::NeedBQF);
    }
    let mut seed = jac.p;
    for &c in e.u.c.iter().chain(&e.v.c) {
        seed = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(c);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ e.n as u64);
    for _ in 0..200 {
        let aux = jac.random(&mut rng);
        let de = jac.add(e, &aux);
        let d2e = jac.add(&de, &aux);
        let (Some(ka), Some(kde), Some(kd2e)) =
            (xi_generic(model, jac, &aux)?, xi_generic(model, jac, &de)?, xi_generic(model, jac, &d2e)?)
        else {
            continue;
        };
        let k = model.pseudo_add(&kde, &ka, &kd2e)?;
        if !k.is_zero_vector() {
            return Ok(k.normalized().unwrap_or(k));
        }
    }
    Err(Error::NotGeneralPosition)
}
