use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::kummer::packmodel::PackData;
use crate::kummer::{KummerModel, MPoly, ModelKind};

use super::format::{pack_checksum, Coeff, FormulaPack, PackTable, TableKind};

fn eval_coeff(c: &Coeff, f: &[Rat]) -> Rat {
    match c {
        Coeff::Const(r) => r.clone(),
        Coeff::Poly(terms) => {
            let mut acc = Rat::zero();
            for (c, e) in terms {
                let mut t = c.clone();
                for (fi, &k) in f.iter().zip(e) {
                    for _ in 0..k {
                        t *= fi;
                    }
                }
                acc += t;
            }
            acc
        }
    }
}

fn specialize_table(t: &PackTable, f: &[Rat]) -> Vec<MPoly> {
    t.polys
        .iter()
        .map(|p| MPoly::new(t.vars, p.terms.iter().map(|term| (eval_coeff(&term.coeff, f), term.exps.clone())).collect()))
        .collect()
}

/// Coefficients f₀..f_{2g+2}, padded with zeros.
pub fn padded_coefficients(pack: &FormulaPack, f: &[Rat]) -> Result<Vec<Rat>> {
    if f.len() > pack.n_coeffs() {
        return Err(Error::InvalidInput(format!("curve of degree {} does not fit a genus-{} pack", f.len() - 1, pack.genus)));
    }
    let mut v = f.to_vec();
    v.resize(pack.n_coeffs(), Rat::zero());
    Ok(v)
}

/// The Kummer model of y² = f(x) obtained by substituting f into the pack.
pub fn specialize(pack: &FormulaPack, f: &[Rat]) -> Result<KummerModel> {
    let f = padded_coefficients(pack, f)?;
    let get = |k: TableKind| pack.table(k).map(|t| specialize_table(t, &f));
    let delta = get(TableKind::Delta).ok_or_else(|| Error::MissingPack("delta table".into()))?;
    if delta.iter().all(MPoly::is_zero) {
        return Err(Error::PackValidation("doubling map vanishes identically on this curve".into()));
    }
    let data = PackData { f: f.clone(), xi: get(TableKind::Xi), minors: get(TableKind::Minors), checksum: pack_checksum(pack) };
    Ok(KummerModel {
        genus: pack.genus,
        delta,
        bqf: get(TableKind::Bqf),
        equations: get(TableKind::Equations).unwrap_or_default(),
        identity: pack.identity.clone(),
        kind: ModelKind::Pack(Box::new(data)),
    })
}

/// The identity image, for packs written without an `identity` line.
pub fn default_identity(n: usize) -> Vec<Rat> {
    (0..n).map(|i| if i + 1 == n { Rat::one() } else { Rat::zero() }).collect()
}
