use crate::arith::{Rat, RingElem};
use crate::error::{Error, Result};

use super::mpoly::MPoly;
use super::point::KummerPoint;

/// Which concrete family a [`KummerModel`] comes from, with the data its
/// lift check and coordinate maps need.
#[derive(Clone, Debug)]
pub enum ModelKind {
    /// x-line of y² = X³ + a2·X² + a4·X + a6, where X = lc·x for the curve
    /// y² = f(x) with leading coefficient lc.
    Elliptic { a2: Rat, a4: Rat, a6: Rat, lc: Rat },
    /// Specialisation of a formula pack to one curve.
    Pack(Box<super::packmodel::PackData>),
}

/// Explicit equations of a Kummer variety: doubling quartics, pseudo-addition
/// biquadratic forms, defining equations and the image of the origin.
#[derive(Clone, Debug)]
pub struct KummerModel {
    pub genus: usize,
    /// δ₁..δ_n, homogeneous quartics in n = 2^g variables.
    pub delta: Vec<MPoly>,
    /// B_ij for i ≤ j in row-major order, biquadratic in 2n variables.
    pub bqf: Option<Vec<MPoly>>,
    pub equations: Vec<MPoly>,
    pub identity: Vec<Rat>,
    pub kind: ModelKind,
}

/// Position of B_ij (i ≤ j) in the row-major upper-triangular list.
pub fn bqf_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl KummerModel {
    pub fn n(&self) -> usize {
        1 << self.genus
    }

    pub fn identity_like<R: RingElem>(&self, sample: &R) -> KummerPoint<R> {
        KummerPoint::new(self.identity.iter().map(|c| sample.from_rat_like(c).unwrap()).collect())
    }

    pub fn identity_point(&self) -> KummerPoint<Rat> {
        KummerPoint::new(self.identity.clone())
    }

    pub fn is_identity<R: RingElem>(&self, p: &KummerPoint<R>) -> bool {
        p.proj_eq(&self.identity_like(&p.coords[0]))
    }

    fn check_dim<R: RingElem>(&self, p: &KummerPoint<R>) -> Result<()> {
        if p.dim() != self.n() {
            return Err(Error::InvalidInput(format!("expected {} coordinates, got {}", self.n(), p.dim())));
        }
        Ok(())
    }

    fn coeff_err() -> Error {
        Error::InvalidInput("model coefficient not defined in this ring".into())
    }

    /// Whether all defining equations vanish at `p`.
    pub fn on_model<R: RingElem>(&self, p: &KummerPoint<R>) -> Result<bool> {
        self.check_dim(p)?;
        if p.is_zero_vector() {
            return Ok(false);
        }
        for e in &self.equations {
            if !e.eval(&p.coords).ok_or_else(Self::coeff_err)?.is_zero_elem() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// [[2]] on the Kummer.
    pub fn double<R: RingElem>(&self, p: &KummerPoint<R>) -> Result<KummerPoint<R>> {
        self.check_dim(p)?;
        let coords = self.delta.iter().map(|d| d.eval(&p.coords)).collect::<Option<Vec<R>>>().ok_or_else(Self::coeff_err)?;
        Ok(KummerPoint::new(coords))
    }

    /// The symmetric matrix B(p, q), with B_ij = s_i d_j + s_j d_i up to a
    /// common scalar, where {s, d} = {κ(P+Q), κ(P−Q)}.
    pub fn b_matrix<R: RingElem>(&self, p: &KummerPoint<R>, q: &KummerPoint<R>) -> Result<Vec<Vec<R>>> {
        let bqf = self.bqf.as_ref().ok_or(Error::NeedBQF)?;
        let n = self.n();
        let mut vals = p.coords.clone();
        vals.extend(q.coords.iter().cloned());
        let sample = &p.coords[0];
        let maxe = bqf.iter().map(|b| b.max_exponent()).max().unwrap_or(0);
        let pows: Vec<Vec<R>> = vals
            .iter()
            .map(|v| {
                let mut pw = vec![sample.one_like()];
                for i in 1..=maxe {
                    let next = pw[i - 1].times(v);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut m = vec![vec![sample.zero_like(); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = bqf[bqf_index(n, i, j)].eval_with_powers(&pows, sample).ok_or_else(Self::coeff_err)?;
                m[j][i] = v.clone();
                m[i][j] = v;
            }
        }
        Ok(m)
    }

    /// κ(P+Q) from κ(P), κ(Q) and κ(P−Q). The split of B uses the lowest
    /// unit coordinate of κ(P−Q); with no unit coordinate this reports
    /// [`Error::NeedPatchChange`].
    pub fn pseudo_add<R: RingElem>(&self, p: &KummerPoint<R>, q: &KummerPoint<R>, diff: &KummerPoint<R>) -> Result<KummerPoint<R>> {
        self.check_dim(p)?;
        self.check_dim(q)?;
        self.check_dim(diff)?;
        let k = diff.unit_index().ok_or(Error::NeedPatchChange)?;
        let b = self.b_matrix(p, q)?;
        let w = &diff.coords;
        let two_wk = w[k].plus(&w[k]);
        let coords = (0..self.n()).map(|i| two_wk.times(&b[i][k]).minus(&w[i].times(&b[k][k]))).collect();
        Ok(KummerPoint::new(coords))
    }

    /// [[|n|]](R) by the Montgomery-type ladder on the Kummer.
    pub fn ladder<R: RingElem>(&self, r: &KummerPoint<R>, n: i64) -> Result<KummerPoint<R>> {
        self.ladder_u(r, n.unsigned_abs())
    }

    pub fn ladder_u<R: RingElem>(&self, r: &KummerPoint<R>, n: u64) -> Result<KummerPoint<R>> {
        self.check_dim(r)?;
        let mut m = n;
        let mut x = self.identity_like(&r.coords[0]);
        if m == 0 {
            return Ok(x);
        }
        if m == 1 {
            return Ok(r.clone());
        }
        // x = κ(A), y = κ(C − A), z = κ(C), with n = A + m·C.
        let mut y = r.clone();
        let mut z = r.clone();
        loop {
            if m & 1 == 1 {
                x = normalize_if_possible(self.pseudo_add(&x, &z, &y)?);
            } else {
                y = normalize_if_possible(self.pseudo_add(&y, &z, &x)?);
            }
            m >>= 1;
            if m == 0 {
                break;
            }
            z = normalize_if_possible(self.double(&z)?);
        }
        Ok(x)
    }

    /// [[2^s]](R) by repeated doubling.
    pub fn double_n<R: RingElem>(&self, r: &KummerPoint<R>, s: u32) -> Result<KummerPoint<R>> {
        let mut x = r.clone();
        for _ in 0..s {
            x = normalize_if_possible(self.double(&x)?);
        }
        Ok(x)
    }
}

fn normalize_if_possible<R: RingElem>(p: KummerPoint<R>) -> KummerPoint<R> {
    p.normalized().unwrap_or(p)
}
