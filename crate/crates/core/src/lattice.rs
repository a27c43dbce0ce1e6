//! Exact integral LLL and recognition of rational projective points from
//! p-adic approximations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat, RingElem, Zmod};
use crate::error::{Error, Result};

/// A lattice given by a basis of integer row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub basis: Vec<Vec<Int>>,
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to n/d for d > 0, ties rounded up.
fn round_div(n: &Int, d: &Int) -> Int {
    (n * 2u32 + d).div_floor(&(d * 2u32))
}

/// LLL reduction with δ = 3/4 in exact integer arithmetic (Cohen, Alg. 2.6.7).
pub fn lll_reduce(lat: &Lattice) -> Result<Lattice> {
    let mut b = lat.basis.clone();
    let n = b.len();
    if n == 0 {
        return Ok(lat.clone());
    }
    let dim = b[0].len();
    if b.iter().any(|v| v.len() != dim) {
        return Err(Error::InvalidInput("basis vectors of unequal length".into()));
    }
    // d[i+1] is the Gram determinant of the first i+1 vectors; d[0] = 1.
    let mut d = vec![Int::zero(); n + 1];
    let mut lam = vec![vec![Int::zero(); n]; n];
    d[0] = Int::one();
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return Err(Error::DependentBasis);
    }
    if n == 1 {
        return Ok(lat.clone());
    }
    let mut k = 1usize;
    let mut kmax = 0usize;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DependentBasis);
                    }
                    d[k + 1] = u;
                }
            }
        }
        loop {
            redi(&mut b, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(4) * &d[k + 1] * &d[k - 1];
            let rhs = BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs < rhs {
                swapi(&mut b, &mut lam, &mut d, k, kmax);
                k = (k - 1).max(1);
            } else {
                for l in (0..k.saturating_sub(1)).rev() {
                    redi(&mut b, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    Ok(Lattice { basis: b })
}

fn redi(b: &mut [Vec<Int>], lam: &mut [Vec<Int>], d: &[Int], k: usize, l: usize) {
    let dl = &d[l + 1];
    if (&lam[k][l] * 2u32).abs() <= *dl {
        return;
    }
    let q = round_div(&lam[k][l], dl);
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * dl;
    for i in 0..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swapi(b: &mut [Vec<Int>], lam: &mut [Vec<Int>], d: &mut [Int], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = bb;
}

/// Checks the size-reduction and Lovász conditions with exact rational
/// Gram–Schmidt, independently of [`lll_reduce`].
pub fn is_lll_reduced(lat: &Lattice) -> bool {
    let b = &lat.basis;
    let n = b.len();
    let to_rat = |v: &Vec<Int>| v.iter().map(|x| Rat::from_integer(x.clone())).collect::<Vec<Rat>>();
    let rdot = |a: &[Rat], c: &[Rat]| a.iter().zip(c).map(|(x, y)| x * y).sum::<Rat>();
    let mut bs: Vec<Vec<Rat>> = Vec::new();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut norms = Vec::new();
    for i in 0..n {
        let mut v = to_rat(&b[i]);
        let bi = v.clone();
        for j in 0..i {
            mu[i][j] = rdot(&bi, &bs[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&bs[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        let nn = rdot(&v, &v);
        if nn.is_zero() {
            return false;
        }
        norms.push(nn);
        bs.push(v);
    }
    let half = Rat::new(1.into(), 2.into());
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return false;
            }
        }
    }
    let delta = Rat::new(3.into(), 4.into());
    for k in 1..n {
        if norms[k].clone() < (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1] {
            return false;
        }
    }
    true
}

/// Lattice of integer vectors congruent modulo the coordinate modulus to a
/// multiple of `coords`. Coordinates are first rescaled so that the first
/// unit coordinate becomes 1; the basis is that vector together with
/// `m·eᵢ` for the remaining indices.
pub fn build_lift_lattice(coords: &[Zmod]) -> Result<Lattice> {
    let (k, scaled) = normalize_on_unit(coords)?;
    let m = coords[0].modulus().clone();
    let n = coords.len();
    let mut basis = vec![scaled.iter().map(|z| z.v.clone()).collect::<Vec<Int>>()];
    for i in (0..n).filter(|&i| i != k) {
        let mut e = vec![Int::zero(); n];
        e[i] = m.clone();
        basis.push(e);
    }
    Ok(Lattice { basis })
}

/// Index of the first unit coordinate and the coordinates scaled to make it 1.
pub fn normalize_on_unit(coords: &[Zmod]) -> Result<(usize, Vec<Zmod>)> {
    if coords.is_empty() || coords.iter().all(|c| c.is_zero_elem()) {
        return Err(Error::InvalidInput("all coordinates are zero".into()));
    }
    let k = coords
        .iter()
        .position(|c| c.is_unit())
        .ok_or_else(|| Error::InvalidInput("no unit coordinate".into()))?;
    let inv = coords[k].try_inv().unwrap();
    Ok((k, coords.iter().map(|c| c.times(&inv)).collect()))
}

/// Primitive integer vector with first nonzero entry positive.
pub fn primitive_vector(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    v.iter().map(|x| x / &g).collect()
}

/// `2^(g + n)` with `n = 2^g` the number of coordinates.
pub fn precision_factor(n: usize) -> Int {
    let g = n.trailing_zeros() as usize;
    BigInt::one() << (g + n)
}

/// Whether `modulus > 2^(g+n) · ⌈bound⌉²`.
pub fn precision_suffices(modulus: &Int, n: usize, height_bound: &Rat) -> bool {
    let c = height_bound.ceil().to_integer();
    *modulus > precision_factor(n) * &c * &c
}

/// Recover the unique rational projective point of height at most
/// `height_bound` reducing to `coords`, if there is one.
pub fn recognize_rational_point(coords: &[Zmod], height_bound: &Rat) -> Result<Option<Vec<Int>>> {
    let m = coords
        .first()
        .ok_or_else(|| Error::InvalidInput("empty coordinates".into()))?
        .modulus()
        .clone();
    if !precision_suffices(&m, coords.len(), height_bound) {
        return Err(Error::PrecisionTooSmall);
    }
    recognize_candidate(coords, height_bound)
}

/// The lattice step without the precision requirement: a returned point is
/// correct if it passes independent verification, but `None` proves nothing.
pub fn recognize_candidate(coords: &[Zmod], height_bound: &Rat) -> Result<Option<Vec<Int>>> {
    let lat = build_lift_lattice(coords)?;
    let red = lll_reduce(&lat)?;
    let w = primitive_vector(&red.basis[0]);
    Ok(check_candidate(&w, coords, height_bound))
}

/// Accepts `w` if it is small enough and proportional to `coords`.
fn check_candidate(w: &[Int], coords: &[Zmod], height_bound: &Rat) -> Option<Vec<Int>> {
    let hb = height_bound.floor().to_integer();
    if w.iter().any(|x| x.abs() > hb) {
        return None;
    }
    let (k, scaled) = normalize_on_unit(coords).ok()?;
    let wk = coords[k].from_int_like(&w[k]);
    if !wk.is_unit() {
        return None;
    }
    for (x, r) in w.iter().zip(&scaled) {
        if coords[0].from_int_like(x) != r.times(&wk) {
            return None;
        }
    }
    Some(w.to_vec())
}

/// Naive height of an integer projective vector (after making it primitive).
pub fn naive_height(v: &[Int]) -> Int {
    primitive_vector(v).iter().map(|x| x.abs()).max().unwrap_or_default()
}
