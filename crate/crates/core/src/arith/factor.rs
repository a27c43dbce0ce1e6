//! Factorisation of univariate polynomials over ℚ and over ℚ(√d).
//!
//! Over ℚ: squarefree decomposition, factorisation modulo a good prime,
//! multifactor Hensel lifting and recombination by exact trial division.
//! Over ℚ(√d): Trager's norm method on top of the rational factorisation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fp::{int_mod_u64, FpPoly};
use super::poly::Poly;
use super::quad::QuadElem;
use super::ring::RingElem;
use super::sqrt::is_prime_u64;
use super::{Int, Rat};

type IntPoly = Vec<Int>;

/// Factor a nonzero polynomial over ℚ into monic irreducibles with
/// multiplicities. Constant input gives an empty list.
pub fn factor_over_q(f: &Poly<Rat>) -> Vec<(Poly<Rat>, usize)> {
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    for (g, m) in squarefree_q(f) {
        for h in factor_squarefree_int(&g.primitive_int()) {
            out.push((Poly::from_int_vec(&h).monic(), m));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| cmp_rat_vec(&a.0.c, &b.0.c)));
    out
}

fn cmp_rat_vec(a: &[Rat], b: &[Rat]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Yun's squarefree decomposition over ℚ; parts are monic.
pub fn squarefree_q(f: &Poly<Rat>) -> Vec<(Poly<Rat>, usize)> {
    let f = f.monic();
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.divrem(&a0).unwrap().0;
    let mut c = df.divrem(&a0).unwrap().0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.divrem(&a).unwrap().0;
        if b.deg() < 1 {
            break;
        }
        c = d.divrem(&a).unwrap().0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn trim(v: &mut IntPoly) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn ip_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn ip_mod(a: &IntPoly, m: &Int) -> IntPoly {
    let mut v: IntPoly = a.iter().map(|x| x.mod_floor(m)).collect();
    trim(&mut v);
    v
}

fn ip_from_fp(a: &FpPoly) -> IntPoly {
    a.c.iter().map(|&x| BigInt::from(x)).collect()
}

fn fp_from_ip(a: &IntPoly, p: u64) -> FpPoly {
    FpPoly::new(a.iter().map(|x| int_mod_u64(x, p)).collect(), p)
}

/// Exact division in ℤ[x]; `None` unless `b` divides `a`.
fn ip_divide(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let pa = Poly::from_int_vec(a);
    let pb = Poly::from_int_vec(b);
    let (q, r) = pa.divrem(&pb)?;
    if !r.is_zero() || q.c.iter().any(|x| !x.is_integer()) {
        return None;
    }
    Some(q.c.iter().map(|x| x.to_integer()).collect())
}

fn primitive(v: &IntPoly) -> IntPoly {
    let mut g = Int::zero();
    for a in v {
        g = g.gcd(a);
    }
    if v.last().is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    v.iter().map(|a| a / &g).collect()
}

/// Given f ≡ g·h (mod p) with g monic and s·g + t·h ≡ 1 (mod p), lift to
/// f ≡ G·H (mod p^k) with G monic.
fn hensel_pair(f: &IntPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = g.xgcd(h);
    debug_assert_eq!(one, FpPoly::one(p));
    let pb = BigInt::from(p);
    let mut gg = ip_from_fp(g);
    let mut hh = ip_from_fp(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = ip_mul(&gg, &hh);
        let n = f.len().max(prod.len());
        let mut e: IntPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b) / &pj
            })
            .collect();
        trim(&mut e);
        let ep = fp_from_ip(&e, p);
        if !ep.is_zero() {
            let (q, r) = ep.mul(&t).divrem(g);
            let dh = ep.mul(&s).add(&q.mul(h));
            for (i, c) in r.c.iter().enumerate() {
                gg[i] += &pj * BigInt::from(*c);
            }
            if hh.len() < dh.c.len() {
                hh.resize(dh.c.len(), Int::zero());
            }
            for (i, c) in dh.c.iter().enumerate() {
                hh[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
    }
    (ip_mod(&gg, &pj), ip_mod(&hh, &pj))
}

/// Lift a factorisation f ≡ lc(f)·∏ fac_i (mod p), fac_i monic, to p^k.
fn hensel_multi(f: &IntPoly, facs: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(p).pow(k);
    if facs.len() == 1 {
        let lc = f.last().unwrap();
        let inv = lc.extended_gcd(&pk).x;
        return vec![ip_mod(&f.iter().map(|c| c * &inv).collect(), &pk)];
    }
    let mid = facs.len() / 2;
    let mut g = FpPoly::one(p);
    for x in &facs[..mid] {
        g = g.mul(x);
    }
    let mut h = FpPoly::constant(int_mod_u64(f.last().unwrap(), p), p);
    for x in &facs[mid..] {
        h = h.mul(x);
    }
    let (gg, hh) = hensel_pair(f, &g, &h, p, k);
    let mut out = hensel_multi(&gg, &facs[..mid], p, k);
    out.extend(hensel_multi(&hh, &facs[mid..], p, k));
    out
}

fn centered(v: &IntPoly, m: &Int) -> IntPoly {
    let half: Int = m / 2u32;
    let mut out: IntPoly = v
        .iter()
        .map(|x| {
            let r = x.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Factor a squarefree primitive integer polynomial into primitive
/// irreducible integer polynomials.
pub fn factor_squarefree_int(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.len() as isize - 1;
    if n < 1 {
        return vec![];
    }
    if n == 1 {
        return vec![primitive(f)];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // A zero constant term is handled up front to keep the search for good
    // primes simple.
    if f[0].is_zero() {
        let mut rest = f[1..].to_vec();
        trim(&mut rest);
        let mut out = vec![vec![Int::zero(), Int::one()]];
        out.extend(factor_squarefree_int(&rest));
        return out;
    }
    let lc = f.last().unwrap().clone();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < 6 {
        p += 2;
        if !is_prime_u64(p) || int_mod_u64(&lc, p) == 0 {
            continue;
        }
        let fp = fp_from_ip(f, p);
        if fp.gcd(&fp.derivative()).deg() != 0 {
            continue;
        }
        tried += 1;
        let facs: Vec<FpPoly> = fp.factor(&mut rng).into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, facs) = best.unwrap();
    if facs.len() == 1 {
        return vec![primitive(f)];
    }
    let norm2: Int = f.iter().map(|c| c * c).sum::<Int>().sqrt() + 1u32;
    let bound: Int = BigInt::from(2u32) * lc.abs() * (BigInt::one() << (n as usize)) * norm2;
    let mut k = 1u32;
    let pb = BigInt::from(p);
    while pb.pow(k) <= bound {
        k += 1;
    }
    let pk = pb.pow(k);
    let mut lifted = hensel_multi(f, &facs, p, k);
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for comb in combinations(lifted.len(), s) {
            let lcur = cur.last().unwrap().clone();
            let mut g: IntPoly = vec![lcur];
            for &i in &comb {
                g = ip_mod(&ip_mul(&g, &lifted[i]), &pk);
            }
            let g = primitive(&centered(&g, &pk));
            if let Some(q) = ip_divide(&cur, &g) {
                found = Some((comb, g, q));
                break;
            }
        }
        match found {
            Some((comb, g, q)) => {
                out.push(g);
                cur = q;
                for &i in comb.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if cur.len() > 1 {
        out.push(primitive(&cur));
    }
    out
}

/// Factor over ℚ(√d) into monic irreducibles with multiplicities.
pub fn factor_over_quad(f: &Poly<Rat>, d: &Int) -> Vec<(Poly<QuadElem>, usize)> {
    let mut out = Vec::new();
    for (g, m) in factor_over_q(f) {
        for h in split_over_quad(&g, d) {
            out.push((h, m));
        }
    }
    out
}

pub fn to_quad(f: &Poly<Rat>, d: &Int) -> Poly<QuadElem> {
    let zero = QuadElem::from_rat(Rat::zero(), d);
    f.map(&zero, |a| QuadElem::from_rat(a.clone(), d))
}

/// Split a monic ℚ-irreducible polynomial over ℚ(√d).
fn split_over_quad(g: &Poly<Rat>, d: &Int) -> Vec<Poly<QuadElem>> {
    let gq = to_quad(g, d);
    if g.deg() == 1 {
        return vec![gq];
    }
    let sample = QuadElem::from_rat(Rat::zero(), d);
    for s in [0i64, 1, -1, 2, -2, 3, -3, 4, 5, 7] {
        let shift = QuadElem::new(Rat::zero(), Rat::from_integer(s.into()), d);
        let minus = Poly::new(vec![shift.negate(), sample.one_like()], &sample);
        let plus = Poly::new(vec![shift.clone(), sample.one_like()], &sample);
        let norm = gq.compose(&minus).mul(&gq.compose(&plus));
        let norm_q = Poly::from_rats(norm.c.iter().map(|c| c.a.clone()).collect());
        debug_assert!(norm.c.iter().all(|c| c.is_rational()));
        if norm_q.gcd(&norm_q.derivative()).deg() != 0 {
            continue;
        }
        let facs = factor_over_q(&norm_q);
        if facs.len() == 1 {
            return vec![gq];
        }
        let mut out: Vec<Poly<QuadElem>> = facs
            .iter()
            .map(|(nj, _)| gq.gcd(&to_quad(nj, d).compose(&plus)))
            .filter(|h| h.deg() > 0)
            .collect();
        out.sort_by(|a, b| format!("{:?}", a.c).cmp(&format!("{:?}", b.c)));
        return out;
    }
    vec![gq]
}

/// Expand a list of factors back into a single polynomial.
pub fn expand<R: RingElem>(facs: &[(Poly<R>, usize)], sample: &R) -> Poly<R> {
    let mut acc = Poly::one(sample);
    for (g, m) in facs {
        for _ in 0..*m {
            acc = acc.mul(g);
        }
    }
    acc
}

/// Integer value of a rational known to be integral.
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let f = Poly::from_ints(&[-1, 0, 1]);
        let fac = factor_over_q(&f);
        assert_eq!(fac.len(), 2);
        assert_eq!(expand(&fac, &Rat::zero()), f);
    }

    #[test]
    fn x7_minus_x() {
        let f = Poly::from_ints(&[0, -1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_over_q(&f);
        let degs: Vec<isize> = fac.iter().map(|(g, _)| g.deg()).collect();
        assert_eq!(degs, vec![1, 1, 1, 2, 2]);
        assert_eq!(expand(&fac, &Rat::zero()), f);
    }

    #[test]
    fn swinnerton_dyer_like_input() {
        // (x^4 - 10x^2 + 1) is irreducible over ℚ but splits modulo every prime.
        let f = Poly::from_ints(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_over_q(&f).len(), 1);
    }

    #[test]
    fn repeated_factors() {
        let a = Poly::from_ints(&[1, 1]);
        let b = Poly::from_ints(&[2, 0, 1]);
        let f = a.mul(&a).mul(&a).mul(&b).mul(&b).scale(&Rat::from_integer(6.into()));
        let fac = factor_over_q(&f);
        assert_eq!(fac, vec![(a, 3), (b, 2)]);
    }

    #[test]
    fn x4_plus_1_over_sqrt2() {
        let f = Poly::from_ints(&[1, 0, 0, 0, 1]);
        let d = BigInt::from(2);
        let fac = factor_over_quad(&f, &d);
        assert_eq!(fac.len(), 2);
        let sample = QuadElem::from_rat(Rat::zero(), &d);
        assert_eq!(expand(&fac, &sample), to_quad(&f, &d));
        for (g, _) in &fac {
            assert_eq!(g.deg(), 2);
            assert!(g.c[0].is_rational());
        }
    }
}
