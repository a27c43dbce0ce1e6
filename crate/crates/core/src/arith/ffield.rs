//! Finite fields F_{p^k} as F_p[t]/(m(t)) for small k.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fp::{add_mod, inv_mod, legendre, mul_mod, sub_mod, FpPoly};
use super::ring::RingElem;
use super::Int;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqField {
    pub p: u64,
    pub k: usize,
    /// Monic irreducible modulus, low to high, length k+1.
    pub modulus: Vec<u64>,
}

impl FqField {
    /// Builds F_{p^k}, finding an irreducible modulus by seeded random search.
    pub fn new(p: u64, k: usize) -> Arc<FqField> {
        assert!(k >= 1);
        let mut rng = ChaCha8Rng::seed_from_u64(p * 31 + k as u64);
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            loop {
                let f = FpPoly::random_monic(k, p, &mut rng);
                if f.is_irreducible() {
                    break f.c;
                }
            }
        };
        Arc::new(FqField { p, k, modulus })
    }

    /// Builds F_{p^k} from an explicit modulus, checking irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<FqField>> {
        let f = FpPoly::new(modulus, p);
        if f.deg() < 1 || f.lc() != 1 || !f.is_irreducible() {
            return Err(Error::InvalidInput("modulus is not monic irreducible".into()));
        }
        Ok(Arc::new(FqField { p, k: f.deg() as usize, modulus: f.c }))
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    /// Multiply two raw coefficient vectors of length k.
    pub fn mul_raw(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let (p, k) = (self.p, self.k);
        let mut t = [0u64; 16];
        debug_assert!(2 * k - 1 <= 16);
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                t[i + j] = (t[i + j] + a[i] * b[j] % p) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = t[d];
            if c != 0 {
                for i in 0..k {
                    t[d - k + i] = sub_mod(t[d - k + i], c * self.modulus[i] % p, p);
                }
            }
        }
        out[..k].copy_from_slice(&t[..k]);
    }

    /// Norm to F_p, as the determinant of multiplication by `a`.
    pub fn norm_raw(&self, a: &[u64]) -> u64 {
        let (p, k) = (self.p, self.k);
        match k {
            1 => a[0] % p,
            2 => {
                let (m0, m1) = (self.modulus[0], self.modulus[1]);
                let t = a[0] * a[0] % p + p - a[0] * a[1] % p * m1 % p + a[1] * a[1] % p * m0 % p;
                t % p
            }
            3 => {
                let t = [0u64, 1, 0];
                let mut c1 = [0u64; 3];
                let mut c2 = [0u64; 3];
                self.mul_raw(a, &t, &mut c1);
                self.mul_raw(&c1, &t, &mut c2);
                let m = |r: usize, c: usize| match c {
                    0 => a[r],
                    1 => c1[r],
                    _ => c2[r],
                };
                let minor = |r1: usize, r2: usize, c1_: usize, c2_: usize| {
                    (m(r1, c1_) * m(r2, c2_) % p + p - m(r1, c2_) * m(r2, c1_) % p) % p
                };
                let d = m(0, 0) * minor(1, 2, 1, 2) % p + p - m(0, 1) * minor(1, 2, 0, 2) % p + m(0, 2) * minor(1, 2, 0, 1) % p;
                d % p
            }
            _ => {
                let mut m = vec![vec![0u64; k]; k];
                let mut col = a[..k].to_vec();
                let mut basis = vec![0u64; k];
                basis[1] = 1;
                for j in 0..k {
                    for i in 0..k {
                        m[i][j] = col[i];
                    }
                    let prev = col.clone();
                    self.mul_raw(&prev, &basis, &mut col);
                }
                det_mod(m, p)
            }
        }
    }

    /// Quadratic character on F_{p^k}: 1, -1 or 0.
    pub fn chi_raw(&self, a: &[u64]) -> i32 {
        let n = self.norm_raw(a);
        if n == 0 {
            0
        } else if legendre(n, self.p) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn elem(self: &Arc<Self>, c: Vec<u64>) -> FqElem {
        let mut c = c;
        c.resize(self.k, 0);
        for x in c.iter_mut() {
            *x %= self.p;
        }
        FqElem { c, f: self.clone() }
    }
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let piv = match (col..n).find(|&r| m[r][col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if piv != col {
            m.swap(piv, col);
            det = sub_mod(0, det, p);
        }
        det = mul_mod(det, m[col][col], p);
        let inv = inv_mod(m[col][col], p).unwrap();
        for r in col + 1..n {
            let fac = mul_mod(m[r][col], inv, p);
            if fac != 0 {
                for c in col..n {
                    m[r][c] = sub_mod(m[r][c], mul_mod(fac, m[col][c], p), p);
                }
            }
        }
    }
    det
}

/// Element of F_{p^k}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqElem {
    pub c: Vec<u64>,
    pub f: Arc<FqField>,
}

impl RingElem for FqElem {
    fn zero_like(&self) -> Self {
        FqElem { c: vec![0; self.f.k], f: self.f.clone() }
    }
    fn one_like(&self) -> Self {
        let mut c = vec![0; self.f.k];
        c[0] = 1;
        FqElem { c, f: self.f.clone() }
    }
    fn from_int_like(&self, n: &Int) -> Self {
        let mut c = vec![0; self.f.k];
        c[0] = super::fp::int_mod_u64(n, self.f.p);
        FqElem { c, f: self.f.clone() }
    }
    fn plus(&self, o: &Self) -> Self {
        let p = self.f.p;
        FqElem { c: self.c.iter().zip(&o.c).map(|(&a, &b)| add_mod(a, b, p)).collect(), f: self.f.clone() }
    }
    fn minus(&self, o: &Self) -> Self {
        let p = self.f.p;
        FqElem { c: self.c.iter().zip(&o.c).map(|(&a, &b)| sub_mod(a, b, p)).collect(), f: self.f.clone() }
    }
    fn times(&self, o: &Self) -> Self {
        let mut c = vec![0; self.f.k];
        self.f.mul_raw(&self.c, &o.c, &mut c);
        FqElem { c, f: self.f.clone() }
    }
    fn negate(&self) -> Self {
        let p = self.f.p;
        FqElem { c: self.c.iter().map(|&a| sub_mod(0, a, p)).collect(), f: self.f.clone() }
    }
    fn is_zero_elem(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        let p = self.f.p;
        let a = FpPoly::new(self.c.clone(), p);
        let m = FpPoly::new(self.f.modulus.clone(), p);
        let (g, s, _) = a.xgcd(&m);
        debug_assert_eq!(g.deg(), 0);
        let mut c = s.rem(&m).c;
        c.resize(self.f.k, 0);
        Some(FqElem { c, f: self.f.clone() })
    }
}
