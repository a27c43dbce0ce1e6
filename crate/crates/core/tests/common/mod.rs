#![allow(dead_code)]

//! Brute-force torsion of y² = x³ + ax + b by Nagell–Lutz and the group law.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum Pt {
    O,
    A(Q, Q),
}

pub struct Ell {
    pub a: Q,
    pub b: Q,
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

impl Ell {
    pub fn new(a: i64, b: i64) -> Self {
        Ell { a: q(a), b: q(b) }
    }

    pub fn add(&self, p: &Pt, r: &Pt) -> Pt {
        match (p, r) {
            (Pt::O, x) | (x, Pt::O) => x.clone(),
            (Pt::A(x1, y1), Pt::A(x2, y2)) => {
                let l = if x1 == x2 {
                    if (y1 + y2).is_zero() {
                        return Pt::O;
                    }
                    (q(3) * x1 * x1 + &self.a) / (q(2) * y1)
                } else {
                    (y2 - y1) / (x2 - x1)
                };
                let x3 = &l * &l - x1 - x2;
                let y3 = &l * (x1 - &x3) - y1;
                Pt::A(x3, y3)
            }
        }
    }

    /// Order if at most 12, else None.
    pub fn order(&self, p: &Pt) -> Option<u32> {
        let mut acc = p.clone();
        for k in 1..=12 {
            if acc == Pt::O {
                return Some(k);
            }
            acc = self.add(&acc, p);
        }
        None
    }
}

fn isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n { Some(r) } else { None }
}

/// All points of E(ℚ)_tors, including O.
pub fn torsion_points(a: i64, b: i64) -> Vec<Pt> {
    let e = Ell::new(a, b);
    let disc = -(4 * a.pow(3) + 27 * b.pow(2));
    assert!(disc != 0);
    let bound = (4 * a.abs().max(b.abs()) + 2).max(((2.0 * disc.abs() as f64).cbrt()) as i64 + 2);
    let mut pts = vec![Pt::O];
    for x in -bound..=bound {
        let rhs = BigInt::from(x).pow(3) + BigInt::from(a) * x + b;
        let Some(y) = isqrt(&rhs) else { continue };
        let mut cands = vec![y.clone()];
        if !y.is_zero() {
            if !(BigInt::from(disc) % (&y * &y)).is_zero() {
                continue;
            }
            cands.push(-y);
        }
        for y in cands {
            let p = Pt::A(q(x), Q::from_integer(y));
            if e.order(&p).is_some() {
                pts.push(p);
            }
        }
    }
    pts
}

/// Invariant factors of E(ℚ)_tors.
pub fn brute_torsion(a: i64, b: i64) -> Vec<u32> {
    let e = Ell::new(a, b);
    let pts = torsion_points(a, b);
    let n = pts.len() as u32;
    let two = pts.iter().filter(|p| e.order(p).is_some_and(|o| o <= 2)).count();
    let mut out = if two == 4 { vec![2, n / 2] } else { vec![n] };
    out.retain(|&d| d != 1);
    out
}

pub fn sample_curves(count: usize, seed: u64) -> Vec<(i64, i64)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let a = rng.gen_range(-20i64..=20);
        let b = rng.gen_range(-20i64..=20);
        if 4 * a.pow(3) + 27 * b.pow(2) != 0 && !out.contains(&(a, b)) {
            out.push((a, b));
        }
    }
    out
}

/// Curves with known torsion used alongside random samples.
pub fn special_curves() -> Vec<(i64, i64)> {
    vec![(0, 1), (-1, 0), (0, 2), (2, 0), (-43, 166), (0, -432), (4, 0), (-4, 0), (-11, 14), (-7, 6), (-1083, -12742), (-219, 1654)]
}

pub fn one() -> Q {
    Q::one()
}
