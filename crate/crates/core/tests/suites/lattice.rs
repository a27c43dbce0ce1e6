//! Lattice reduction and recognition properties, shared with the acceptance run.

#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kummer_torsion::arith::{Int, Rat, Zmod};
use kummer_torsion::lattice::{
    is_lll_reduced, lll_reduce, precision_factor, primitive_vector, recognize_rational_point, Lattice,
};

fn iv(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| x.into()).collect()
}

fn minors_divisible(u: &[i64], w: &[i64], d: i64) -> bool {
    (0..u.len()).all(|i| (0..i).all(|j| (u[i] as i128 * w[j] as i128 - u[j] as i128 * w[i] as i128) % d as i128 == 0))
}

fn same_point(u: &[i64], w: &[i64]) -> bool {
    primitive_vector(&iv(u)) == primitive_vector(&iv(w))
}

/// One instance of the injectivity lemma: a small multiple of `u` and a
/// random vector, both with entries bounded by b, against D > 2b².
pub fn lemma_inj_case(n: usize, b: i64, seed: u64, scale: i64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = 2 * b * b + rng.gen_range(1..=50);
    let u: Vec<i64> = loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
        if v.iter().any(|&x| x != 0) {
            break v;
        }
    };
    let g = u.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    let prim: Vec<i64> = u.iter().map(|x| x / g).collect();
    let k = (b / prim.iter().map(|x| x.abs()).max().unwrap()).max(1);
    let multiple: Vec<i64> = prim.iter().map(|x| x * scale.signum() * scale.abs().min(k)).collect();
    assert!(minors_divisible(&u, &multiple, d));
    assert!(same_point(&u, &multiple));
    let other: Vec<i64> = (0..n).map(|_| rng.gen_range(-b..=b)).collect();
    if other.iter().any(|&x| x != 0) && minors_divisible(&u, &other, d) {
        assert!(same_point(&u, &other), "{u:?} {other:?} D = {d}");
    }
}

pub fn lemma_inj_random(cases: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let scale = [-3i64, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
        lemma_inj_case(rng.gen_range(2..=8), rng.gen_range(1..=40), rng.gen(), scale);
    }
}

/// With D = 2B² the lemma fails: (B, −B) and (B, B) have minor 2B².
pub fn bound_two_b_squared_is_sharp() {
    for b in 1i64..=30 {
        let (u, w) = ([b, -b], [b, b]);
        assert!(minors_divisible(&u, &w, 2 * b * b));
        assert!(!same_point(&u, &w));
    }
}

fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0] as i128;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] as i128 * det(&minor)
        })
        .sum()
}

/// adj with B·adj = det·I, for row bases.
fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = s * det(&minor);
        }
    }
    adj
}

/// x is in the row lattice of B iff x·adj(B) ≡ 0 mod det(B).
fn member(x: &[i64], adj: &[Vec<i128>], d: i128) -> bool {
    let n = x.len();
    (0..n).all(|j| (0..n).map(|i| x[i] as i128 * adj[i][j]).sum::<i128>() % d == 0)
}

/// λ₁² by enumerating the integer points of the box [−R, R]^n, R² ≥ `r2`.
fn shortest_norm2(basis: &[Vec<i64>], r2: i64) -> i64 {
    let n = basis.len();
    let d = det(basis);
    let adj = adjugate(basis);
    let r = (r2 as f64).sqrt().ceil() as i64;
    let mut best = r2;
    let mut x = vec![-r; n];
    loop {
        let norm: i64 = x.iter().map(|v| v * v).sum();
        if norm > 0 && norm < best && member(&x, &adj, d) {
            best = norm;
        }
        let mut i = 0;
        while i < n {
            x[i] += 1;
            if x[i] <= r {
                break;
            }
            x[i] = -r;
            i += 1;
        }
        if i == n {
            return best;
        }
    }
}

fn to_i64(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

pub fn lll_first_vector_against_exhaustive_search(count: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < count {
        let n = rng.gen_range(1..=4usize);
        let basis: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let d = det(&basis);
        if d == 0 {
            continue;
        }
        let lat = Lattice { basis: basis.iter().map(|r| iv(r)).collect() };
        let red = lll_reduce(&lat).unwrap();
        assert!(is_lll_reduced(&red), "{basis:?}");
        let rb: Vec<Vec<i64>> = red.basis.iter().map(|r| to_i64(r)).collect();
        // same lattice: equal |det| and the new basis lies in the old lattice
        assert_eq!(det(&rb).abs(), d.abs());
        let adj = adjugate(&basis);
        assert!(rb.iter().all(|v| member(v, &adj, d)));
        let b1: i64 = rb[0].iter().map(|x| x * x).sum();
        let lambda1 = shortest_norm2(&basis, b1);
        assert!(b1 <= (1i64 << (n - 1)) * lambda1, "‖b1‖² = {b1}, λ₁² = {lambda1}, basis {basis:?}");
        done += 1;
    }
}

pub fn lll_known_examples() {
    let red = lll_reduce(&Lattice { basis: vec![iv(&[1, 0]), iv(&[1_000_000, 1])] }).unwrap();
    let n1: Int = red.basis[0].iter().map(|x| x * x).sum();
    assert_eq!(n1, BigInt::from(1));
    let one = Lattice { basis: vec![iv(&[6, 9])] };
    assert_eq!(lll_reduce(&one).unwrap(), one);
}

fn residues(v: &[Int], scale: &Int, m: &Arc<Int>) -> Vec<Zmod> {
    v.iter().map(|x| Zmod::new(&(x * scale), m)).collect()
}

/// Smallest p^N with p^N > 2^(g+n)·H².
fn modulus_for(p: u64, n: usize, h: &Int) -> Int {
    let need = precision_factor(n) * h * h;
    let mut m = BigInt::from(p);
    while m <= need {
        m *= p;
    }
    m
}

pub fn recognition_round_trip(trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let n = [2usize, 4, 8][trial % 3];
        let h = BigInt::from(rng.gen_range(1..=1_000_000i64));
        let p = [3u64, 5, 7, 11, 13, 101][rng.gen_range(0..6)];
        let hi = i64::try_from(&h).unwrap();
        let v: Vec<Int> = loop {
            let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-hi..=hi)).collect();
            v[rng.gen_range(0..n)] = hi * if rng.gen_bool(0.5) { 1 } else { -1 };
            let w = primitive_vector(&iv(&v));
            if w.iter().map(|x| x.abs()).max().unwrap() <= h && !w.iter().all(|x| x.is_zero()) {
                break w;
            }
        };
        let m = Arc::new(modulus_for(p, n, &h));
        // a random unit multiple, as a lifted point is only known projectively
        let unit = loop {
            let u = BigInt::from(rng.gen_range(1..1_000_000_007i64));
            if !(&u % p).is_zero() {
                break u;
            }
        };
        let coords = residues(&v, &unit, &m);
        let got = recognize_rational_point(&coords, &Rat::from_integer(h.clone())).unwrap();
        assert_eq!(got, Some(v.clone()), "v = {v:?} mod {m}");
    }
}

pub fn recognition_agrees_with_exhaustive_search(trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut none = 0;
    let mut some = 0;
    for trial in 0..trials {
        let (n, h) = if trial % 2 == 0 { (2usize, 25i64) } else { (4, 3) };
        let hb = BigInt::from(h);
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let m = Arc::new(modulus_for(p, n, &hb));
        let coords: Vec<Zmod> = if trial % 3 == 0 {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-h..=h)).collect();
            if v.iter().all(|&x| x % p as i64 == 0) {
                continue;
            }
            residues(&iv(&v), &BigInt::from(rng.gen_range(1..p as i64)), &m)
        } else {
            let mut c: Vec<Zmod> =
                (0..n).map(|_| Zmod::new(&BigInt::from(rng.gen_range(0..i64::MAX)), &m)).collect();
            c[0] = Zmod::new(&BigInt::from(1), &m);
            c
        };
        // every primitive vector of height ≤ h proportional to the coordinates
        let mut hits = Vec::new();
        let total = (2 * h + 1).pow(n as u32);
        for k in 0..total {
            let mut t = k;
            let w: Vec<i64> = (0..n)
                .map(|_| {
                    let x = t % (2 * h + 1) - h;
                    t /= 2 * h + 1;
                    x
                })
                .collect();
            let wv = iv(&w);
            if primitive_vector(&wv) != wv || wv.iter().all(|x| x.is_zero()) {
                continue;
            }
            let proportional = (0..n).all(|i| {
                (0..i).all(|j| {
                    let a = &coords[i].v * &wv[j] - &coords[j].v * &wv[i];
                    (a % &*m).is_zero()
                })
            });
            if proportional {
                hits.push(wv);
            }
        }
        assert!(hits.len() <= 1, "{hits:?}");
        let got = recognize_rational_point(&coords, &Rat::from_integer(hb)).unwrap();
        assert_eq!(got, hits.pop());
        if got.is_some() {
            some += 1;
        } else {
            none += 1;
        }
    }
    assert!(6 * some > trials && 6 * none > trials, "{some} found, {none} not found");
}
