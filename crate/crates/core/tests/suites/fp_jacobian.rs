//! Properties of J(F_p) on random curves, shared with the acceptance run.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kummer_torsion::arith::Int;
use kummer_torsion::jacobian::{count_points, group_structure, jacobian_order, l_polynomial, CurveFp, HyperellipticCurveQ, JacobianFp};

const SMALL_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Random curves of genus ≤ 3 reduced at random good primes p ≤ 31.
fn random_reduced_curves(count: usize, seed: u64) -> Vec<(Vec<i64>, CurveFp)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let g = rng.gen_range(1..=3usize);
        let deg = 2 * g + rng.gen_range(1..=2usize);
        let p = SMALL_PRIMES[rng.gen_range(0..SMALL_PRIMES.len())];
        // keep genus 3 over large fields rare; those Jacobians have ~p³ elements
        if g == 3 && p > 17 && rng.gen_bool(0.7) {
            continue;
        }
        let mut f: Vec<i64> = (0..deg).map(|_| rng.gen_range(-9..=9)).collect();
        f.push(rng.gen_range(1..=4));
        let Ok(curve) = HyperellipticCurveQ::from_ints(g, &f) else { continue };
        let Ok(c) = curve.reduce(p) else { continue };
        out.push((f, c));
    }
    out
}

fn legendre_naive(a: u64, p: u64) -> i64 {
    if a % p == 0 {
        return 0;
    }
    let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
    if squares.contains(&(a % p)) { 1 } else { -1 }
}

/// #X(F_p) by running over x and the points at infinity.
fn naive_point_count(c: &CurveFp) -> i64 {
    let p = c.p;
    let affine: i64 = (0..p).map(|x| 1 + legendre_naive(c.f.eval(x), p)).sum();
    let inf = if c.f.deg() as usize == 2 * c.genus + 1 { 1 } else { 1 + legendre_naive(c.f.lc(), p) };
    affine + inf
}

fn binom(n: u64, k: u64) -> i64 {
    (1..=k).fold(1i64, |acc, i| acc * (n + 1 - i) as i64 / i as i64)
}

/// Power sums of the reciprocal roots from the full L-polynomial.
fn power_sums(a: &[Int], upto: usize) -> Vec<Int> {
    // Newton with e_k = (−1)^k a_k
    let e: Vec<Int> = a.iter().enumerate().map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x }).collect();
    let mut s: Vec<Int> = Vec::new();
    for k in 1..=upto {
        let mut acc = if k < e.len() { BigInt::from(k as i64) * &e[k] * if k % 2 == 1 { 1 } else { -1 } } else { BigInt::from(0) };
        for i in 1..k {
            let ek = if k - i < e.len() { e[k - i].clone() } else { BigInt::from(0) };
            let t = &ek * &s[i - 1];
            if (k - i) % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        s.push(acc);
    }
    s
}

/// Functional equation, Weil bounds, #J = L(1) and point counts over F_p
/// and its extensions.
pub fn l_polynomial_properties_on_random_curves(count: usize, seed: u64) {
    let mut extension_checks = 0;
    for (f, c) in random_reduced_curves(count, seed) {
        let (g, p) = (c.genus as u32, c.p);
        let a = l_polynomial(&c);
        assert_eq!(a.len(), 2 * g as usize + 1);
        assert_eq!(a[0], BigInt::from(1));
        // functional equation a_{2g−i} = p^{g−i} a_i
        for i in 0..=g as usize {
            assert_eq!(a[2 * g as usize - i], BigInt::from(p).pow(g - i as u32) * &a[i], "{f:?} mod {p}");
        }
        // Weil: |a_i| ≤ C(2g, i) p^{i/2}
        for (i, ai) in a.iter().enumerate() {
            let b = BigInt::from(binom(2 * g as u64, i as u64));
            assert!(ai * ai <= &b * &b * BigInt::from(p).pow(i as u32), "a_{i} = {ai} for {f:?} mod {p}");
        }
        // (√p − 1)^{2g} ≤ #J ≤ (√p + 1)^{2g}, compared in floating point with slack
        let n = jacobian_order(&c);
        let sum: Int = a.iter().sum();
        assert_eq!(n, sum);
        let nf = n.to_f64().unwrap();
        let sp = (p as f64).sqrt();
        assert!(nf >= (sp - 1.0).powi(2 * g as i32) - 1e-6 && nf <= (sp + 1.0).powi(2 * g as i32) + 1e-6);
        // #X(F_p) = p + 1 − s_1 against a direct count
        let s = power_sums(&a, 2 * g as usize);
        assert_eq!(BigInt::from(naive_point_count(&c)), BigInt::from(p + 1) - &s[0], "{f:?} mod {p}");
        // the upper half of L predicts the counts over F_{p^k}, k > g
        if (p as f64).powi(2 * g as i32) <= 2.0e5 {
            for k in (g as usize + 1)..=(2 * g as usize) {
                let want = BigInt::from(p).pow(k as u32) + 1u32 - &s[k - 1];
                assert_eq!(count_points(&c, k), want, "k = {k}, {f:?} mod {p}");
                extension_checks += 1;
            }
        }
    }
    assert!(2 * extension_checks > count);
}

pub fn group_structure_multiplies_to_order(count: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
    for (f, c) in random_reduced_curves(count, seed) {
        let jac = JacobianFp::new(&c).unwrap();
        let n = jacobian_order(&c);
        let s = group_structure(&jac, &n, &mut rng).unwrap();
        let prod: Int = s.iter().product();
        assert_eq!(prod, n, "{f:?} mod {}", c.p);
        for w in s.windows(2) {
            assert!((&w[1] % &w[0]) == BigInt::from(0), "{s:?} is not a divisor chain");
        }
    }
}

/// Group axioms for Cantor addition on random classes.
pub fn cantor_axioms_on_random_curves(count: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 17);
    for (f, c) in random_reduced_curves(count, seed) {
        let jac = JacobianFp::new(&c).unwrap();
        let n = jacobian_order(&c);
        let zero = jac.zero();
        for _ in 0..6 {
            let a = jac.random(&mut rng);
            let b = jac.random(&mut rng);
            let d = jac.random(&mut rng);
            let ab = jac.add(&a, &b);
            assert!(jac.is_valid(&ab), "{ab:?} on {f:?} mod {}", c.p);
            assert_eq!(ab, jac.add(&b, &a));
            assert_eq!(jac.add(&ab, &d), jac.add(&a, &jac.add(&b, &d)));
            assert_eq!(jac.add(&a, &zero), a);
            assert!(jac.is_zero(&jac.add(&a, &jac.neg(&a))));
            assert_eq!(jac.sub(&ab, &b), a);
            let k = rng.gen_range(0..200u64);
            assert_eq!(jac.mul_u(&ab, k), jac.add(&jac.mul_u(&a, k), &jac.mul_u(&b, k)));
            assert_eq!(jac.mul_u(&a, k + 1), jac.add(&jac.mul_u(&a, k), &a));
            assert!(jac.is_zero(&jac.mul(&a, &n)));
        }
    }
}
