//! Hensel-lifting properties on elliptic curves, shared with the acceptance run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kummer_torsion::arith::Int;
use kummer_torsion::jacobian::{jacobian_order, HyperellipticCurveQ, JacobianFp};
use kummer_torsion::lattice::primitive_vector;
use kummer_torsion::torsion::lift::{
    choose_multiplier, lift_and_recognize, target_precision, HenselLift, LiftConfig, LiftOutcome,
};
use kummer_torsion::torsion::{EllipticBackend, KummerBackend};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// y² = x³ + a2·x² + a4·x + a6 over ℚ; `None` is the point at infinity.
struct Cubic {
    a2: Q,
    a4: Q,
}

impl Cubic {
    fn add(&self, p: &Option<(Q, Q)>, r: &Option<(Q, Q)>) -> Option<(Q, Q)> {
        let ((x1, y1), (x2, y2)) = match (p, r) {
            (None, x) | (x, None) => return x.clone(),
            (Some(a), Some(b)) => (a, b),
        };
        let l = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return None;
            }
            (q(3) * x1 * x1 + q(2) * &self.a2 * x1 + &self.a4) / (q(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &l * &l - &self.a2 - x1 - x2;
        let y3 = &l * (x1 - &x3) - y1;
        Some((x3, y3))
    }

    fn mul(&self, p: &Option<(Q, Q)>, k: u64) -> Option<(Q, Q)> {
        (0..k).fold(None, |acc, _| self.add(&acc, p))
    }
}

/// Tate normal form y² + (1 − c)xy − by = x³ − bx² with (0, 0) of order m.
fn tate_parameters(m: u64, t: &Q) -> (Q, Q) {
    let one = Q::one();
    match m {
        4 => (t.clone(), Q::zero()),
        5 => (t.clone(), t.clone()),
        6 => (t + t * t, t.clone()),
        7 => (t * t * t - t * t, t * t - t),
        8 => {
            let b = (q(2) * t - &one) * (t - &one);
            (b.clone(), b / t)
        }
        9 => {
            let c = t * t * (t - &one);
            (&c * (t * t - t + &one), c)
        }
        _ => unreachable!(),
    }
}

/// A curve with a rational point of exact order m, as (f, P) with y² = f(x).
fn curve_with_torsion(m: u64, t: &Q, s: &Q) -> Option<(Vec<Q>, (Q, Q))> {
    if t.is_zero() && m == 8 {
        return None;
    }
    let (f, pt) = if m == 3 {
        // y² = x³ + (t·x + s)²: the line y = tx + s meets the curve only at x = 0
        (vec![s * s, q(2) * t * s, t * t, Q::one()], (Q::zero(), s.clone()))
    } else {
        let (b, c) = tate_parameters(m, t);
        let h1 = (Q::one() - &c) / q(2);
        let h0 = -&b / q(2);
        // (y + h1·x + h0)² = x³ − b·x² + (h1·x + h0)²
        (vec![&h0 * &h0, q(2) * &h0 * &h1, &h1 * &h1 - &b, Q::one()], (Q::zero(), h0.clone()))
    };
    let cubic = Cubic { a2: f[2].clone(), a4: f[1].clone() };
    let p = Some(pt.clone());
    if (1..m).any(|k| cubic.mul(&p, k).is_none()) || cubic.mul(&p, m).is_some() {
        return None;
    }
    Some((f, pt))
}

fn small_rational(rng: &mut ChaCha8Rng) -> Q {
    Q::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into())
}

fn reduce_mod(v: &Int, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Curves with a rational point of order m ∈ 3..=9: every iteration is
/// m-torsion mod p^r and agrees with κ(Q), and recognition returns κ(Q).
pub fn hensel_iterates_towards_known_torsion_points(count: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43];
    let mut cases = 0;
    let mut per_order = std::collections::BTreeMap::new();
    while cases < count {
        let m = rng.gen_range(3..=9u64);
        let (t, s) = (small_rational(&mut rng), small_rational(&mut rng));
        let Some((f, pt)) = curve_with_torsion(m, &t, &s) else { continue };
        let Ok(curve) = HyperellipticCurveQ::new(1, f.clone()) else { continue };
        let p = primes[rng.gen_range(0..primes.len())];
        if m % p == 0 || !curve.is_good_prime(p) {
            continue;
        }
        let backend = EllipticBackend::new(&curve).unwrap();
        let cubic = Cubic { a2: f[2].clone(), a4: f[1].clone() };
        let units: Vec<u64> = (1..m).filter(|k| k.gcd(&m) == 1).collect();
        let k = units[rng.gen_range(0..units.len())];
        let (x, _) = cubic.mul(&Some(pt), k).unwrap();
        // κ(Q) = (lc·x : 1) on the integral model
        let lc = &curve.f_int[3];
        let want = primitive_vector(&[lc * x.numer(), x.denom().clone()]);
        let start: Vec<u64> = want.iter().map(|c| reduce_mod(c, p)).collect();
        assert!(start.iter().any(|&c| c != 0));

        let bound = backend.height_bound().unwrap();
        let model = backend.model();
        let mult = choose_multiplier(m, p, false).unwrap();
        let n_target = target_precision(p, 2, &bound.exp_beta);
        let mut lift = HenselLift::new(model, p, &start, mult).unwrap();
        while lift.precision() < n_target {
            let r = (2 * lift.precision()).min(n_target);
            lift.step_to(r).unwrap();
            assert!(lift.is_torsion_mod(m).unwrap(), "m = {m}, p = {p}, r = {r}");
            let res = lift.residues();
            let modulus = lift.modulus();
            // agrees with the start mod p and with κ(Q) mod p^r, projectively
            let k = lift.patch();
            for i in 0..2 {
                let lhs = &res[i].v * &want[k] - &res[k].v * &want[i];
                assert!((lhs % &modulus).is_zero(), "m = {m}, p = {p}, r = {r}, f = {f:?}");
                assert_eq!(reduce_mod(&(&res[i].v * start[k]), p), reduce_mod(&(BigInt::from(start[i]) * &res[k].v), p));
            }
        }
        match lift_and_recognize(&backend, p, m, &start, &bound, &LiftConfig::default()).unwrap() {
            LiftOutcome::Found(cert) => {
                let got: Vec<Int> = cert.point.iter().map(|s| s.parse().unwrap()).collect();
                assert_eq!(primitive_vector(&got), want, "m = {m}, p = {p}, f = {f:?}");
            }
            other => panic!("m = {m}, p = {p}, f = {f:?}: {other:?}"),
        }
        *per_order.entry(m).or_insert(0) += 1;
        cases += 1;
    }
    assert_eq!(per_order.len(), 7, "{per_order:?}");
}

/// Kummer coordinates of the points of exact order m in E(F_p).
fn points_of_order(backend: &EllipticBackend, p: u64, m: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let cp = backend.curve().reduce(p).unwrap();
    let jac = JacobianFp::new(&cp).unwrap();
    let n = jacobian_order(&cp).to_u64().unwrap();
    let mut out = Vec::new();
    if n % m != 0 {
        return out;
    }
    for _ in 0..60 {
        let r = jac.random(rng);
        let ord = (1..=n).find(|&k| n % k == 0 && jac.is_zero(&jac.mul_u(&r, k))).unwrap();
        if ord % m != 0 {
            continue;
        }
        let c = backend.kummer_fp(&jac, &jac.mul_u(&r, ord / m)).unwrap();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Points of E(F_p) of order m > 2 lift to ℚ exactly when they are reductions
/// of the brute-force rational torsion.
pub fn p_adic_torsion_that_is_not_rational(count: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut not_rational = 0;
    let mut found = 0;
    for (a, b) in crate::common::special_curves().into_iter().chain(crate::common::sample_curves(400, 12)) {
        if not_rational >= count {
            break;
        }
        let curve = HyperellipticCurveQ::from_ints(1, &[b, a, 0, 1]).unwrap();
        let backend = EllipticBackend::new(&curve).unwrap();
        let bound = backend.height_bound().unwrap();
        let rational: Vec<BigRational> = crate::common::torsion_points(a, b)
            .into_iter()
            .filter_map(|pt| match pt {
                crate::common::Pt::A(x, _) => Some(x),
                crate::common::Pt::O => None,
            })
            .collect();
        let p = [5u64, 7, 11, 13][rng.gen_range(0..4)];
        if !curve.is_good_prime(p) {
            continue;
        }
        let n = jacobian_order(&curve.reduce(p).unwrap()).to_u64().unwrap();
        for m in (3..=n).filter(|m| n % m == 0 && m % p != 0 && *m <= 24) {
            for c in points_of_order(&backend, p, m, &mut rng) {
                let from_rational = rational.iter().any(|x| {
                    let xr = reduce_mod(&(x.numer() * BigInt::from(kummer_torsion::arith::fp::inv_mod(reduce_mod(x.denom(), p), p).unwrap())), p);
                    c == vec![xr, 1]
                });
                match lift_and_recognize(&backend, p, m, &c, &bound, &LiftConfig::default()).unwrap() {
                    LiftOutcome::NotRational { .. } => {
                        assert!(!from_rational, "({a}, {b}) mod {p}: rational point missed");
                        not_rational += 1;
                    }
                    LiftOutcome::Found(cert) => {
                        assert!(from_rational, "({a}, {b}) mod {p}: {cert:?}");
                        let w: Vec<Int> = cert.point.iter().map(|s| s.parse().unwrap()).collect();
                        assert!(rational.contains(&Q::new(w[0].clone(), w[1].clone())), "{cert:?}");
                        found += 1;
                    }
                }
            }
        }
    }
    assert!(not_rational >= count, "only {not_rational} non-rational cases");
    assert!(found > 0);
}
