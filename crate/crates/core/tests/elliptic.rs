use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kummer_torsion::arith::Fp;
use kummer_torsion::jacobian::{jacobian_order, HyperellipticCurveQ, JacobianFp};
use kummer_torsion::kummer::KummerPoint;
use kummer_torsion::torsion::lift::{lift_and_recognize, LiftConfig, LiftOutcome};
use kummer_torsion::torsion::{EllipticBackend, KummerBackend};

fn fp_point(c: &[u64], p: u64) -> KummerPoint<Fp> {
    KummerPoint::new(c.iter().map(|&v| Fp::new(v, p)).collect())
}

#[test]
fn ladder_matches_group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..40 {
        let a = rng.gen_range(-20i64..=20);
        let b = rng.gen_range(-20i64..=20);
        let lc = rng.gen_range(1i64..=3);
        let Ok(curve) = HyperellipticCurveQ::from_ints(1, &[b, a, 1, lc]) else { continue };
        let backend = EllipticBackend::new(&curve).unwrap();
        for p in [5u64, 7, 11, 13, 31] {
            let Ok(cp) = curve.reduce(p) else { continue };
            let jac = JacobianFp::new(&cp).unwrap();
            assert!(backend.usable(&jac));
            for _ in 0..5 {
                let d = jac.random(&mut rng);
                let k = fp_point(&backend.kummer_fp(&jac, &d).unwrap(), p);
                for n in 0..=50u64 {
                    let lhs = backend.model().ladder_u(&k, n).unwrap();
                    let rhs = fp_point(&backend.kummer_fp(&jac, &jac.mul_u(&d, n)).unwrap(), p);
                    assert!(lhs.proj_eq(&rhs), "n = {n}, p = {p}, curve {:?}", curve.f_int);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

/// Points of exact order m in E(F_p).
fn points_of_order(curve: &HyperellipticCurveQ, p: u64, m: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let cp = curve.reduce(p).unwrap();
    let jac = JacobianFp::new(&cp).unwrap();
    let backend = EllipticBackend::new(curve).unwrap();
    let n = jacobian_order(&cp);
    let mut out = Vec::new();
    if &n % m != BigInt::from(0) {
        return out;
    }
    let n = n.to_u64().unwrap();
    for _ in 0..200 {
        let r = jac.random(rng);
        let ord = (1..=n).find(|&k| n % k == 0 && jac.is_zero(&jac.mul_u(&r, k))).unwrap();
        if ord % m != 0 {
            continue;
        }
        let d = jac.mul_u(&r, ord / m);
        let c = backend.kummer_fp(&jac, &d).unwrap();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

#[test]
fn lifts_rational_six_torsion() {
    // y² = x³ + 1 has E(ℚ) ≅ ℤ/6 with (2, 3) of order 6 and (0, 1) of order 3
    let curve = HyperellipticCurveQ::from_ints(1, &[1, 0, 0, 1]).unwrap();
    let backend = EllipticBackend::new(&curve).unwrap();
    let bound = backend.height_bound().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [5u64, 7, 11, 13] {
        for (m, x) in [(3u64, 0i64), (6, 2)] {
            let pts = points_of_order(&curve, p, m, &mut rng);
            let want = vec![x.rem_euclid(p as i64) as u64, 1];
            let mut found = 0;
            for c in &pts {
                let out = lift_and_recognize(&backend, p, m, c, &bound, &LiftConfig::default()).unwrap();
                match out {
                    LiftOutcome::Found(cert) => {
                        assert_eq!(c, &want);
                        assert_eq!(cert.point, vec![x.to_string(), "1".to_string()]);
                        found += 1;
                    }
                    LiftOutcome::NotRational { .. } => assert_ne!(c, &want),
                }
            }
            assert_eq!(found, 1, "p = {p}, m = {m}, points {pts:?}");
        }
    }
}

#[test]
fn no_odd_torsion_on_x3_plus_2x() {
    let curve = HyperellipticCurveQ::from_ints(1, &[0, 2, 0, 1]).unwrap();
    let backend = EllipticBackend::new(&curve).unwrap();
    let bound = backend.height_bound().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut tried = 0;
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
        for m in [3u64, 4, 5, 7, 8] {
            if p == m {
                continue;
            }
            for c in points_of_order(&curve, p, m, &mut rng) {
                let out = lift_and_recognize(&backend, p, m, &c, &bound, &LiftConfig::default()).unwrap();
                assert!(matches!(out, LiftOutcome::NotRational { .. }));
                tried += 1;
            }
        }
    }
    assert!(tried > 5);
}
