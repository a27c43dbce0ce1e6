mod common;

use kummer_torsion::jacobian::HyperellipticCurveQ;
use kummer_torsion::torsion::{torsion_subgroup, TorsionConfig};

fn torsion(a: i64, b: i64) -> Vec<u32> {
    let curve = HyperellipticCurveQ::from_ints(1, &[b, a, 0, 1]).unwrap();
    let rep = torsion_subgroup(&curve, &TorsionConfig::default()).unwrap();
    rep.invariant_factors().iter().map(|d| d.try_into().unwrap()).collect()
}

#[test]
fn brute_force_agrees_on_known_curves() {
    assert_eq!(common::brute_torsion(0, 1), vec![6]);
    assert_eq!(common::brute_torsion(-1, 0), vec![2, 2]);
    assert_eq!(common::brute_torsion(2, 0), vec![2]);
    assert_eq!(common::brute_torsion(-43, 166), vec![7]);
}

#[test]
fn special_curves_match_oracle() {
    for (a, b) in common::special_curves() {
        assert_eq!(torsion(a, b), common::brute_torsion(a, b), "a = {a}, b = {b}");
    }
}

#[test]
fn random_curves_match_oracle() {
    for (a, b) in common::sample_curves(40, 2024) {
        assert_eq!(torsion(a, b), common::brute_torsion(a, b), "a = {a}, b = {b}");
    }
}
