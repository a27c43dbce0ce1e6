mod common;
#[path = "suites/hensel.rs"]
mod suite;

#[test]
fn hensel_iterates_towards_known_torsion_points() {
    suite::hensel_iterates_towards_known_torsion_points(100, 21);
}

#[test]
fn p_adic_torsion_that_is_not_rational() {
    suite::p_adic_torsion_that_is_not_rational(100, 77);
}
