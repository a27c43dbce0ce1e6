#[path = "suites/lattice.rs"]
mod suite;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn small_vectors_congruent_mod_d_coincide(
        n in 2usize..=8,
        b in 1i64..=40,
        seed in any::<u64>(),
        scale in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
    ) {
        suite::lemma_inj_case(n, b, seed, scale);
    }
}

#[test]
fn bound_two_b_squared_is_sharp() {
    suite::bound_two_b_squared_is_sharp();
}

#[test]
fn lll_first_vector_against_exhaustive_search() {
    suite::lll_first_vector_against_exhaustive_search(500, 99);
}

#[test]
fn lll_known_examples() {
    suite::lll_known_examples();
}

#[test]
fn recognition_round_trip() {
    suite::recognition_round_trip(600, 4);
}

#[test]
fn recognition_agrees_with_exhaustive_search() {
    suite::recognition_agrees_with_exhaustive_search(300, 8);
}
