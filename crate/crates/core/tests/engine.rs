use proptest::prelude::*;
use qeuclid_core::algebra::rewrite::{random_word, word_grading};
use qeuclid_core::properties;
use qeuclid_core::Algebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn alg() -> &'static Algebra {
    static ALG: OnceLock<Algebra> = OnceLock::new();
    ALG.get_or_init(|| Algebra::new().unwrap())
}

fn assert_report(r: qeuclid_core::report::Report) {
    assert!(r.passed(), "{}", r.first_failure().unwrap_or_default());
}

#[test]
fn confluence_on_two_hundred_words() {
    assert_report(properties::confluence(alg(), 20, 200).unwrap());
}

#[test]
fn d_squared_vanishes() {
    assert_report(properties::d_squared(alg(), 20, 50).unwrap());
}

#[test]
fn d_agrees_with_theta_commutator() {
    assert_report(properties::d_agreement(alg(), 20, 20).unwrap());
}

#[test]
fn theta_squares_to_zero() {
    assert_report(properties::theta_squared(alg()).unwrap());
}

#[test]
fn exterior_and_derived_rules() {
    assert_report(properties::exterior(alg()).unwrap());
    assert_report(properties::derived_rules(alg()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn grading_survives_normal_ordering(seed in any::<u64>(), len in 1usize..7, xi in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, len, xi);
        let want = word_grading(&w);
        let nf = alg().word(&w).unwrap();
        for g in nf.gradings() {
            prop_assert_eq!(g, want);
        }
    }

    #[test]
    fn star_is_an_antihomomorphism(seed in any::<u64>()) {
        let r = properties::star_a(alg(), seed, 3).unwrap();
        prop_assert!(r.passed(), "{}", r.first_failure().unwrap_or_default());
    }

    #[test]
    fn confluence_under_random_seeds(seed in any::<u64>()) {
        let r = properties::confluence(alg(), seed, 4).unwrap();
        prop_assert!(r.passed(), "{}", r.first_failure().unwrap_or_default());
    }
}
