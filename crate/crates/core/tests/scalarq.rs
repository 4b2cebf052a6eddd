use proptest::prelude::*;
use qeuclid_core::scalarq::{Poly, ScalarQ};

fn poly() -> impl Strategy<Value = ScalarQ> {
    prop::collection::vec(-4i64..=4, 1..4).prop_map(|c| ScalarQ::new(Poly::from_ints(&c), Poly::from_ints(&[1])).unwrap())
}

fn scalar() -> impl Strategy<Value = ScalarQ> {
    (poly(), poly(), -3i32..=3).prop_map(|(a, b, k)| {
        let den = if b.is_zero() { ScalarQ::one() } else { b };
        a.checked_div(&den).unwrap() * ScalarQ::s_pow(k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), s in 1.05f64..2.0) {
        let (Ok(x), Ok(y)) = (a.eval(s), b.eval(s)) else { return Ok(()) };
        let tol = 1e-9 * (1.0 + x.abs() + y.abs()).powi(2);
        prop_assert!(((&a + &b).eval(s).unwrap() - (x + y)).abs() <= tol);
        prop_assert!(((&a * &b).eval(s).unwrap() - x * y).abs() <= tol);
    }
}

#[test]
fn q_is_s_squared() {
    assert_eq!(ScalarQ::s() * ScalarQ::s(), ScalarQ::q());
    assert_eq!(ScalarQ::h(), ScalarQ::s() - ScalarQ::s_pow(-1));
    assert!((ScalarQ::q().eval(1.5).unwrap() - 2.25).abs() < 1e-15);
}
