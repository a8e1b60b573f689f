mod common;

use common::laurent;
use proptest::prelude::*;
use qvmf::ring::LaurentScalar;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_is_a_commutative_group(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &-&a, LaurentScalar::zero());
    }

    #[test]
    fn multiplication_distributes(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentScalar::one(), a.clone());
    }

    #[test]
    fn text_round_trip(a in laurent()) {
        let back: LaurentScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn json_round_trip(a in laurent()) {
        let back: LaurentScalar = serde_json::from_value(a.to_json_value()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn monomials_invert(n in 1i64..50, d in 1i64..50, e in -5i32..5) {
        let m = LaurentScalar::monomial(qvmf::ring::rational::rat(n, d), e);
        prop_assert!((&m * &m.monomial_inverse().unwrap()).is_one());
    }
}
