mod common;

use common::weighted_qm;
use proptest::prelude::*;
use qvmf::qmf::reconstruct::determining_order;
use qvmf::qmf::{delta_e2, hecke_tm_poly, poly_from_qexp, qexp_of_poly, theta};
use qvmf::ring::rational::rat;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theta_is_q_derivative((_, f) in weighted_qm(12)) {
        prop_assert_eq!(qexp_of_poly(&theta(&f), 20), qexp_of_poly(&f, 20).q_derivative());
    }

    #[test]
    fn expansion_determines_polynomial((k, f) in weighted_qm(16)) {
        let s = qexp_of_poly(&f, determining_order(k) + 3);
        prop_assert_eq!(poly_from_qexp(k, &s).unwrap(), f);
    }

    #[test]
    fn e2_derivative_and_theta_bracket((k, f) in weighted_qm(12)) {
        let br = &delta_e2(&theta(&f)) - &theta(&delta_e2(&f));
        prop_assert_eq!(br, f.scale_rat(&rat(k as i64, 12)));
    }

    #[test]
    fn hecke_multiplicative_on_coprime((_, f) in weighted_qm(8)) {
        let t6 = hecke_tm_poly(6, &f).unwrap();
        let t23 = hecke_tm_poly(2, &hecke_tm_poly(3, &f).unwrap()).unwrap();
        let t32 = hecke_tm_poly(3, &hecke_tm_poly(2, &f).unwrap()).unwrap();
        prop_assert_eq!(&t23, &t6);
        prop_assert_eq!(t32, t6);
    }

    #[test]
    fn hecke_theta_doubling((_, f) in weighted_qm(10), m in 1u64..=6) {
        let lhs = hecke_tm_poly(m, &theta(&f)).unwrap();
        let rhs = theta(&hecke_tm_poly(m, &f).unwrap()).scale_rat(&rat(m as i64, 1));
        prop_assert_eq!(lhs, rhs);
    }
}
