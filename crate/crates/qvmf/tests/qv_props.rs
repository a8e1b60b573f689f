mod common;

use common::{even_weight, slice_form, weighted_e2_free};
use proptest::prelude::*;
use qvmf::hecke::t_prime;
use qvmf::qv::form::{from_json, to_json};
use qvmf::qv::{depth, lambda_op, nabla, p_inv, p_iso};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn p_lands_in_kernel_and_inverts((_, f) in weighted_e2_free(10)) {
        let g = p_iso(&f).unwrap();
        prop_assert!(lambda_op(&g).is_zero());
        prop_assert_eq!(p_inv(&g).unwrap(), f);
    }

    #[test]
    fn connection_preserves_kernel((k, f) in weighted_e2_free(8)) {
        let g = nabla(&p_iso(&f).unwrap(), k).unwrap();
        prop_assert!(lambda_op(&g).is_zero());
    }

    #[test]
    fn hecke_preserves_kernel((_, f) in weighted_e2_free(8), m in 1u64..=5) {
        let g = t_prime(m, &p_iso(&f).unwrap()).unwrap();
        prop_assert!(lambda_op(&g).is_zero());
    }

    #[test]
    fn json_round_trip(f in even_weight(8).prop_flat_map(slice_form)) {
        prop_assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn lambda_drops_depth_by_one(f in even_weight(8).prop_flat_map(slice_form)) {
        let g = lambda_op(&f);
        if !g.is_zero() {
            prop_assert_eq!(depth(&g) + 1, depth(&f));
        } else {
            prop_assert_eq!(depth(&f), 0);
        }
    }
}
