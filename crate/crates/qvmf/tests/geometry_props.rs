use proptest::prelude::*;
use qvmf::geometry::{cocycle_identity_check, cocycle_k, panel_avoiding, x_cocycle_check, IntMatrix2};
use qvmf::ring::rational::int;

fn matrix() -> impl Strategy<Value = IntMatrix2> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
        .prop_filter_map("det in 1..=4", |(a, b, c, d)| {
            let det = a * d - b * c;
            (1..=4).contains(&det).then(|| IntMatrix2::new(a, b, c, d).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cocycle_identity(a in matrix(), b in matrix()) {
        let samples = panel_avoiding(&[a, b, a.mul(&b)], 4);
        prop_assert!(cocycle_identity_check(&a, &b, &samples, 3).unwrap());
    }

    #[test]
    fn x_factor_cocycle(a in matrix(), b in matrix()) {
        let samples = panel_avoiding(&[a, b, a.mul(&b)], 6);
        prop_assert!(x_cocycle_check(&a, &b, &samples).unwrap());
    }

    #[test]
    fn k_is_block_unitriangular(a in matrix()) {
        for t in panel_avoiding(&[a], 2) {
            let j = a.j(&t).unwrap();
            prop_assert!(cocycle_k(&a, &t, 4).unwrap().is_block_unitriangular(&(int(a.det()) / (&j * &j))));
        }
    }

    #[test]
    fn matrix_text_round_trip(a in matrix()) {
        let back: IntMatrix2 = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
