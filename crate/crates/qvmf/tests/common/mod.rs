#![allow(dead_code)]

use proptest::prelude::*;
use qvmf::heisenberg::partitions;
use qvmf::qmf::mono::{modular_monomials, monomials_of_weight};
use qvmf::qmf::QmPolynomial;
use qvmf::qv::form::qv_term;
use qvmf::qv::QVForm;
use qvmf::ring::rational::rat;
use qvmf::ring::LaurentScalar;

/// Sparse Laurent polynomial in `u` with small rational coefficients.
pub fn laurent() -> impl Strategy<Value = LaurentScalar> {
    prop::collection::vec((-20i64..=20, 1i64..=6, -3i32..=3), 0..4).prop_map(|ts| {
        let mut s = LaurentScalar::zero();
        for (n, d, e) in ts {
            s += &LaurentScalar::monomial(rat(n, d), e);
        }
        s
    })
}

/// Nonzero `c·u^e`, the coefficients that keep a form `u`-graded.
pub fn graded_coeff() -> impl Strategy<Value = LaurentScalar> {
    ((1i64..=9), any::<bool>(), (1i64..=5), -2i32..=2)
        .prop_map(|(n, neg, d, e)| LaurentScalar::monomial(rat(if neg { -n } else { n }, d), e))
}

pub fn even_weight(max: u32) -> impl Strategy<Value = u32> {
    (0..=max / 2).prop_map(|h| 2 * h)
}

/// Homogeneous quasi-modular polynomial of weight `k`.
pub fn qm_poly(k: u32) -> impl Strategy<Value = QmPolynomial> {
    let monos = monomials_of_weight(k);
    prop::collection::vec(prop::option::of(graded_coeff()), monos.len()).prop_map(move |cs| {
        let mut f = QmPolynomial::zero();
        for (m, c) in monos.iter().zip(cs) {
            if let Some(c) = c {
                f.add_term(*m, c);
            }
        }
        f
    })
}

pub fn weighted_qm(max: u32) -> impl Strategy<Value = (u32, QmPolynomial)> {
    even_weight(max).prop_flat_map(|k| (Just(k), qm_poly(k)))
}

/// E2-free form of weight `k`: modular coefficients tensored with Fock states.
pub fn e2_free_form(k: u32) -> impl Strategy<Value = QVForm> {
    let mut keys = Vec::new();
    for l in 0..=k / 2 {
        for m in modular_monomials(k - 2 * l) {
            for p in partitions(l) {
                keys.push((m, p));
            }
        }
    }
    prop::collection::vec(prop::option::of(graded_coeff()), keys.len()).prop_map(move |cs| {
        let mut f = QVForm::zero();
        for ((m, p), c) in keys.iter().zip(cs) {
            if let Some(c) = c {
                f.add_assign(&qv_term(*m, p.clone(), c));
            }
        }
        f
    })
}

pub fn weighted_e2_free(max: u32) -> impl Strategy<Value = (u32, QVForm)> {
    even_weight(max).prop_flat_map(|k| (Just(k), e2_free_form(k)))
}

/// Arbitrary form of weight `k` on the full slice.
pub fn slice_form(k: u32) -> impl Strategy<Value = QVForm> {
    let keys = qvmf::qv::weight_slice(k);
    prop::collection::vec(prop::option::of(laurent()), keys.len()).prop_map(move |cs| {
        let mut f = QVForm::zero();
        for (key, c) in keys.iter().zip(cs) {
            if let Some(c) = c {
                f.add_term(key.clone(), c);
            }
        }
        f
    })
}
