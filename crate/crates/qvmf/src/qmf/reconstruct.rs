use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::ring::{LaurentScalar, LinComb, Rational};

use super::eisenstein::monomial_series;
use super::mono::{monomials_of_weight, Mono};
use super::poly::QmPolynomial;
use super::series::QSeriesTrunc;

/// Rational q-expansion of a polynomial with rational coefficients.
pub fn rational_qexp(f: &LinComb<Mono, Rational>, order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (m, c) in f.iter() {
        let s = monomial_series(*m, order);
        for (n, x) in s.iter().take(order + 1).enumerate() {
            if !x.is_zero() {
                out[n] += c * Rational::from_integer(x.clone());
            }
        }
    }
    out
}

/// Substitutes the Eisenstein expansions into `f`.
pub fn qexp_of_poly(f: &QmPolynomial, order: usize) -> QSeriesTrunc {
    let mut parts: BTreeMap<i32, LinComb<Mono, Rational>> = BTreeMap::new();
    for (m, c) in f.iter() {
        for (e, r) in c.terms() {
            parts.entry(e).or_default().add_term(*m, r.clone());
        }
    }
    let by_power: BTreeMap<i32, Vec<Rational>> =
        parts.iter().map(|(e, p)| (*e, rational_qexp(p, order))).collect();
    QSeriesTrunc::from_u_powers(order, &by_power)
}

/// Left inverse of the expansion map on a weight slice, read off from pivot rows.
struct SliceSolver {
    monos: Vec<Mono>,
    pivot_rows: Vec<usize>,
    inverse: QMatrix,
}

static SOLVERS: LazyLock<RwLock<HashMap<u32, Arc<SliceSolver>>>> = LazyLock::new(|| RwLock::new(HashMap::new()));

fn solver(k: u32) -> Arc<SliceSolver> {
    if let Some(s) = SOLVERS.read().unwrap().get(&k) {
        return s.clone();
    }
    let monos = monomials_of_weight(k);
    let d = monos.len();
    let mut probe = d + 2;
    let built = loop {
        let cols: Vec<_> = monos.iter().map(|m| monomial_series(*m, probe)).collect();
        let rows: Vec<Vec<Rational>> = (0..=probe)
            .map(|n| cols.iter().map(|s| Rational::from_integer(s[n].clone())).collect())
            .collect();
        // greedy choice of independent rows in increasing q-order, by incremental elimination
        let mut chosen: Vec<usize> = Vec::new();
        let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
        for (n, row) in rows.iter().enumerate() {
            let mut v = row.clone();
            for (p, e) in &echelon {
                if !v[*p].is_zero() {
                    let f = v[*p].clone();
                    for (x, y) in v.iter_mut().zip(e) {
                        *x -= &f * y;
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                let inv = v[p].recip();
                v.iter_mut().for_each(|x| *x *= &inv);
                echelon.push((p, v));
                chosen.push(n);
                if chosen.len() == d {
                    break;
                }
            }
        }
        let basis = QMatrix::from_rows(chosen.iter().map(|&n| rows[n].clone()).collect());
        if chosen.len() == d {
            let inverse = basis.inverse().expect("independent rows form an invertible block");
            break SliceSolver {
                monos,
                pivot_rows: chosen,
                inverse,
            };
        }
        probe *= 2;
    };
    let built = Arc::new(built);
    SOLVERS.write().unwrap().insert(k, built.clone());
    built
}

/// Smallest order at which the weight-`k` expansion map becomes injective.
pub fn determining_order(k: u32) -> usize {
    *solver(k).pivot_rows.last().unwrap_or(&0)
}

/// Reconstructs a weight-`k` polynomial from rational expansion data.
pub fn rational_from_qexp(k: u32, s: &[Rational]) -> Result<LinComb<Mono, Rational>> {
    let d = monomials_of_weight(k).len();
    let have = s.len().saturating_sub(1);
    if have < d {
        return Err(Error::InsufficientOrder { needed: d, have });
    }
    let sol = solver(k);
    let needed = *sol.pivot_rows.last().unwrap();
    if needed > have {
        return Err(Error::InsufficientOrder { needed, have });
    }
    let rhs: Vec<Rational> = sol.pivot_rows.iter().map(|&n| s[n].clone()).collect();
    let x = sol.inverse.mul_vec(&rhs);
    let f = LinComb::from_terms(sol.monos.iter().cloned().zip(x));
    if rational_qexp(&f, have) != s[..=have] {
        return Err(Error::NotQuasiModular(k));
    }
    Ok(f)
}

/// The unique weight-`k` element of `Q` with the given expansion.
pub fn poly_from_qexp(k: u32, s: &QSeriesTrunc) -> Result<QmPolynomial> {
    let d = monomials_of_weight(k).len();
    if s.order() < d {
        return Err(Error::InsufficientOrder {
            needed: d,
            have: s.order(),
        });
    }
    let mut out = QmPolynomial::zero();
    let parts = s.by_u_power();
    if parts.is_empty() {
        // zero series: still validate the order bound against the weight
        rational_from_qexp(k, &vec![Rational::zero(); s.order() + 1])?;
    }
    for (e, v) in parts {
        let f = rational_from_qexp(k, &v)?;
        for (m, r) in f.iter() {
            out.add_term(*m, LaurentScalar::monomial(r.clone(), e));
        }
    }
    Ok(out)
}

/// Lifts a rational polynomial to Laurent coefficients.
pub fn lift<C: crate::ring::Coeff>(f: &LinComb<Mono, Rational>) -> LinComb<Mono, C> {
    LinComb::from_terms(f.iter().map(|(m, r)| (*m, C::from_rational(r.clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmf::poly::{e2, e4, e6, mul, pow};
    use crate::ring::rational::rat;

    #[test]
    fn examples() {
        assert_eq!(qexp_of_poly(&e2(), 1), QSeriesTrunc::from_ints(&[1, -24]));
        assert!(qexp_of_poly(&QmPolynomial::zero(), 5).is_zero());
        let th = &pow(&e2(), 2).scale_rat(&rat(1, 12)) - &e4().scale_rat(&rat(1, 12));
        assert_eq!(qexp_of_poly(&th, 2), QSeriesTrunc::from_ints(&[0, -24, -144]));
    }

    #[test]
    fn inverse_examples() {
        let e2sq = pow(&e2(), 2);
        assert_eq!(poly_from_qexp(4, &qexp_of_poly(&e2sq, 8)).unwrap(), e2sq);
        let s = crate::qmf::eisenstein::eisenstein_qexp(2, 6).unwrap();
        assert_eq!(poly_from_qexp(2, &s).unwrap(), e2());
        let mut bogus = vec![LaurentScalar::zero(); 8];
        bogus[0] = LaurentScalar::one();
        bogus[1] = LaurentScalar::one();
        assert_eq!(poly_from_qexp(4, &QSeriesTrunc::new(bogus)), Err(Error::NotQuasiModular(4)));
        assert!(matches!(
            poly_from_qexp(4, &QSeriesTrunc::from_ints(&[1])),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn laurent_coefficients_round_trip() {
        let f = &mul(&e4(), &e2()).scale(&"u^-1".parse().unwrap()) + &e6().scale(&"1/2*u^3 - 7".parse().unwrap());
        assert_eq!(poly_from_qexp(6, &qexp_of_poly(&f, 12)).unwrap(), f);
    }

    #[test]
    fn expansion_determines_the_slice_early() {
        for k in (0..=40).step_by(2) {
            let d = monomials_of_weight(k).len();
            assert!(determining_order(k) <= d, "weight {k}: {} > {d}", determining_order(k));
        }
    }
}
