use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_poly, rational_roots, QMatrix};
use crate::ring::{LinComb, Rational};

use super::eisenstein::{bernoulli, eisenstein_rational};
use super::hecke::hecke_matrix;
use super::mono::{check_weight, monomials_of_weight, Mono};
use super::poly::{mul, theta_pow, QmPolynomial};
use super::reconstruct::{lift, rational_from_qexp, rational_qexp};

type RPoly = LinComb<Mono, Rational>;

fn coords(f: &RPoly, monos: &[Mono]) -> Vec<Rational> {
    monos.iter().map(|m| f.coeff(m)).collect()
}

fn from_coords(v: &[Rational], monos: &[Mono]) -> RPoly {
    LinComb::from_terms(monos.iter().cloned().zip(v.iter().cloned()))
}

fn delta_rational() -> RPoly {
    let q = Rational::new(1.into(), 1728.into());
    LinComb::from_terms([(Mono::new(0, 3, 0), q.clone()), (Mono::new(0, 0, 2), -q)])
}

/// The normalized Eisenstein series `−B_k/(2k) + Σ σ_{k−1}(n) qⁿ`.
pub fn normalized_eisenstein(k: u32) -> Result<RPoly> {
    let order = monomials_of_weight(k).len() + 2;
    let e = rational_from_qexp(k, &eisenstein_rational(k, order)?)?;
    Ok(e.scale_rat(&(-bernoulli(k as usize) / Rational::from_integer((2 * k).into()))))
}

/// Eigenforms of `M_k`, Eisenstein first, then cusp forms by increasing `T_2`-eigenvalue.
pub fn modular_eigenbasis_rational(k: u32) -> Result<Vec<RPoly>> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::BadWeight(k as i64));
    }
    let mut out = vec![normalized_eisenstein(k)?];
    if k < 12 {
        return Ok(out);
    }
    let monos = monomials_of_weight(k);
    let cusp: Vec<RPoly> = monomials_of_weight(k - 12)
        .into_iter()
        .filter(Mono::is_modular)
        .map(|m| mul(&delta_rational(), &LinComb::basis(m)))
        .collect();
    if cusp.is_empty() {
        return Ok(out);
    }
    let r = cusp.len();
    // T_2 C = C A, solved on the columns of the cusp basis
    let t2 = hecke_matrix(2, k)?;
    let c = QMatrix::from_rows((0..monos.len()).map(|i| cusp.iter().map(|f| f.coeff(&monos[i])).collect()).collect());
    let tc = t2.mul(&c);
    let mut a = QMatrix::zeros(r, r);
    for j in 0..r {
        let col: Vec<Rational> = (0..monos.len()).map(|i| tc.get(i, j).clone()).collect();
        let x = c.solve(&col).ok_or_else(|| Error::InternalMismatch("cusp space is not Hecke stable".into()))?;
        for (i, v) in x.into_iter().enumerate() {
            a.set(i, j, v);
        }
    }
    let cp = a.charpoly();
    let mut roots = rational_roots(&cp).ok_or_else(|| Error::IrrationalEigenvalues {
        weight: k,
        char_poly: format_poly(&cp),
    })?;
    roots.sort();
    roots.dedup();
    for lambda in roots {
        let shifted = a.sub(&QMatrix::identity(r).scale(&lambda));
        let ns = shifted.nullspace();
        if ns.len() != 1 {
            return Err(Error::InternalMismatch(format!("eigenvalue {lambda} of T_2 in weight {k} is not simple")));
        }
        let mut f = LinComb::zero();
        for (g, x) in cusp.iter().zip(&ns[0]) {
            f.add_scaled(g, x);
        }
        let a1 = rational_qexp(&f, 1)[1].clone();
        out.push(f.scale_rat(&(Rational::one() / a1)));
    }
    Ok(out)
}

pub fn modular_eigenbasis(k: i64) -> Result<Vec<QmPolynomial>> {
    let k = check_weight(k)?;
    Ok(modular_eigenbasis_rational(k)?.iter().map(lift).collect())
}

/// `∪_ℓ θ^ℓ(B_{k−2ℓ})` with `B_2 = {E2}` and `B_0 = {1}`, ordered by `ℓ`.
pub fn quasimodular_eigenbasis_rational(k: u32) -> Result<Vec<RPoly>> {
    if k % 2 != 0 {
        return Err(Error::BadWeight(k as i64));
    }
    if k == 0 {
        return Ok(vec![LinComb::basis(Mono::ONE)]);
    }
    let mut out = Vec::new();
    for l in 0..k / 2 {
        let base = k - 2 * l;
        let stratum = match base {
            2 => vec![LinComb::basis(Mono::E2)],
            _ => modular_eigenbasis_rational(base)?,
        };
        out.extend(stratum.iter().map(|f| theta_pow(f, l)));
    }
    Ok(out)
}

pub fn quasimodular_eigenbasis(k: i64) -> Result<Vec<QmPolynomial>> {
    let k = check_weight(k)?;
    Ok(quasimodular_eigenbasis_rational(k)?.iter().map(lift).collect())
}

/// `T_m`-eigenvalue of a rational eigenform, read off from the Hecke matrix.
pub fn rational_eigenvalue(m: u64, f: &RPoly) -> Result<Option<Rational>> {
    let Some(k) = f.keys().next().map(Mono::weight) else {
        return Ok(None);
    };
    let monos = monomials_of_weight(k);
    let v = coords(f, &monos);
    let tv = hecke_matrix(m, k)?.mul_vec(&v);
    let (i, lead) = v.iter().enumerate().find(|(_, x)| !x.is_zero()).unwrap();
    let lambda = &tv[i] / lead;
    let g = from_coords(&tv, &monos);
    Ok((g == f.scale_rat(&lambda)).then_some(lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::int;

    #[test]
    fn modular_examples() {
        let b4 = modular_eigenbasis_rational(4).unwrap();
        assert_eq!(b4.len(), 1);
        assert_eq!(b4[0].keys().collect::<Vec<_>>(), vec![&Mono::E4]);
        let b12 = modular_eigenbasis_rational(12).unwrap();
        let ev: Vec<_> = b12.iter().map(|f| rational_eigenvalue(2, f).unwrap().unwrap()).collect();
        assert_eq!(ev, vec![int(2049), int(-24)]);
        assert_eq!(b12[1], delta_rational());
        match modular_eigenbasis_rational(24) {
            Err(Error::IrrationalEigenvalues { weight: 24, char_poly }) => {
                assert_eq!(char_poly, "x^2 - 1080*x - 20468736")
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quasimodular_examples() {
        let b = quasimodular_eigenbasis_rational(6).unwrap();
        let ev: Vec<_> = b.iter().map(|f| rational_eigenvalue(2, f).unwrap().unwrap()).collect();
        assert_eq!(ev, vec![int(33), int(18), int(12)]);
        assert_eq!(quasimodular_eigenbasis_rational(2).unwrap(), vec![LinComb::basis(Mono::E2)]);
        assert_eq!(quasimodular_eigenbasis_rational(4).unwrap().len(), 2);
    }
}
