use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::heisenberg::Partition;
use crate::linalg::LaurentDense;
use crate::qmf::hecke::hecke_tm_poly;
use crate::qmf::QmPolynomial;
use crate::qv::form::{canonical_terms, homogeneous_weight};
use crate::qv::{mforms_basis, QVForm, QvKey};
use crate::ring::rational::pow_i;
use crate::ring::LaurentScalar;

fn require_homogeneous(f: &QVForm) -> Result<()> {
    match homogeneous_weight(f) {
        Some(_) => Ok(()),
        None => Err(Error::InvalidArgument("Hecke operators act on homogeneous forms".into())),
    }
}

/// Splits `f = Σ g_λ ⊗ λ` by Fock basis state.
pub fn components(f: &QVForm) -> BTreeMap<Partition, QmPolynomial> {
    let mut out: BTreeMap<Partition, QmPolynomial> = BTreeMap::new();
    for (k, c) in f.iter() {
        out.entry(k.part.clone()).or_default().add_term(k.mono, c.clone());
    }
    out
}

fn apply(m: u64, f: &QVForm, twist: bool) -> Result<QVForm> {
    require_homogeneous(f)?;
    let mut out = QVForm::zero();
    for (part, g) in components(f) {
        let mut img = hecke_tm_poly(m, &g)?;
        if twist {
            img = img.scale_rat(&pow_i(m as i64, part.size() as i64));
        }
        for (mono, c) in img.iter() {
            out.add_term(QvKey::new(*mono, part.clone()), c.clone());
        }
    }
    Ok(out)
}

/// `T_m` on each `Q`-component at its own weight, Fock part untouched.
pub fn t_m_componentwise(m: u64, f: &QVForm) -> Result<QVForm> {
    apply(m, f, false)
}

/// `T′_m = m^{L(0)} T_m`.
pub fn t_prime(m: u64, f: &QVForm) -> Result<QVForm> {
    apply(m, f, true)
}

/// Coordinates in the canonical basis of `M_k(V)`, read off at the pivot keys; errors if `f`
/// is not in the span.
pub fn mforms_coords(k: u32, f: &QVForm) -> Result<Vec<LaurentScalar>> {
    let basis = mforms_basis(k)?;
    let coords: Vec<LaurentScalar> = basis
        .iter()
        .map(|b| f.coeff(canonical_terms(b)[0].0))
        .collect();
    let mut back = QVForm::zero();
    for (b, c) in basis.iter().zip(&coords) {
        back.add_scaled(b, c);
    }
    if &back != f {
        return Err(Error::NotModular);
    }
    Ok(coords)
}

/// Matrix of `T′_m` on the canonical basis of `M_k(V)`; column `j` is the image of `b_j`.
pub fn t_prime_matrix(m: u64, k: u32) -> Result<LaurentDense> {
    let basis = mforms_basis(k)?;
    let n = basis.len();
    let mut mat = LaurentDense::zeros(n);
    for (j, b) in basis.iter().enumerate() {
        for (i, c) in mforms_coords(k, &t_prime(m, b)?)?.into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    Ok(mat)
}

/// `T′_p T′_{pⁿ} = T′_{pⁿ⁺¹} + p^{k−1} T′_{pⁿ⁻¹}` on `M_k(V)`.
pub fn relation_check(p: u64, n: u32, k: u32) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("relation needs n ≥ 1".into()));
    }
    let tp = t_prime_matrix(p, k)?;
    let lhs = tp.mul(&t_prime_matrix(p.pow(n), k)?);
    let rhs = t_prime_matrix(p.pow(n + 1), k)?.add(&t_prime_matrix(p.pow(n - 1), k)?.scale(&pow_i(p as i64, k as i64 - 1)));
    Ok(lhs == rhs)
}

/// `T′_m T′_n = T′_{mn}` for coprime `m, n`.
pub fn coprime_relation_check(m: u64, n: u64, k: u32) -> Result<bool> {
    if crate::ring::rational::gcd_u64(m, n) != 1 {
        return Err(Error::InvalidArgument(format!("{m} and {n} are not coprime")));
    }
    Ok(t_prime_matrix(m, k)?.mul(&t_prime_matrix(n, k)?) == t_prime_matrix(m * n, k)?)
}

/// Pairwise commutation of `T′_m` for the given indices on `M_k(V)`.
pub fn commutation_check(ms: &[u64], k: u32) -> Result<bool> {
    let mats: Vec<LaurentDense> = ms.iter().map(|&m| t_prime_matrix(m, k)).collect::<Result<_>>()?;
    Ok(mats
        .iter()
        .enumerate()
        .all(|(i, a)| mats[i + 1..].iter().all(|b| a.commutes_with(b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmf::Mono;
    use crate::qv::form::qv_term;
    use crate::qv::p_iso;
    use crate::ring::rational::rat;

    fn t(m: Mono, p: &str) -> QVForm {
        qv_term(m, p.parse().unwrap(), LaurentScalar::one())
    }

    #[test]
    fn componentwise_examples() {
        let h = t(Mono::ONE, "h(-1)");
        assert_eq!(t_m_componentwise(2, &h).unwrap(), h.scale_rat(&rat(3, 2)));
        assert_eq!(t_m_componentwise(2, &t(Mono::E2, "1")).unwrap(), t(Mono::E2, "1").scale_rat(&rat(3, 1)));
        assert_eq!(t_m_componentwise(3, &t(Mono::ONE, "1")).unwrap(), t(Mono::ONE, "1").scale_rat(&rat(4, 3)));
    }

    #[test]
    fn twisted_examples() {
        let h = t(Mono::ONE, "h(-1)");
        assert_eq!(t_prime(2, &h).unwrap(), h.scale_rat(&rat(3, 1)));
        assert_eq!(t_prime(2, &t(Mono::ONE, "1")).unwrap(), t(Mono::ONE, "1").scale_rat(&rat(3, 2)));
        let ph2 = p_iso(&t(Mono::ONE, "h(-2)")).unwrap();
        assert_eq!(t_prime(2, &ph2).unwrap(), ph2.scale_rat(&rat(6, 1)));
    }

    #[test]
    fn relations() {
        assert!(relation_check(2, 1, 8).unwrap());
        assert!(relation_check(3, 1, 4).unwrap());
        assert!(coprime_relation_check(2, 3, 4).unwrap());
        assert!(commutation_check(&[2, 3, 4, 5], 6).unwrap());
    }
}
