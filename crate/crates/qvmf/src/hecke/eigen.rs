use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisenberg::{partitions, FockVector, Partition};
use crate::linalg::{format_poly, poly_from_roots, QMatrix};
use crate::qmf::eigen::{modular_eigenbasis_rational, normalized_eisenstein, rational_eigenvalue};
use crate::qmf::mono::{modular_monomials, Mono};
use crate::qmf::reconstruct::lift;
use crate::qv::form::{normalize_leading, qv_term, render, tensor, to_json};
use crate::qv::{mforms_basis, nabla, p_inv, p_iso, QVForm};
use crate::ring::rational::{fmt_rational, int, pow_i};
use crate::ring::{LaurentScalar, LinComb, Rational};

use super::ops::{components, t_prime, t_prime_matrix};

type RPoly = LinComb<Mono, Rational>;

/// Scalar eigenforms spanning `M_r`; `{1}` in weight 0 and nothing in weight 2.
fn scalar_stratum(r: u32) -> Result<Vec<RPoly>> {
    match r {
        0 => Ok(vec![LinComb::basis(Mono::ONE)]),
        2 => Ok(Vec::new()),
        _ => modular_eigenbasis_rational(r),
    }
}

/// One seed `e ⊗ v` of `M ⊗ V` with `e` a normalized scalar eigenform.
#[derive(Clone, Debug)]
struct Seed {
    scalar: RPoly,
    scalar_weight: u32,
    fock: Partition,
}

impl Seed {
    fn degree(&self) -> u32 {
        self.fock.size()
    }

    fn tensor(&self) -> QVForm {
        tensor(&lift(&self.scalar), &FockVector::basis(self.fock.clone()))
    }

    /// `m^ℓ λ_m(e)`.
    fn eigenvalue(&self, m: u64) -> Result<Rational> {
        let lam = rational_eigenvalue(m, &self.scalar)?
            .ok_or_else(|| Error::InternalMismatch("scalar stratum element is not an eigenform".into()))?;
        Ok(lam * pow_i(m as i64, self.degree() as i64))
    }
}

fn seeds(k: u32) -> Result<Vec<Seed>> {
    let mut out = Vec::new();
    for l in 0..=k / 2 {
        let r = k - 2 * l;
        let stratum = scalar_stratum(r)?;
        for fock in partitions(l) {
            for e in &stratum {
                out.push(Seed {
                    scalar: e.clone(),
                    scalar_weight: r,
                    fock: fock.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Coordinates of `f ∈ M_k(V)` in the basis `P(e ⊗ v)` of the seeds.
fn p_coords(seeds: &[Seed], f: &QVForm) -> Result<Vec<LaurentScalar>> {
    let flat = p_inv(f)?;
    let comps = components(&flat);
    let mut coords = vec![LaurentScalar::zero(); seeds.len()];
    // group seeds by Fock state; each group spans M_r ⊗ v
    let mut by_fock: std::collections::BTreeMap<&Partition, Vec<usize>> = Default::default();
    for (i, s) in seeds.iter().enumerate() {
        by_fock.entry(&s.fock).or_default().push(i);
    }
    for (fock, idx) in by_fock {
        let Some(g) = comps.get(fock) else { continue };
        let r = seeds[idx[0]].scalar_weight;
        let monos = modular_monomials(r);
        let basis = QMatrix::from_rows(
            monos
                .iter()
                .map(|m| idx.iter().map(|&i| seeds[i].scalar.coeff(m)).collect())
                .collect(),
        );
        let mut parts: std::collections::BTreeMap<i32, Vec<Rational>> = Default::default();
        for (m, c) in g.iter() {
            let row = monos.iter().position(|x| x == m).ok_or(Error::HasE2)?;
            for (e, x) in c.terms() {
                parts.entry(e).or_insert_with(|| vec![Rational::zero(); monos.len()])[row] = x.clone();
            }
        }
        for (e, rhs) in parts {
            let x = basis
                .solve(&rhs)
                .ok_or_else(|| Error::InternalMismatch("component outside the scalar eigenbasis".into()))?;
            for (&i, xi) in idx.iter().zip(x) {
                coords[i] += &LaurentScalar::monomial(xi, e);
            }
        }
    }
    Ok(coords)
}

/// A simultaneous eigenvector of every `T′_m` on `M_k(V)`.
#[derive(Clone, Debug)]
pub struct EigenState {
    pub vector: QVForm,
    pub weight: u32,
    scalar: RPoly,
    scalar_weight: u32,
    fock: Partition,
    /// True when the vector is `P(e ⊗ v)` with no lower-degree correction.
    pub uncorrected: bool,
}

impl EigenState {
    fn seed(&self) -> Seed {
        Seed {
            scalar: self.scalar.clone(),
            scalar_weight: self.scalar_weight,
            fock: self.fock.clone(),
        }
    }

    pub fn eigenvalue(&self, m: u64) -> Result<Rational> {
        self.seed().eigenvalue(m)
    }

    pub fn fock(&self) -> &Partition {
        &self.fock
    }

    pub fn scalar_weight(&self) -> u32 {
        self.scalar_weight
    }

    /// Formula for `λ_m` in terms of classical data.
    pub fn description(&self) -> String {
        let l = self.fock.size() as i64;
        let r = self.scalar_weight;
        let pre = |e: i64| match e {
            0 => String::new(),
            1 => "m*".into(),
            e => format!("m^{e}*"),
        };
        if r == 0 {
            return format!("{}sigma_1(m)", pre(l - 1));
        }
        let eis = normalized_eisenstein(r).ok();
        if eis.as_ref() == Some(&self.scalar) {
            format!("{}sigma_{}(m)", pre(l), r - 1)
        } else {
            format!("{}a_m(cusp form of weight {r})", pre(l))
        }
    }

    pub fn is_eigenvector_for(&self, m: u64) -> Result<bool> {
        Ok(t_prime(m, &self.vector)? == self.vector.scale_rat(&self.eigenvalue(m)?))
    }
}

/// Complete `T′`-eigenbasis of `M_k(V)`.
///
/// `T′_m P(e⊗v)` equals `m^ℓ λ_m(e) P(e⊗v)` only up to terms of lower Fock degree, so each
/// eigenvector is `P(e⊗v)` plus a correction solved by back-substitution against `T′_2`.
pub fn eigenstates(k: u32) -> Result<Vec<EigenState>> {
    let seeds = seeds(k)?;
    let n = seeds.len();
    let gens: Vec<QVForm> = seeds.iter().map(|s| p_iso(&s.tensor())).collect::<Result<_>>()?;
    // A[j][i] = coordinate of T′_2 g_i along g_j
    let mut a = vec![vec![LaurentScalar::zero(); n]; n];
    for (i, g) in gens.iter().enumerate() {
        for (j, c) in p_coords(&seeds, &t_prime(2, g)?)?.into_iter().enumerate() {
            a[j][i] = c;
        }
    }
    let chi: Vec<Rational> = seeds.iter().map(|s| s.eigenvalue(2)).collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            let d = seeds[j].degree().cmp(&seeds[i].degree());
            let expect_zero = match d {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => i != j,
                std::cmp::Ordering::Less => false,
            };
            if expect_zero && !a[j][i].is_zero() {
                return Err(Error::InternalMismatch(format!("T'_2 is not triangular at ({j}, {i})")));
            }
        }
        if a[i][i] != LaurentScalar::constant(chi[i].clone()) {
            return Err(Error::InternalMismatch(format!("unexpected diagonal entry for seed {i}")));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(seeds[i].degree()));
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = vec![LaurentScalar::zero(); n];
        x[i] = LaurentScalar::one();
        for &j in &order {
            if seeds[j].degree() >= seeds[i].degree() {
                continue;
            }
            let mut num = a[j][i].clone();
            for l in 0..n {
                let dl = seeds[l].degree();
                if l != i && dl > seeds[j].degree() && dl < seeds[i].degree() && !x[l].is_zero() {
                    num += &(&a[j][l] * &x[l]);
                }
            }
            if num.is_zero() {
                continue;
            }
            let gap = &chi[i] - &chi[j];
            if gap.is_zero() {
                return Err(Error::InternalMismatch(format!("T'_2 is not diagonalizable in weight {k}")));
            }
            x[j] = num.scale(&(Rational::from_integer(1.into()) / gap));
        }
        let uncorrected = x.iter().enumerate().all(|(j, c)| j == i || c.is_zero());
        let mut v = QVForm::zero();
        for (g, c) in gens.iter().zip(&x) {
            v.add_scaled(g, c);
        }
        out.push(EigenState {
            vector: normalize_leading(&v)?,
            weight: k,
            scalar: seeds[i].scalar.clone(),
            scalar_weight: seeds[i].scalar_weight,
            fock: seeds[i].fock.clone(),
            uncorrected,
        });
    }
    Ok(out)
}

/// `T′_m(∇_k f) = m λ_m ∇_k f`.
/// `uθ + L(−1)`: the raising operator without the `E2` correction of `∇_k`.
pub fn hecke_raise(f: &QVForm) -> QVForm {
    &crate::qv::ops::on_q(f, crate::qmf::poly::theta).scale(&LaurentScalar::u()) + &crate::qv::ops::l_minus1(f)
}

/// `T′_m(uθf + L(−1)f) = mλ_m (uθf + L(−1)f)`. The `E2` term of `∇_k` does not commute with
/// `T_m`, so the corrected `∇_k f` is generally not an eigenform (`∇E4 ∝ E6`).
pub fn nabla_eigen_check(f: &EigenState, m: u64) -> Result<bool> {
    let g = hecke_raise(&f.vector);
    Ok(t_prime(m, &g)? == g.scale_rat(&(int(m as i64) * f.eigenvalue(m)?)))
}

/// Same test with the modularity-preserving `∇_k`.
pub fn corrected_nabla_eigen_check(f: &EigenState, m: u64) -> Result<bool> {
    let g = nabla(&f.vector, f.weight)?;
    Ok(t_prime(m, &g)? == g.scale_rat(&(int(m as i64) * f.eigenvalue(m)?)))
}

/// Local factor `(1 − λ_p X + p^{k−1} X²)⁻¹`, `X = p^{−s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFactor {
    pub p: u64,
    pub weight: u32,
    pub lambda: String,
    pub p_power_exponent: i64,
    /// `(a, b)` with `1 − λX + p^{k−1}X² = (1 − p^a X)(1 − p^b X)`, when it splits that way.
    pub split: Option<(i64, i64)>,
}

pub fn euler_factor(lambda: &Rational, p: u64, k: u32) -> Result<EulerFactor> {
    if !crate::ring::rational::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let e = k as i64 - 1;
    let split = (0..=e / 2).map(|a| (a, e - a)).find(|&(a, b)| &(pow_i(p as i64, a) + pow_i(p as i64, b)) == lambda);
    Ok(EulerFactor {
        p,
        weight: k,
        lambda: fmt_rational(lambda),
        p_power_exponent: e,
        split,
    })
}

/// The multiset `{m^ℓ e_m}` over strata predicts the characteristic polynomial of `T′_m`.
pub fn multiplicity_law_check(m: u64, k: u32) -> Result<bool> {
    let mut roots = Vec::new();
    for s in seeds(k)? {
        roots.push(s.eigenvalue(m)?);
    }
    let actual = t_prime_matrix(m, k)?.graded_similar()?.charpoly();
    Ok(actual == poly_from_roots(&roots))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationFailure {
    pub input: String,
    pub difference: String,
}

/// Compares `T′_m ∘ P` with `P ∘ T′_m` on the monomial basis of `M_k ⊗ V`.
pub fn p_commutation_failures(k: u32, m: u64) -> Result<Vec<CommutationFailure>> {
    let mut out = Vec::new();
    for l in 0..=k / 2 {
        for mono in modular_monomials(k - 2 * l) {
            for fock in partitions(l) {
                let x = qv_term(mono, fock.clone(), LaurentScalar::one());
                let lhs = t_prime(m, &p_iso(&x)?)?;
                let rhs = p_iso(&t_prime(m, &x)?)?;
                if lhs != rhs {
                    out.push(CommutationFailure {
                        input: render(&x),
                        difference: render(&(&lhs - &rhs)),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenPair {
    pub lambda: String,
    pub formula: String,
    pub vector: serde_json::Value,
    pub display: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeReport {
    pub m: u64,
    pub weight: u32,
    pub matrix: Vec<Vec<String>>,
    pub eigenpairs: Vec<EigenPair>,
    pub relations_verified: Vec<String>,
}

pub fn hecke_report(m: u64, k: u32) -> Result<HeckeReport> {
    let mat = t_prime_matrix(m, k)?;
    let n = mat.dim();
    let matrix = (0..n).map(|i| (0..n).map(|j| mat.get(i, j).to_string()).collect()).collect();
    let basis = mforms_basis(k)?;
    let mut eigenpairs = Vec::new();
    for st in eigenstates(k)? {
        let lam = st.eigenvalue(m)?;
        // the matrix acts on basis coordinates
        let coords = super::ops::mforms_coords(k, &st.vector)?;
        let img = mat.mul_vec(&coords);
        let scaled: Vec<LaurentScalar> = coords.iter().map(|c| c.scale(&lam)).collect();
        if img != scaled {
            return Err(Error::InternalMismatch("eigenpair fails against the T' matrix".into()));
        }
        eigenpairs.push(EigenPair {
            lambda: fmt_rational(&lam),
            formula: st.description(),
            vector: to_json(&st.vector),
            display: render(&st.vector),
        });
    }
    debug_assert_eq!(eigenpairs.len(), basis.len());
    let mut relations = Vec::new();
    if m != 2 && super::ops::commutation_check(&[2, m], k)? {
        relations.push(format!("T'_2 T'_{m} = T'_{m} T'_2"));
    }
    if crate::ring::rational::is_prime(m) && m * m <= 27 && super::ops::relation_check(m, 1, k)? {
        relations.push(format!("T'_{m} T'_{m} = T'_{} + {m}^{} T'_1", m * m, k as i64 - 1));
    }
    if multiplicity_law_check(m, k)? {
        let cp = t_prime_matrix(m, k)?.graded_similar()?.charpoly();
        relations.push(format!("charpoly(T'_{m}) = {}", format_poly(&cp)));
    }
    Ok(HeckeReport {
        m,
        weight: k,
        matrix,
        eigenpairs,
        relations_verified: relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;

    #[test]
    fn small_eigenstates() {
        let e0 = eigenstates(0).unwrap();
        assert_eq!(e0.len(), 1);
        assert_eq!(e0[0].eigenvalue(5).unwrap(), rat(6, 5));
        let e2 = eigenstates(2).unwrap();
        assert_eq!(e2.len(), 1);
        for m in 1..=6 {
            assert_eq!(e2[0].eigenvalue(m).unwrap(), Rational::from_integer(crate::ring::rational::sigma(1, m)));
            assert!(e2[0].is_eigenvector_for(m).unwrap());
        }
        let e4 = eigenstates(4).unwrap();
        let mut ev: Vec<_> = e4.iter().map(|s| s.eigenvalue(2).unwrap()).collect();
        ev.sort();
        assert_eq!(ev, vec![int(6), int(6), int(9)]);
        assert!(e4.iter().all(|s| s.uncorrected));
    }

    #[test]
    fn weight_eight_needs_corrections() {
        let e8 = eigenstates(8).unwrap();
        assert_eq!(e8.len(), 9);
        assert!(e8.iter().any(|s| !s.uncorrected));
        for s in &e8 {
            for m in [2, 3, 5] {
                assert!(s.is_eigenvector_for(m).unwrap(), "{}", render(&s.vector));
            }
        }
    }

    #[test]
    fn euler_examples() {
        let f = euler_factor(&int(3), 2, 2).unwrap();
        assert_eq!((f.p_power_exponent, f.split), (1, Some((0, 1))));
        let d = euler_factor(&int(-24), 2, 12).unwrap();
        assert_eq!((d.lambda.as_str(), d.p_power_exponent, d.split), ("-24", 11, None));
        assert_eq!(euler_factor(&int(0), 2, 6).unwrap().p_power_exponent, 5);
    }

    #[test]
    fn p_does_not_commute_from_weight_six() {
        assert!(p_commutation_failures(4, 2).unwrap().is_empty());
        let f = p_commutation_failures(6, 2).unwrap();
        let h3 = f.iter().find(|c| c.input == "h(-3)").expect("weight-6 counterexample");
        assert_eq!(h3.difference, "1/8*u^2*E4*h(-1)");
        assert!(multiplicity_law_check(2, 6).unwrap());
    }
}
