use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisenberg::fock::{l_op, states_up_to, RFock};
use crate::heisenberg::Partition;
use crate::linalg::QMatrix;
use crate::ring::rational::int;
use crate::ring::Rational;

use super::matrix::IntMatrix2;

/// Exact matrix of an operator on `F_N S` in the basis `states_up_to(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMatrix {
    pub trunc: u32,
    pub basis: Vec<Partition>,
    pub matrix: QMatrix,
}

impl EndoMatrix {
    pub fn from_operator(trunc: u32, op: impl Fn(&RFock) -> RFock) -> Self {
        let basis = states_up_to(trunc);
        let idx: HashMap<&Partition, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut matrix = QMatrix::zeros(basis.len(), basis.len());
        for (j, p) in basis.iter().enumerate() {
            for (q, c) in op(&RFock::basis(p.clone())).iter() {
                // components above the truncation are dropped
                if let Some(&i) = idx.get(q) {
                    matrix.set(i, j, c.clone());
                }
            }
        }
        Self { trunc, basis, matrix }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            trunc: self.trunc,
            basis: self.basis.clone(),
            matrix: self.matrix.mul(&o.matrix),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Degree-`n` diagonal block is `s^n · Id` and nothing raises degree.
    pub fn is_block_unitriangular(&self, s: &Rational) -> bool {
        let deg: Vec<u32> = self.basis.iter().map(Partition::size).collect();
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let e = self.matrix.get(i, j);
                if deg[i] > deg[j] {
                    e.is_zero()
                } else if deg[i] == deg[j] {
                    *e == if i == j { pow_i_rat(s, deg[i]) } else { Rational::zero() }
                } else {
                    true
                }
            })
        })
    }
}

fn pow_i_rat(s: &Rational, n: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..n {
        out *= s;
    }
    out
}

/// `e^{x L(1)} v`; the series stops by nilpotency.
pub fn exp_l1(x: &Rational, v: &RFock) -> RFock {
    let mut out = v.clone();
    let mut term = v.clone();
    let mut n = 0i64;
    loop {
        n += 1;
        term = l_op(1, &term).scale_rat(&(x / int(n)));
        if term.is_zero() {
            return out;
        }
        out.add_assign(&term);
    }
}

/// `s^{L(0)} v`.
pub fn scale_by_degree(s: &Rational, v: &RFock) -> RFock {
    v.map_rational(|p| RFock::term(p.clone(), pow_i_rat(s, p.size())))
}

/// `K(γ,τ) v = e^{−det(γ)⁻¹ c j L(1)} j^{−2L(0)} det(γ)^{L(0)} v`, rightmost factor first.
pub fn apply_k(g: &IntMatrix2, tau: &Rational, v: &RFock) -> Result<RFock> {
    let j = g.j(tau)?;
    let det = int(g.det());
    let s = &det / (&j * &j);
    let x = -(int(g.c) * &j) / &det;
    Ok(exp_l1(&x, &scale_by_degree(&s, v)))
}

fn check_trunc(trunc: u32, max: u32) -> Result<()> {
    if trunc > max {
        return Err(Error::InvalidArgument(format!("truncation {trunc} exceeds {max}")));
    }
    Ok(())
}

/// Matrix of `K(γ,τ)` on `F_N S`.
pub fn cocycle_k(g: &IntMatrix2, tau: &Rational, trunc: u32) -> Result<EndoMatrix> {
    check_trunc(trunc, 8)?;
    g.j(tau)?;
    Ok(EndoMatrix::from_operator(trunc, |v| apply_k(g, tau, v).expect("pole excluded above")))
}

/// Entries of `K` are polynomials of degree at most `4N + 2` in `τ` after clearing `j`.
pub fn tau_degree_bound(trunc: u32) -> usize {
    4 * trunc as usize + 2
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub passed: bool,
    pub samples: usize,
    pub degree_bound: usize,
    pub trunc: u32,
}

impl IdentityReport {
    /// Pass requires exact agreement and more samples than the degree bound.
    pub fn certified(&self) -> bool {
        self.passed && self.samples > self.degree_bound
    }
}

/// `K(αβ,τ) = K(α,βτ) K(β,τ)` on `F_N S` at each sample.
pub fn cocycle_identity_check(alpha: &IntMatrix2, beta: &IntMatrix2, samples: &[Rational], trunc: u32) -> Result<bool> {
    check_trunc(trunc, 6)?;
    let ab = alpha.mul(beta);
    for tau in samples {
        let lhs = cocycle_k(&ab, tau, trunc)?;
        let rhs = cocycle_k(alpha, &beta.apply(tau)?, trunc)?.mul(&cocycle_k(beta, tau, trunc)?);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `γ·(τ, v) = (γτ, K(γ,τ)v)`.
pub fn act(g: &IntMatrix2, point: (&Rational, &RFock)) -> Result<(Rational, RFock)> {
    let (tau, v) = point;
    Ok((g.apply(tau)?, apply_k(g, tau, v)?))
}

/// `α·(β·(τ,v)) = (αβ)·(τ,v)` on every basis vector of `F_N S`.
pub fn group_action_check(alpha: &IntMatrix2, beta: &IntMatrix2, samples: &[Rational], trunc: u32) -> Result<bool> {
    check_trunc(trunc, 6)?;
    let ab = alpha.mul(beta);
    for tau in samples {
        for p in states_up_to(trunc) {
            let v = RFock::basis(p);
            let (t1, w1) = act(beta, (tau, &v))?;
            let lhs = act(alpha, (&t1, &w1))?;
            let rhs = act(&ab, (tau, &v))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn cocycle_report(alpha: &IntMatrix2, beta: &IntMatrix2, samples: &[Rational], trunc: u32) -> Result<IdentityReport> {
    Ok(IdentityReport {
        identity: format!("K(ab,t) = K(a,bt)K(b,t) for a={alpha}, b={beta}"),
        passed: cocycle_identity_check(alpha, beta, samples, trunc)?,
        samples: samples.len(),
        degree_bound: tau_degree_bound(trunc),
        trunc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::matrix::panel_avoiding;
    use crate::ring::rational::rat;

    #[test]
    fn k_examples() {
        for n in 0..=4 {
            let k = cocycle_k(&IntMatrix2::T, &rat(3, 7), n).unwrap();
            assert_eq!(k.matrix, QMatrix::identity(k.dim()));
        }
        let d = IntMatrix2::new(2, 0, 0, 1).unwrap();
        let k = cocycle_k(&d, &rat(5, 3), 3).unwrap();
        assert!(k.is_block_unitriangular(&int(2)));
        let off_diagonal = (0..k.dim()).flat_map(|i| (0..k.dim()).map(move |j| (i, j))).filter(|(i, j)| i != j);
        assert!(off_diagonal.into_iter().all(|(i, j)| k.matrix.get(i, j).is_zero()));
        // F_2 S basis: 1, h(-1), h(-2), h(-1)^2
        let k = cocycle_k(&IntMatrix2::S, &int(2), 2).unwrap();
        assert!(k.is_block_unitriangular(&rat(1, 4)));
        let col = |p: &str| k.basis.iter().position(|q| q.to_string() == p).unwrap();
        // −2 L(1) applied after scaling h(−2) by 1/16: L(1)h(−2) = 2h(−1)
        assert_eq!(*k.matrix.get(col("h(-1)"), col("h(-2)")), rat(-4, 16));
        assert_eq!(*k.matrix.get(col("h(-1)"), col("h(-1)")), rat(1, 4));
    }

    #[test]
    fn cocycle_examples() {
        let t = IntMatrix2::T;
        let s = IntMatrix2::S;
        assert!(cocycle_identity_check(&t, &t, &[int(2), rat(1, 3)], 3).unwrap());
        let p = panel_avoiding(&[s, t, s.mul(&t)], 30);
        assert!(cocycle_identity_check(&s, &t, &p, 4).unwrap());
        let u = IntMatrix2::new(1, 3, 0, 2).unwrap();
        let p = panel_avoiding(&[s, u.mul(&s)], 30);
        assert!(cocycle_identity_check(&u, &s, &p, 3).unwrap());
        assert!(group_action_check(&t, &s, &p, 3).unwrap());
    }

    #[test]
    fn broken_factor_order_is_detected() {
        // swapping the exponential and the scaling must break the identity
        let s = IntMatrix2::S;
        let g = IntMatrix2::new(2, 1, 1, 1).unwrap();
        let tau = int(2);
        let swapped = |m: &IntMatrix2, t: &Rational| {
            let j = m.j(t).unwrap();
            let det = int(m.det());
            let x = -(int(m.c) * &j) / &det;
            EndoMatrix::from_operator(3, |v| scale_by_degree(&(&det / (&j * &j)), &exp_l1(&x, v)))
        };
        let lhs = swapped(&g.mul(&s), &tau);
        let rhs = swapped(&g, &s.apply(&tau).unwrap()).mul(&swapped(&s, &tau));
        assert_ne!(lhs, rhs);
    }
}
