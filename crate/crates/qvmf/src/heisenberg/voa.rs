use crate::linalg::QMatrix;
use crate::ring::{LinComb, Rational};

use super::fock::{l_op, RFock};
use super::modes::mode_basis;
use super::partition::{partition_count, partitions, Partition};

/// What the form-level code needs from a graded vertex algebra.
pub trait VoaView: Sync {
    type State: Ord + Clone + Send + Sync + std::fmt::Debug;

    fn graded_basis(&self, degree: u32) -> Vec<Self::State>;
    fn degree(&self, s: &Self::State) -> u32;
    /// `L(n)` for `n ∈ {−1, 0, 1}` on a basis state.
    fn l_basis(&self, n: i64, s: &Self::State) -> LinComb<Self::State, Rational>;
    fn mode_basis(&self, a: &Self::State, n: i64, b: &Self::State) -> LinComb<Self::State, Rational>;

    fn dim(&self, degree: u32) -> usize {
        self.graded_basis(degree).len()
    }
}

/// The rank-one Heisenberg algebra on its Fock space.
#[derive(Clone, Copy, Debug, Default)]
pub struct Heisenberg;

impl VoaView for Heisenberg {
    type State = Partition;

    fn graded_basis(&self, degree: u32) -> Vec<Partition> {
        partitions(degree)
    }

    fn degree(&self, s: &Partition) -> u32 {
        s.size()
    }

    fn l_basis(&self, n: i64, s: &Partition) -> RFock {
        l_op(n, &RFock::basis(s.clone()))
    }

    fn mode_basis(&self, a: &Partition, n: i64, b: &Partition) -> RFock {
        (*mode_basis(a, n, b)).clone()
    }

    fn dim(&self, degree: u32) -> usize {
        partition_count(degree as usize) as usize
    }
}

/// Matrix of `L(1): V_k → V_{k−1}` in the graded bases.
pub fn l1_matrix<V: VoaView>(voa: &V, k: u32) -> QMatrix {
    let src = voa.graded_basis(k);
    let dst = if k == 0 { Vec::new() } else { voa.graded_basis(k - 1) };
    let mut m = QMatrix::zeros(dst.len(), src.len());
    for (j, s) in src.iter().enumerate() {
        let img = voa.l_basis(1, s);
        for (i, t) in dst.iter().enumerate() {
            if let Some(r) = img.get(t) {
                m.set(i, j, r.clone());
            }
        }
    }
    m
}

/// Basis of the quasi-primary states `ker L(1)` of degree `k`.
pub fn qp_basis_in<V: VoaView>(voa: &V, k: u32) -> Vec<LinComb<V::State, Rational>> {
    let src = voa.graded_basis(k);
    if k == 0 {
        return src.into_iter().map(LinComb::basis).collect();
    }
    l1_matrix(voa, k)
        .nullspace()
        .into_iter()
        .map(|v| LinComb::from_terms(src.iter().cloned().zip(v)))
        .collect()
}

pub fn qp_basis(k: u32) -> Vec<RFock> {
    qp_basis_in(&Heisenberg, k)
}

/// `dim S_k = p(k)`.
pub fn dim_s(k: u32) -> u128 {
    partition_count(k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_primaries() {
        let st = |p: &[u32]| RFock::basis(Partition::new(p.to_vec()).unwrap());
        assert_eq!(qp_basis(0), vec![st(&[])]);
        assert_eq!(qp_basis(1).len(), 1);
        assert_eq!(qp_basis(1)[0].keys().collect::<Vec<_>>(), vec![&Partition::new(vec![1]).unwrap()]);
        let q2 = qp_basis(2);
        assert_eq!(q2.len(), 1);
        assert_eq!(q2[0].keys().collect::<Vec<_>>(), vec![&Partition::new(vec![1, 1]).unwrap()]);
        // L(1) is onto V_{k−1} from degree 2 on
        for k in 2..=8 {
            assert_eq!(qp_basis(k).len() as u128, dim_s(k) - dim_s(k - 1), "degree {k}");
        }
    }

    #[test]
    fn dims() {
        assert_eq!(dim_s(0), 1);
        assert_eq!(dim_s(4), 5);
        assert_eq!(dim_s(10), 42);
    }
}
