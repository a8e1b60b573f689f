use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heisenberg::partition::partition_count;
use crate::heisenberg::partitions;
use crate::linalg::{graded_nullspace, graded_rank, LaurentMatrix};
use crate::qmf::mono::{check_weight, dim_m, dim_q};

use super::form::{weight_slice, QVForm, QvKey};
use super::ops::{l1, lambda_op, nabla};

fn index_of(keys: &[QvKey]) -> HashMap<QvKey, usize> {
    keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

/// Matrix of a linear operator from one list of basis keys into another.
pub fn operator_matrix(src: &[QvKey], dst: &[QvKey], op: impl Fn(&QVForm) -> QVForm) -> LaurentMatrix {
    let idx = index_of(dst);
    let mut m = LaurentMatrix::new(dst.len(), src.len());
    for (j, k) in src.iter().enumerate() {
        for (key, c) in op(&QVForm::basis(k.clone())).iter() {
            let i = *idx.get(key).expect("operator image stays in the target slice");
            m.add_entry(i, j, c);
        }
    }
    m
}

/// Stacks the matrices of several operators sharing a source.
fn stacked(src: &[QvKey], dst: &[QvKey], ops: &[&dyn Fn(&QVForm) -> QVForm]) -> LaurentMatrix {
    let idx = index_of(dst);
    let mut m = LaurentMatrix::new(dst.len() * ops.len(), src.len());
    for (j, k) in src.iter().enumerate() {
        for (block, op) in ops.iter().enumerate() {
            for (key, c) in op(&QVForm::basis(k.clone())).iter() {
                m.add_entry(block * dst.len() + idx[key], j, c);
            }
        }
    }
    m
}

fn lower_slice(k: u32) -> Vec<QvKey> {
    if k < 2 {
        Vec::new()
    } else {
        weight_slice(k - 2)
    }
}

fn columns_to_forms(src: &[QvKey], vecs: Vec<Vec<(usize, crate::ring::LaurentScalar)>>) -> Vec<QVForm> {
    vecs.into_iter()
        .map(|v| QVForm::from_terms(v.into_iter().map(|(j, c)| (src[j].clone(), c))))
        .collect()
}

static MFORMS: LazyLock<DashMap<u32, Arc<Vec<QVForm>>>> = LazyLock::new(DashMap::new);

/// Canonical basis of `M_k(V) = ker Λ` on the weight-`k` slice, leading coefficients 1.
pub fn mforms_basis(k: u32) -> Result<Arc<Vec<QVForm>>> {
    if k % 2 != 0 {
        return Err(Error::BadWeight(k as i64));
    }
    if let Some(hit) = MFORMS.get(&k) {
        return Ok(hit.clone());
    }
    let src = weight_slice(k);
    let m = operator_matrix(&src, &lower_slice(k), lambda_op);
    let priority: Vec<usize> = (0..src.len()).collect();
    let basis = Arc::new(columns_to_forms(&src, graded_nullspace(&m, &priority)?));
    MFORMS.insert(k, basis.clone());
    Ok(basis)
}

/// `dim M_k(V)` by exact nullity of `Λ`.
pub fn kernel_dim(k: u32) -> Result<usize> {
    let src = weight_slice(k);
    let m = operator_matrix(&src, &lower_slice(k), lambda_op);
    Ok(src.len() - graded_rank(&m)?)
}

/// `dim Q_k(V) = Σ_r dim Q_r · p((k − r)/2)`.
pub fn dim_qv(k: i64) -> Result<usize> {
    let k = check_weight(k)?;
    (0..=k)
        .step_by(2)
        .map(|r| Ok(dim_q(r as i64)? * partition_count(((k - r) / 2) as usize) as usize))
        .sum()
}

/// `dim M_k(V) = Σ_i dim M_{2i} · p(k/2 − i)`.
pub fn dim_mv(k: i64) -> Result<usize> {
    let k = check_weight(k)?;
    (0..=k)
        .step_by(2)
        .map(|r| Ok(dim_m(r as i64)? * partition_count(((k - r) / 2) as usize) as usize))
        .sum()
}

/// Partitions of `n` in which the parts 1, 2, 3 come in two colours.
pub fn colored_partition_count(n: usize) -> u128 {
    let mut ways = vec![0u128; n + 1];
    ways[0] = 1;
    let coins = [1, 1, 2, 2, 3, 3].into_iter().chain(4..=n.max(3));
    for c in coins {
        for s in c..=n {
            ways[s] += ways[s - c];
        }
    }
    ways[n]
}

/// Total number of part sizes occurring exactly twice, summed over all partitions of `n`.
pub fn doubleton_count(n: u32) -> usize {
    partitions(n)
        .iter()
        .map(|p| {
            let parts = p.parts();
            let mut i = 0;
            let mut c = 0;
            while i < parts.len() {
                let run = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
                c += usize::from(run == 2);
                i += run;
            }
            c
        })
        .sum()
}

/// `ker Λ ∩ ker L(1)` on the weight-`k` slice.
pub fn quasi_primary_forms(k: u32) -> Result<Vec<QVForm>> {
    let src = weight_slice(k);
    let m = stacked(&src, &lower_slice(k), &[&lambda_op, &l1]);
    let priority: Vec<usize> = (0..src.len()).collect();
    Ok(columns_to_forms(&src, graded_nullspace(&m, &priority)?))
}

/// Exact rank over `Q(u)` of a family of forms in the weight-`k` slice.
pub fn span_rank(k: u32, forms: &[QVForm]) -> Result<usize> {
    let src = weight_slice(k);
    let idx = index_of(&src);
    let cols: Vec<Vec<_>> = forms
        .iter()
        .map(|f| f.iter().map(|(key, c)| (idx[key], c.clone())).collect())
        .collect();
    graded_rank(&LaurentMatrix::from_columns(src.len(), &cols))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DecompositionReport {
    pub weight: u32,
    pub dim_m: usize,
    pub dim_qp: usize,
    pub dim_nabla_image: usize,
    pub dim_r: usize,
    /// `dim M_{k−2} (dim V_1 − dim ker L(1)|V_1)`, zero for the Heisenberg algebra.
    pub dim_r_formula: usize,
    pub holds: bool,
}

/// `M_k(V) = M_k(QP) ⊕ ∇(M_{k−2}(V)/M_{k−2}) ⊕ R_k` by exact ranks.
pub fn decomposition_check(k: u32) -> Result<DecompositionReport> {
    let total = mforms_basis(k)?.len();
    let qp = quasi_primary_forms(k)?;
    let mut family = qp.clone();
    if k >= 2 {
        for f in mforms_basis(k - 2)?.iter() {
            family.push(nabla(f, k - 2)?);
        }
    }
    let joint = span_rank(k, &family)?;
    let dim_qp = qp.len();
    let image = joint - dim_qp;
    let r = total - joint;
    let v1_excess = crate::heisenberg::dim_s(1) as usize - crate::heisenberg::qp_basis(1).len();
    let r_formula = if k >= 2 { dim_m(k as i64 - 2)? * v1_excess } else { 0 };
    let holds = joint <= total && r == r_formula && total == dim_mv(k as i64)?;
    Ok(DecompositionReport {
        weight: k,
        dim_m: total,
        dim_qp,
        dim_nabla_image: image,
        dim_r: r,
        dim_r_formula: r_formula,
        holds,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub weight: u32,
    pub rank: usize,
    pub dim_target: usize,
    pub kernel_dim: usize,
    pub first_difference: i64,
    pub holds: bool,
}

/// `Λ: Q_{k+2}(V) → Q_k(V)` is onto, and the kernel dimension is the first difference.
pub fn lambda_surjectivity_check(k: u32) -> Result<SurjectivityReport> {
    let src = weight_slice(k + 2);
    let dst = weight_slice(k);
    let rank = graded_rank(&operator_matrix(&src, &dst, lambda_op))?;
    let kernel = src.len() - rank;
    let diff = src.len() as i64 - dst.len() as i64;
    let holds = rank == dim_qv(k as i64)? && kernel == dim_mv(k as i64 + 2)? && diff == kernel as i64;
    Ok(SurjectivityReport {
        weight: k,
        rank,
        dim_target: dst.len(),
        kernel_dim: kernel,
        first_difference: diff,
        holds,
    })
}
