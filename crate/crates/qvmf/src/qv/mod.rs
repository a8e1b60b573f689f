//! Forms valued in the Heisenberg algebra: `Q(V) = Q ⊗ V^(2)`, the operators `Λ`, `∇`, `P`, and the
//! kernel `M(V) = ker Λ`.

pub mod form;
pub mod kernel;
pub mod modes;
pub mod ops;
pub mod reference;

pub use form::{tensor, weight_slice, QVForm, QvKey};
pub use kernel::{
    colored_partition_count, decomposition_check, dim_mv, dim_qv, doubleton_count, lambda_surjectivity_check,
    mforms_basis,
};
pub use modes::{graded_mode, pointwise_mode};
pub use ops::{depth, lambda_op, nabla, nabla_prime, p_inv, p_iso};
