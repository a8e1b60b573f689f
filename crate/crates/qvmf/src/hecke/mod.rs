pub mod eigen;
pub mod ops;

pub use eigen::{
    eigenstates, euler_factor, hecke_report, multiplicity_law_check, nabla_eigen_check, corrected_nabla_eigen_check, hecke_raise, p_commutation_failures,
    EigenState, EulerFactor, HeckeReport,
};
pub use ops::{
    coprime_relation_check, commutation_check, mforms_coords, relation_check, t_m_componentwise, t_prime,
    t_prime_matrix,
};
