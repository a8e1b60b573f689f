//! The rank-one Heisenberg vertex operator algebra on its Fock space.

pub mod axioms;
pub mod fock;
pub mod modes;
pub mod partition;
pub mod voa;

pub use fock::{h_mode, l_op, omega, vacuum, virasoro, virasoro_bracket_check, FockVector};
pub use modes::general_mode;
pub use partition::{partition_count, partitions, Partition};
pub use voa::{dim_s, qp_basis, Heisenberg, VoaView};
