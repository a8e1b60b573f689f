//! Finite-dimensional layer of the modular action: the factor `X(γ,τ)`, the cocycle `K(γ,τ)`
//! on truncated Fock space, Möbius coordinate changes, and the connection identity. Identities
//! in `τ` are certified by exact evaluation at more sample points than the degree bound.

pub mod cocycle;
pub mod connection;
pub mod matrix;
pub mod series;

pub use cocycle::{act, cocycle_identity_check, cocycle_k, group_action_check, tau_degree_bound, EndoMatrix, IdentityReport};
pub use connection::{connection_identity_check, connection_samples};
pub use matrix::{panel_avoiding, sample_panel, x_cocycle_check, x_factor, IntMatrix2};
pub use series::{coordinate_change_series, exp_vector_field_check, inverse_composition_check, FormalSeries};
