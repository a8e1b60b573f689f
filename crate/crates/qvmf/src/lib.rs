//! Exact computations with quasi-modular and modular forms valued in the rank-one
//! Heisenberg vertex operator algebra.
//!
//! All coefficients live in `Q[u, u⁻¹]` where `u` stands for `2πi`, so every constant is
//! represented exactly.

pub mod error;
pub mod geometry;
pub mod hecke;
pub mod heisenberg;
pub mod linalg;
pub mod par;
pub mod qmf;
pub mod qv;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
