//! Scalar quasi-modular forms `Q = C[E2, E4, E6]`.

pub mod eigen;
pub mod eisenstein;
pub mod hecke;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod reconstruct;
pub mod series;

pub use eigen::{modular_eigenbasis, quasimodular_eigenbasis};
pub use eisenstein::eisenstein_qexp;
pub use hecke::{hecke_tm_poly, hecke_tm_series};
pub use mono::{dim_m, dim_q, Mono};
pub use parse::parse_qm;
pub use poly::{delta_e2, serre_derivative, theta, QmPolynomial};
pub use reconstruct::{poly_from_qexp, qexp_of_poly};
pub use series::QSeriesTrunc;
