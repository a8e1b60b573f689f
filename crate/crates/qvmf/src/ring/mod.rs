//! Exact coefficient arithmetic: rationals, Laurent polynomials in `u = 2πi`, and sparse
//! linear combinations over either.

pub mod laurent;
pub mod lincomb;
pub mod numeric;
pub mod pi;
pub mod rational;

pub use laurent::LaurentScalar;
pub use lincomb::LinComb;
pub use numeric::{substitute_u_numeric, ComplexApprox};
pub use rational::Rational;

use num_traits::Zero;
use std::fmt::Debug;

/// Coefficient ring for sparse linear combinations.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}

impl Coeff for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentScalar::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        LaurentScalar::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        LaurentScalar::constant(r)
    }
}
