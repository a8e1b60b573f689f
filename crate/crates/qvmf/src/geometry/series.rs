use crate::error::{Error, Result};
use crate::ring::rational::{factorial, int, pow_i};
use crate::ring::{Coeff, LaurentScalar, Rational};

use super::matrix::IntMatrix2;

/// Truncated power series `Σ_{n≤N} aₙXⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries<C = Rational> {
    pub coeffs: Vec<C>,
}

impl<C: Coeff> FormalSeries<C> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn x(order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        if order >= 1 {
            coeffs[1] = C::from_rational(int(1));
        }
        Self { coeffs }
    }

    /// Coordinate-change shape: `a₀ = 0`, `a₁ ≠ 0`.
    pub fn is_coordinate_change(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.get(1).is_some_and(|c| !c.is_zero())
    }

    fn mul(&self, o: &Self) -> Self {
        let n = self.order();
        let mut coeffs = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        Self { coeffs }
    }

    /// `self(inner(X))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        let n = self.order();
        let mut out = Self { coeffs: vec![C::zero(); n + 1] };
        let mut power = Self { coeffs: vec![C::zero(); n + 1] };
        power.coeffs[0] = C::from_rational(int(1));
        for a in &self.coeffs {
            for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                o.add_assign_ref(&a.mul_ref(p));
            }
            power = power.mul(inner);
        }
        out
    }
}

/// `γ⁻¹(X + γτ) − τ` to order `N`, by expanding the Möbius quotient.
pub fn coordinate_change_series(g: &IntMatrix2, tau: &Rational, order: usize) -> Result<FormalSeries> {
    let gt = g.apply(tau)?;
    // γ⁻¹(w) = (d w − b)/(−c w + a) with w = γτ + X
    let num = [int(g.d) * &gt - int(g.b), int(g.d)];
    let den = [int(g.a) - int(g.c) * &gt, -int(g.c)];
    if den[0] == int(0) {
        return Err(Error::PoleAtTau(crate::ring::rational::fmt_rational(tau)));
    }
    // q = num/den, solved term by term
    let mut q = vec![int(0); order + 1];
    for n in 0..=order {
        let mut acc = num.get(n).cloned().unwrap_or_else(|| int(0));
        if n >= 1 {
            acc -= &den[1] * &q[n - 1];
        }
        q[n] = acc / &den[0];
    }
    q[0] -= tau;
    Ok(FormalSeries { coeffs: q })
}

/// Closed form `Σ_{n≥1} c^{n−1} j^{n+1} det^{−n} Xⁿ`.
pub fn coordinate_change_closed(g: &IntMatrix2, tau: &Rational, order: usize) -> Result<FormalSeries> {
    let j = g.j(tau)?;
    let mut coeffs = vec![int(0); order + 1];
    let mut jpow = &j * &j;
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = pow_i(g.c, n as i64 - 1) * &jpow * pow_i(g.det(), -(n as i64));
        jpow *= &j;
    }
    Ok(FormalSeries { coeffs })
}

/// The series at `(γ, τ)` followed by the one at `(γ⁻¹, γτ)` is `X + O(X^{N+1})`.
pub fn inverse_composition_check(g: &IntMatrix2, tau: &Rational, order: usize) -> Result<bool> {
    let f = coordinate_change_series(g, tau, order)?;
    let h = coordinate_change_series(&g.adjugate(), &g.apply(tau)?, order)?;
    Ok(h.compose(&f) == FormalSeries::x(order))
}

/// `exp(αX²∂_X) X = Σ_{m≥1} α^{m−1} Xᵐ`, with `(X²∂_X)ᵐ X` computed by iterating the derivation.
pub fn exp_vector_field(alpha: &LaurentScalar, order: usize) -> FormalSeries<LaurentScalar> {
    let mut out = FormalSeries::<LaurentScalar>::x(order);
    if order < 1 {
        return out;
    }
    let mut d = FormalSeries::<LaurentScalar>::x(order);
    let mut apow = LaurentScalar::one();
    for m in 1..order {
        // X²∂_X raises every exponent by one
        let mut next = vec![LaurentScalar::zero(); order + 1];
        for e in 1..order {
            next[e + 1] = d.coeffs[e].scale(&int(e as i64));
        }
        d = FormalSeries { coeffs: next };
        apow = apow.mul_ref(alpha);
        let w = apow.scale(&Rational::new(1.into(), factorial(m as u64)));
        for (o, x) in out.coeffs.iter_mut().zip(&d.coeffs) {
            o.add_assign_ref(&x.mul_ref(&w));
        }
    }
    out
}

pub fn exp_vector_field_check(alpha: &LaurentScalar, order: usize) -> Result<bool> {
    if order > 12 {
        return Err(Error::InvalidArgument("order is capped at 12".into()));
    }
    let got = exp_vector_field(alpha, order);
    let mut want = vec![LaurentScalar::zero(); order + 1];
    let mut p = LaurentScalar::one();
    for c in want.iter_mut().skip(1) {
        *c = p.clone();
        p = p.mul_ref(alpha);
    }
    Ok(got.coeffs == want)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;

    #[test]
    fn coordinate_examples() {
        let x = FormalSeries::x(5);
        assert_eq!(coordinate_change_series(&IntMatrix2::IDENTITY, &rat(2, 7), 5).unwrap(), x);
        assert_eq!(coordinate_change_series(&IntMatrix2::T, &rat(-3, 2), 5).unwrap(), x);
        let s = coordinate_change_series(&IntMatrix2::S, &int(2), 3).unwrap();
        assert_eq!(s.coeffs, vec![int(0), int(4), int(8), int(16)]);
        assert!(s.is_coordinate_change());
        let g = IntMatrix2::new(3, 1, 2, 2).unwrap();
        for tau in [int(1), rat(5, 3), rat(-7, 2)] {
            assert_eq!(coordinate_change_series(&g, &tau, 8).unwrap(), coordinate_change_closed(&g, &tau, 8).unwrap());
            assert!(inverse_composition_check(&g, &tau, 8).unwrap());
        }
    }

    #[test]
    fn vector_field_examples() {
        let a = exp_vector_field(&LaurentScalar::zero(), 6);
        assert_eq!(a, FormalSeries::x(6));
        let one = exp_vector_field(&LaurentScalar::one(), 5);
        assert_eq!(one.coeffs, [0, 1, 1, 1, 1, 1].map(LaurentScalar::from_int).to_vec());
        let half_u = LaurentScalar::monomial(rat(1, 2), 1);
        assert!(exp_vector_field_check(&half_u, 4).unwrap());
        assert!(exp_vector_field_check(&"3 - u^-2".parse().unwrap(), 12).unwrap());
    }
}
