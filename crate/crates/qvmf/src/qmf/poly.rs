use std::fmt;

use crate::error::{Error, Result};
use crate::ring::rational::{int, rat};
use crate::ring::{LaurentScalar, LinComb, Rational};

use super::mono::Mono;

/// Element of `Q = C[E2, E4, E6]` with coefficients in `Q[u, u⁻¹]`.
pub type QmPolynomial = LinComb<Mono, LaurentScalar>;

pub fn e2() -> QmPolynomial {
    QmPolynomial::basis(Mono::E2)
}

pub fn e4() -> QmPolynomial {
    QmPolynomial::basis(Mono::E4)
}

pub fn e6() -> QmPolynomial {
    QmPolynomial::basis(Mono::E6)
}

pub fn constant(c: LaurentScalar) -> QmPolynomial {
    QmPolynomial::term(Mono::ONE, c)
}

/// `Δ = (E4³ − E6²)/1728`.
pub fn delta() -> QmPolynomial {
    let q = LaurentScalar::constant(rat(1, 1728));
    QmPolynomial::from_terms([(Mono::new(0, 3, 0), q.clone()), (Mono::new(0, 0, 2), -q)])
}

pub fn mul<C: crate::ring::Coeff>(x: &LinComb<Mono, C>, y: &LinComb<Mono, C>) -> LinComb<Mono, C> {
    let mut out = LinComb::zero();
    for (m1, c1) in x.iter() {
        for (m2, c2) in y.iter() {
            out.add_term(m1.mul(m2), c1.mul_ref(c2));
        }
    }
    out
}

pub fn pow(x: &QmPolynomial, n: u32) -> QmPolynomial {
    let mut acc = constant(LaurentScalar::one());
    for _ in 0..n {
        acc = mul(&acc, x);
    }
    acc
}

/// Common weight of all monomials, `None` if mixed; zero has every weight.
pub fn homogeneous_weight<C>(f: &LinComb<Mono, C>) -> Option<Option<u32>>
where
    C: crate::ring::Coeff,
{
    let mut w = None;
    for m in f.keys() {
        match w {
            None => w = Some(m.weight()),
            Some(x) if x != m.weight() => return None,
            _ => {}
        }
    }
    Some(w)
}

pub fn check_homogeneous<C: crate::ring::Coeff>(f: &LinComb<Mono, C>, k: u32) -> Result<()> {
    match homogeneous_weight(f) {
        Some(None) => Ok(()),
        Some(Some(w)) if w == k => Ok(()),
        Some(Some(w)) => Err(Error::WeightMismatch {
            expected: k as i64,
            found: w.to_string(),
        }),
        None => Err(Error::WeightMismatch {
            expected: k as i64,
            found: "mixed".into(),
        }),
    }
}

/// Maximal E2-exponent.
pub fn depth<C: crate::ring::Coeff>(f: &LinComb<Mono, C>) -> u32 {
    f.keys().map(|m| m.a).max().unwrap_or(0)
}

/// `θ` on a single monomial, via the Ramanujan identities and the Leibniz rule.
pub fn theta_mono(m: &Mono) -> LinComb<Mono, Rational> {
    let mut out = LinComb::zero();
    let Mono { a, b, c } = *m;
    if a > 0 {
        let f = rat(a as i64, 12);
        out.add_term(Mono::new(a + 1, b, c), f.clone());
        out.add_term(Mono::new(a - 1, b + 1, c), -f);
    }
    if b > 0 {
        let f = rat(b as i64, 3);
        out.add_term(Mono::new(a + 1, b, c), f.clone());
        out.add_term(Mono::new(a, b - 1, c + 1), -f);
    }
    if c > 0 {
        let f = rat(c as i64, 2);
        out.add_term(Mono::new(a + 1, b, c), f.clone());
        out.add_term(Mono::new(a, b + 2, c - 1), -f);
    }
    out
}

pub fn theta<C: crate::ring::Coeff>(f: &LinComb<Mono, C>) -> LinComb<Mono, C> {
    f.map_rational(theta_mono)
}

pub fn theta_pow<C: crate::ring::Coeff>(f: &LinComb<Mono, C>, n: u32) -> LinComb<Mono, C> {
    (0..n).fold(f.clone(), |acc, _| theta(&acc))
}

/// `∂/∂E2`.
pub fn delta_e2<C: crate::ring::Coeff>(f: &LinComb<Mono, C>) -> LinComb<Mono, C> {
    f.map_rational(|m| {
        if m.a == 0 {
            LinComb::zero()
        } else {
            LinComb::term(Mono::new(m.a - 1, m.b, m.c), int(m.a as i64))
        }
    })
}

/// Multiplication by `E2`.
pub fn times_e2<C: crate::ring::Coeff>(f: &LinComb<Mono, C>) -> LinComb<Mono, C> {
    f.map_rational(|m| LinComb::basis(Mono::new(m.a + 1, m.b, m.c)))
}

/// Serre derivative `θf − (k/12)E2 f` on a weight-`k` element.
pub fn serre_derivative<C: crate::ring::Coeff>(f: &LinComb<Mono, C>, k: u32) -> Result<LinComb<Mono, C>> {
    check_homogeneous(f, k)?;
    Ok(&theta(f) - &times_e2(f).scale_rat(&rat(k as i64, 12)))
}

fn fmt_coeff_prefix(c: &LaurentScalar, unit: bool) -> (bool, String) {
    // returns (negative, body) where body already includes a trailing `*` when needed
    if let Some(r) = c.as_rational() {
        let neg = r < Rational::from_integer(0.into());
        let mag = if neg { -r } else { r };
        let one = mag == Rational::from_integer(1.into());
        if unit && one {
            return (neg, String::new());
        }
        let s = crate::ring::rational::fmt_rational(&mag);
        return (neg, if unit { format!("{s}*") } else { s });
    }
    if let Some((_, r)) = c.as_monomial() {
        let neg = r < &Rational::from_integer(0.into());
        let mag = if neg { -c } else { c.clone() };
        let s = mag.to_string();
        return (neg, if unit { format!("{s}*") } else { s });
    }
    (false, if unit { format!("({c})*") } else { format!("({c})") })
}

/// Renders `Σ c · name` in the given order; a `None` name marks the unit basis element.
pub fn render_linear(terms: &[(Option<String>, LaurentScalar)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (name, c)) in terms.iter().enumerate() {
        let unit = name.is_some();
        let (neg, prefix) = fmt_coeff_prefix(c, unit);
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&prefix);
        if let Some(n) = name {
            out.push_str(n);
        }
    }
    out
}

/// Display adapter listing monomials by descending weight, then descending E2-exponent.
pub struct DisplayPoly<'a>(pub &'a QmPolynomial);

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<_> = self.0.iter().collect();
        sorted.sort_by_key(|(m, _)| (std::cmp::Reverse(m.weight()), std::cmp::Reverse(**m)));
        let terms: Vec<_> = sorted
            .into_iter()
            .map(|(m, c)| ((*m != Mono::ONE).then(|| m.to_string()), c.clone()))
            .collect();
        f.write_str(&render_linear(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> LaurentScalar {
        LaurentScalar::constant(rat(n, d))
    }

    #[test]
    fn theta_examples() {
        let expect = QmPolynomial::from_terms([(Mono::new(2, 0, 0), r(1, 12)), (Mono::E4, r(-1, 12))]);
        assert_eq!(theta(&e2()), expect);
        assert!(theta(&constant(LaurentScalar::one())).is_zero());
        let e4e6 = mul(&e4(), &e6());
        let rhs = &mul(
            &e4(),
            &QmPolynomial::from_terms([(Mono::new(1, 0, 1), r(1, 2)), (Mono::new(0, 2, 0), r(-1, 2))]),
        ) + &mul(
            &e6(),
            &QmPolynomial::from_terms([(Mono::new(1, 1, 0), r(1, 3)), (Mono::E6, r(-1, 3))]),
        );
        assert_eq!(theta(&e4e6), rhs);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_e2(&pow(&e2(), 2)), e2().scale_rat(&int(2)));
        assert!(delta_e2(&e4()).is_zero());
        let m = QmPolynomial::basis(Mono::new(1, 1, 1));
        assert_eq!(delta_e2(&m), QmPolynomial::basis(Mono::new(0, 1, 1)));
    }

    #[test]
    fn serre_examples() {
        assert_eq!(serre_derivative(&e4(), 4).unwrap(), e6().scale_rat(&rat(-1, 3)));
        assert!(serre_derivative(&constant(LaurentScalar::one()), 0).unwrap().is_zero());
        assert!(serre_derivative(&delta(), 12).unwrap().is_zero());
        assert!(matches!(serre_derivative(&e4(), 6), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn rendering() {
        let f = &(&e4().scale_rat(&int(3)) - &pow(&e2(), 2)) + &constant(LaurentScalar::u());
        assert_eq!(DisplayPoly(&f).to_string(), "-E2^2 + 3*E4 + u");
    }
}
