use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::ring::{LaurentScalar, Rational};

/// Truncated q-expansion `c_0 + c_1 q + … + c_N q^N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeriesTrunc {
    coeffs: Vec<LaurentScalar>,
}

impl QSeriesTrunc {
    pub fn new(coeffs: Vec<LaurentScalar>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least the q^0 term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![LaurentScalar::zero(); order + 1])
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::new(coeffs.iter().cloned().map(LaurentScalar::constant).collect())
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| LaurentScalar::from_int(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &LaurentScalar {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self::new(self.coeffs[..=order].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentScalar::is_zero)
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.order(), o.order());
        Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.order(), o.order());
        Self::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![LaurentScalar::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                if !o.coeffs[j].is_zero() {
                    out[i + j] += &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        Self::new(out)
    }

    /// `q d/dq`.
    pub fn q_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.scale(&Rational::from_integer(n.into())))
                .collect(),
        )
    }

    /// Splits into rational series, one per power of `u`.
    pub fn by_u_power(&self) -> BTreeMap<i32, Vec<Rational>> {
        let mut out: BTreeMap<i32, Vec<Rational>> = BTreeMap::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            for (e, r) in c.terms() {
                out.entry(e)
                    .or_insert_with(|| vec![Rational::zero(); self.coeffs.len()])[n] = r.clone();
            }
        }
        out
    }

    pub fn from_u_powers(order: usize, parts: &BTreeMap<i32, Vec<Rational>>) -> Self {
        let mut coeffs = vec![LaurentScalar::zero(); order + 1];
        for (e, v) in parts {
            for (n, r) in v.iter().enumerate().take(order + 1) {
                if !r.is_zero() {
                    coeffs[n] += &LaurentScalar::monomial(r.clone(), *e);
                }
            }
        }
        Self::new(coeffs)
    }
}

impl fmt::Display for QSeriesTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |c: &LaurentScalar| {
            if c.num_terms() > 1 {
                format!("({c})")
            } else {
                c.to_string()
            }
        };
        write!(f, "{}", wrap(&self.coeffs[0]))?;
        for (n, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let q = if n == 1 { "q".to_string() } else { format!("q^{n}") };
            let single_negative = c.num_terms() == 1 && c.terms().next().is_some_and(|(_, r)| r < &Rational::zero());
            let (sign, mag) = if single_negative { (" - ", -c) } else { (" + ", c.clone()) };
            if mag.is_one() {
                write!(f, "{sign}{q}")?;
            } else {
                write!(f, "{sign}{}*{q}", wrap(&mag))?;
            }
        }
        write!(f, " + O(q^{})", self.coeffs.len())
    }
}
