use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::{Coeff, Rational};

/// Finite linear combination `Σ c_k · k` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinComb<K: Ord, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for LinComb<K, C> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, C: Coeff> LinComb<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, C::from_rational(Rational::from_integer(1.into())))
    }

    pub fn term(k: K, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn from_terms(it: impl IntoIterator<Item = (K, C)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn get(&self, k: &K) -> Option<&C> {
        self.terms.get(k)
    }

    pub fn coeff(&self, k: &K) -> C {
        self.terms.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn into_terms(self) -> BTreeMap<K, C> {
        self.terms
    }

    pub fn add_term(&mut self, k: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                slot.add_assign_ref(&c);
                if slot.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.mul_ref(c));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v.mul_ref(c))))
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v.scale(r))))
    }

    pub fn filter(&self, keep: impl Fn(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<K2: Ord + Clone>(&self, f: impl Fn(&K) -> LinComb<K2, C>) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Applies a linear map with rational structure constants.
    pub fn map_rational<K2: Ord + Clone>(
        &self,
        f: impl Fn(&K) -> LinComb<K2, Rational>,
    ) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            for (k2, r) in f(k).iter() {
                out.add_term(k2.clone(), c.scale(r));
            }
        }
        out
    }
}

impl<K: Ord + Clone> LinComb<K, super::LaurentScalar> {
    /// The scalar `λ` with `other = λ·self`. Needs a nonzero `self` whose first coefficient is a monomial.
    pub fn ratio_of(&self, other: &Self) -> Option<super::LaurentScalar> {
        let (k, c) = self.terms.iter().next()?;
        let d = other.coeff(k);
        let lambda = if d.is_zero() {
            super::LaurentScalar::zero()
        } else {
            let inv = c.monomial_inverse().ok()?;
            &d * &inv
        };
        (&self.scale(&lambda) == other).then_some(lambda)
    }
}

impl<K: Ord + Clone, C: Coeff> Add for &LinComb<K, C> {
    type Output = LinComb<K, C>;
    fn add(self, rhs: Self) -> LinComb<K, C> {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl<K: Ord + Clone, C: Coeff> Add for LinComb<K, C> {
    type Output = LinComb<K, C>;
    fn add(mut self, rhs: Self) -> LinComb<K, C> {
        LinComb::add_assign(&mut self, &rhs);
        self
    }
}

impl<K: Ord + Clone, C: Coeff> Sub for &LinComb<K, C> {
    type Output = LinComb<K, C>;
    fn sub(self, rhs: Self) -> LinComb<K, C> {
        let mut out = self.clone();
        for (k, v) in rhs.iter() {
            out.add_term(k.clone(), v.neg_ref());
        }
        out
    }
}

impl<K: Ord + Clone, C: Coeff> Sub for LinComb<K, C> {
    type Output = LinComb<K, C>;
    fn sub(self, rhs: Self) -> LinComb<K, C> {
        &self - &rhs
    }
}

impl<K: Ord + Clone, C: Coeff> Neg for &LinComb<K, C> {
    type Output = LinComb<K, C>;
    fn neg(self) -> LinComb<K, C> {
        LinComb::from_terms(self.iter().map(|(k, v)| (k.clone(), v.neg_ref())))
    }
}

impl<K: Ord + Clone, C: Coeff> Neg for LinComb<K, C> {
    type Output = LinComb<K, C>;
    fn neg(self) -> LinComb<K, C> {
        -&self
    }
}
