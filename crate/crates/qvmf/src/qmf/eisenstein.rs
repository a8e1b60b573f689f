use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::rational::{binomial, int, sigma};
use crate::ring::Rational;

use super::mono::Mono;
use super::series::QSeriesTrunc;

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> = LazyLock::new(|| RwLock::new(vec![Rational::one()]));

/// `B_n` from `t/(eᵗ − 1) = Σ B_n tⁿ/n!`, so `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().unwrap();
    while table.len() <= n {
        let m = table.len();
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += b * Rational::from_integer(binomial(m as i64 + 1, j as i64));
        }
        table.push(-acc / int(m as i64 + 1));
    }
    table[n].clone()
}

/// Rational q-expansion of `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ`.
pub fn eisenstein_rational(k: u32, order: usize) -> Result<Vec<Rational>> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::BadWeight(k as i64));
    }
    let factor = -int(2 * k as i64) / bernoulli(k as usize);
    let mut out = Vec::with_capacity(order + 1);
    out.push(Rational::one());
    for n in 1..=order as u64 {
        out.push(&factor * Rational::from_integer(sigma(k - 1, n)));
    }
    Ok(out)
}

pub fn eisenstein_qexp(k: u32, order: usize) -> Result<QSeriesTrunc> {
    Ok(QSeriesTrunc::from_rationals(&eisenstein_rational(k, order)?))
}

fn base_series(i: usize, order: usize) -> Vec<BigInt> {
    let (c, s) = [(-24i64, 1u32), (240, 3), (-504, 5)][i];
    let mut v = Vec::with_capacity(order + 1);
    v.push(BigInt::one());
    for n in 1..=order as u64 {
        v.push(BigInt::from(c) * sigma(s, n));
    }
    v
}

fn mul_trunc(x: &[BigInt], y: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, a) in x.iter().enumerate().take(order + 1) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(order + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

type MonoCache = RwLock<HashMap<Mono, Arc<Vec<BigInt>>>>;
static MONO_SERIES: LazyLock<MonoCache> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// Integer q-expansion of `E2^a E4^b E6^c` with at least `order + 1` coefficients.
pub fn monomial_series(m: Mono, order: usize) -> Arc<Vec<BigInt>> {
    if let Some(s) = MONO_SERIES.read().unwrap().get(&m) {
        if s.len() > order {
            return s.clone();
        }
    }
    let series = if m == Mono::ONE {
        let mut v = vec![BigInt::zero(); order + 1];
        v[0] = BigInt::one();
        v
    } else {
        let (parent, i) = if m.c > 0 {
            (Mono::new(m.a, m.b, m.c - 1), 2)
        } else if m.b > 0 {
            (Mono::new(m.a, m.b - 1, m.c), 1)
        } else {
            (Mono::new(m.a - 1, m.b, m.c), 0)
        };
        let p = monomial_series(parent, order);
        mul_trunc(&p, &base_series(i, order), order)
    };
    let series = Arc::new(series);
    let mut cache = MONO_SERIES.write().unwrap();
    let keep = cache.get(&m).is_some_and(|s| s.len() >= series.len());
    if !keep {
        cache.insert(m, series.clone());
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(eisenstein_qexp(2, 3).unwrap(), QSeriesTrunc::from_ints(&[1, -24, -72, -96]));
        assert_eq!(eisenstein_qexp(4, 2).unwrap(), QSeriesTrunc::from_ints(&[1, 240, 2160]));
        assert_eq!(eisenstein_qexp(6, 1).unwrap(), QSeriesTrunc::from_ints(&[1, -504]));
        assert_eq!(eisenstein_qexp(3, 1), Err(Error::BadWeight(3)));
        assert_eq!(eisenstein_qexp(0, 1), Err(Error::BadWeight(0)));
    }

    #[test]
    fn monomial_cache_extends() {
        let short = monomial_series(Mono::new(1, 1, 0), 3);
        let long = monomial_series(Mono::new(1, 1, 0), 10);
        assert_eq!(&long[..4], &short[..4]);
        // E2 E4 = 1 + 216 q + ...
        assert_eq!(long[1], BigInt::from(216));
    }
}
