use std::sync::{Arc, LazyLock};

use dashmap::DashMap;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::ring::rational::{gcd_u64, pow_i};
use crate::ring::{LaurentScalar, LinComb, Rational};

use super::mono::{monomials_of_weight, Mono};
use super::poly::{homogeneous_weight, QmPolynomial};
use super::reconstruct::{rational_from_qexp, rational_qexp};
use super::series::QSeriesTrunc;

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// `b'_n = Σ_{a|(m,n)} a^{w−1} b_{mn/a²}` on rational data, up to output order `out`.
fn hecke_rational(m: u64, w: i64, b: &[Rational], out: usize) -> Vec<Rational> {
    let weights: Vec<(u64, Rational)> = divisors(m).into_iter().map(|a| (a, pow_i(a as i64, w - 1))).collect();
    (0..=out as u64)
        .map(|n| {
            let g = if n == 0 { m } else { gcd_u64(m, n) };
            let mut acc = Rational::zero();
            for (a, aw) in &weights {
                if g % a == 0 {
                    acc += aw * &b[(m * n / (a * a)) as usize];
                }
            }
            acc
        })
        .collect()
}

/// Applies `T_m` in weight `w` to a truncated expansion, producing order `⌊N/m⌋`.
pub fn hecke_tm_series(m: u64, w: i64, s: &QSeriesTrunc) -> Result<QSeriesTrunc> {
    hecke_tm_series_to(m, w, s, s.order() / m.max(1) as usize)
}

/// As [`hecke_tm_series`] with an explicit output order.
pub fn hecke_tm_series_to(m: u64, w: i64, s: &QSeriesTrunc, out: usize) -> Result<QSeriesTrunc> {
    if m == 0 {
        return Err(Error::InvalidArgument("Hecke index must be positive".into()));
    }
    let needed = m as usize * out;
    if s.order() < needed {
        return Err(Error::InsufficientOrder {
            needed,
            have: s.order(),
        });
    }
    let parts = s.by_u_power();
    let mapped = parts.iter().map(|(e, v)| (*e, hecke_rational(m, w, v, out))).collect();
    Ok(QSeriesTrunc::from_u_powers(out, &mapped))
}

type MonoImage = Arc<LinComb<Mono, Rational>>;
static MONO_IMAGES: LazyLock<DashMap<(u64, Mono), MonoImage>> = LazyLock::new(DashMap::new);

/// `T_m` of a single monomial, computed through its expansion and cached.
pub fn hecke_tm_mono(m: u64, mono: Mono) -> Result<MonoImage> {
    if let Some(hit) = MONO_IMAGES.get(&(m, mono)) {
        return Ok(hit.clone());
    }
    let k = mono.weight();
    let out = monomials_of_weight(k).len() + 2;
    let f = LinComb::basis(mono);
    let b = rational_qexp(&f, m as usize * out);
    let img = Arc::new(rational_from_qexp(k, &hecke_rational(m, k as i64, &b, out))?);
    MONO_IMAGES.insert((m, mono), img.clone());
    Ok(img)
}

/// `T_m` on a homogeneous element of `Q`.
pub fn hecke_tm_poly(m: u64, f: &QmPolynomial) -> Result<QmPolynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument("Hecke index must be positive".into()));
    }
    if homogeneous_weight(f).is_none() {
        return Err(Error::InvalidArgument("Hecke operators act on homogeneous elements".into()));
    }
    let mut out = QmPolynomial::zero();
    for (mono, c) in f.iter() {
        let img = hecke_tm_mono(m, *mono)?;
        for (m2, r) in img.iter() {
            out.add_term(*m2, c.scale(r));
        }
    }
    Ok(out)
}

/// Matrix of `T_m` on the monomial basis of `Q_k`; column `j` is the image of monomial `j`.
pub fn hecke_matrix(m: u64, k: u32) -> Result<QMatrix> {
    let monos = monomials_of_weight(k);
    let mut mat = QMatrix::zeros(monos.len(), monos.len());
    for (j, mono) in monos.iter().enumerate() {
        let img = hecke_tm_mono(m, *mono)?;
        for (i, row) in monos.iter().enumerate() {
            if let Some(r) = img.get(row) {
                mat.set(i, j, r.clone());
            }
        }
    }
    Ok(mat)
}

/// `λ` with `T_m f = λ f`, if `f` is an eigenform.
pub fn hecke_eigenvalue(m: u64, f: &QmPolynomial) -> Result<Option<LaurentScalar>> {
    let g = hecke_tm_poly(m, f)?;
    Ok(f.ratio_of(&g))
}
