use std::fmt;

use crate::ring::rational::int;
use crate::ring::{Coeff, LaurentScalar, LinComb, Rational};

use super::partition::Partition;

/// Element of the Fock space with Laurent coefficients.
pub type FockVector = LinComb<Partition, LaurentScalar>;

/// Basis-level operator images carry rational structure constants.
pub type RFock = LinComb<Partition, Rational>;

pub fn vacuum() -> FockVector {
    FockVector::basis(Partition::vacuum())
}

pub fn state(parts: &[u32]) -> FockVector {
    FockVector::basis(Partition::new(parts.to_vec()).expect("positive parts"))
}

/// `h(n)` on a basis state.
pub fn h_mode_basis(n: i64, p: &Partition) -> RFock {
    match n {
        0 => RFock::zero(),
        n if n < 0 => RFock::basis(p.with_part((-n) as u32)),
        n => {
            let k = p.multiplicity(n as u32);
            match p.without_part(n as u32) {
                Some(q) => RFock::term(q, int(n * k as i64)),
                None => RFock::zero(),
            }
        }
    }
}

pub fn h_mode<C: Coeff>(n: i64, v: &LinComb<Partition, C>) -> LinComb<Partition, C> {
    v.map_rational(|p| h_mode_basis(n, p))
}

/// `L(n) = ½ Σ_{a+b=n} :h(a)h(b):` on a basis state.
pub fn virasoro_basis(n: i64, p: &Partition) -> RFock {
    let top = p.largest().unwrap_or(0) as i64;
    let mut out = RFock::zero();
    let half = Rational::new(1.into(), 2.into());
    for a in (n - top)..=top {
        let b = n - a;
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        if right > top || left == 0 || right == 0 {
            continue;
        }
        let inner = h_mode_basis(right, p);
        let img: RFock = inner.map_rational(|q| h_mode_basis(left, q));
        out.add_scaled(&img, &half);
    }
    out
}

pub fn virasoro<C: Coeff>(n: i64, v: &LinComb<Partition, C>) -> LinComb<Partition, C> {
    v.map_rational(|p| virasoro_basis(n, p))
}

/// `L(n)` for `n ∈ {−1, 0, 1}`; `L(0)` is the conformal degree.
pub fn l_op<C: Coeff>(n: i64, v: &LinComb<Partition, C>) -> LinComb<Partition, C> {
    match n {
        0 => v.map_rational(|p| RFock::term(p.clone(), int(p.size() as i64))),
        _ => virasoro(n, v),
    }
}

/// The conformal vector `ω = ½ h(−1)² 𝟙`.
pub fn omega() -> FockVector {
    FockVector::term(
        Partition::new(vec![1, 1]).unwrap(),
        LaurentScalar::constant(Rational::new(1.into(), 2.into())),
    )
}

/// All basis states of degree at most `n`.
pub fn states_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(super::partition::partitions).collect()
}

/// `[L(m), L(n)] = (m − n)L(m + n) + (m³ − m)/12 δ_{m+n,0}` with `c = 1`, on degrees `≤ cap`.
pub fn virasoro_bracket_check(m: i64, n: i64, cap: u32) -> bool {
    states_up_to(cap).into_iter().all(|p| {
        let v = RFock::basis(p.clone());
        let lhs = &virasoro(m, &virasoro(n, &v)) - &virasoro(n, &virasoro(m, &v));
        let mut rhs = virasoro(m + n, &v).scale_rat(&int(m - n));
        if m + n == 0 {
            rhs.add_term(p, Rational::new((m * m * m - m).into(), 12.into()));
        }
        lhs == rhs
    })
}

/// Display adapter: `3/2*h(-2) - u*h(-1)^2` style.
pub struct DisplayFock<'a>(pub &'a FockVector);

impl fmt::Display for DisplayFock<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.0.iter().collect();
        terms.sort_by(|a, b| b.0.size().cmp(&a.0.size()).then(b.0.cmp(a.0)));
        let rendered: Vec<_> = terms
            .into_iter()
            .map(|(p, c)| ((!p.is_vacuum()).then(|| p.to_string()), c.clone()))
            .collect();
        f.write_str(&crate::qmf::poly::render_linear(&rendered))
    }
}
