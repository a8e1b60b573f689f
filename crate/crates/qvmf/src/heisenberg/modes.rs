use std::sync::{Arc, LazyLock};

use dashmap::DashMap;

use crate::ring::rational::binomial;
use crate::ring::{Coeff, LinComb, Rational};

use super::fock::{h_mode_basis, RFock};
use super::partition::Partition;

type Key = (Partition, i64, Partition);
static MODES: LazyLock<DashMap<Key, Arc<RFock>>> = LazyLock::new(DashMap::new);

/// `a(n)b` for basis states, via the iterate formula peeling the largest part of `a`:
///
/// `(h(−m)u)(p)w = Σ_j C(m+j−1, j)[h(−m−j)(u(p+j)w) − (−1)^m u(p−m−j)(h(j)w)]`.
pub fn mode_basis(a: &Partition, n: i64, b: &Partition) -> Arc<RFock> {
    let key = (a.clone(), n, b.clone());
    if let Some(hit) = MODES.get(&key) {
        return hit.clone();
    }
    let out = Arc::new(compute(a, n, b));
    MODES.insert(key, out.clone());
    out
}

fn compute(a: &Partition, p: i64, w: &Partition) -> RFock {
    let deg = a.size() as i64 + w.size() as i64 - p - 1;
    if deg < 0 {
        return RFock::zero();
    }
    let Some(m) = a.largest() else {
        return if p == -1 { RFock::basis(w.clone()) } else { RFock::zero() };
    };
    let m = m as i64;
    let u = a.without_part(m as u32).unwrap();
    let du = u.size() as i64;
    let dw = w.size() as i64;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let mut out = RFock::zero();
    // h(−m−j)(u(p+j)w): u(p+j)w vanishes once du + dw − p − j − 1 < 0
    for j in 0..=(du + dw - p - 1).max(-1) {
        let c = Rational::from_integer(binomial(m + j - 1, j));
        let inner = mode_basis(&u, p + j, w);
        for (q, r) in inner.iter() {
            out.add_scaled(&h_mode_basis(-m - j, q), &(&c * r));
        }
    }
    // u(p−m−j)(h(j)w): h(j)w vanishes for j above the largest part of w, and h(0) = 0
    for j in 1..=w.largest().unwrap_or(0) as i64 {
        let hw = h_mode_basis(j, w);
        if hw.is_zero() {
            continue;
        }
        let c = Rational::from_integer(binomial(m + j - 1, j)) * Rational::from_integer(sign.into());
        for (q, r) in hw.iter() {
            out.add_scaled(&mode_basis(&u, p - m - j, q), &-(&c * r));
        }
    }
    out
}

/// `v(n)w`, bilinear in the two states.
pub fn general_mode<C: Coeff>(v: &LinComb<Partition, C>, n: i64, w: &LinComb<Partition, C>) -> LinComb<Partition, C> {
    let mut out = LinComb::zero();
    for (a, ca) in v.iter() {
        for (b, cb) in w.iter() {
            let cab = ca.mul_ref(cb);
            for (q, r) in mode_basis(a, n, b).iter() {
                out.add_term(q.clone(), cab.scale(r));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::fock::{l_op, omega, states_up_to, virasoro};
    use crate::ring::LaurentScalar;

    fn st(parts: &[u32]) -> RFock {
        RFock::basis(Partition::new(parts.to_vec()).unwrap())
    }

    #[test]
    fn examples() {
        for n in -3..3 {
            let w = st(&[2, 1]);
            let expect = if n == -1 { w.clone() } else { RFock::zero() };
            assert_eq!(general_mode(&st(&[]), n, &w), expect);
        }
        assert_eq!(general_mode(&st(&[1]), -1, &st(&[1])), st(&[1, 1]));
        let om = omega();
        let two_om = om.scale(&LaurentScalar::from_int(2));
        assert_eq!(general_mode(&om, 1, &om), two_om);
        assert_eq!(general_mode(&st(&[1]), 1, &st(&[1])), st(&[]));
        assert!(general_mode(&st(&[1]), 0, &st(&[1])).is_zero());
    }

    #[test]
    fn omega_modes_are_virasoro() {
        let om: RFock = RFock::term(Partition::new(vec![1, 1]).unwrap(), Rational::new(1.into(), 2.into()));
        for p in states_up_to(5) {
            let v = RFock::basis(p);
            for n in -3..=3 {
                assert_eq!(general_mode(&om, n + 1, &v), virasoro(n, &v), "L({n}) on {v:?}");
            }
            assert_eq!(general_mode(&om, 1, &v), l_op(0, &v));
        }
    }
}
