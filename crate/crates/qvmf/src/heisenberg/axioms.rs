//! Structural identities of the Heisenberg vertex algebra, checked exactly on truncations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::QMatrix;
use crate::ring::rational::{binomial, int};
use crate::ring::Rational;

use super::fock::{h_mode, l_op, states_up_to, RFock};
use super::modes::general_mode;
use super::partition::{partitions, Partition};

fn basis(p: &Partition) -> RFock {
    RFock::basis(p.clone())
}

fn brat(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `v(n)𝟙 = 0` for `0 ≤ n ≤ 6` and `v(−1)𝟙 = v`, over basis states of degree `≤ cap`.
pub fn creativity_check(cap: u32) -> bool {
    let vac = RFock::basis(Partition::vacuum());
    states_up_to(cap).iter().all(|p| {
        let v = basis(p);
        general_mode(&v, -1, &vac) == v && (0..=6).all(|n| general_mode(&v, n, &vac).is_zero())
    })
}

/// Both sides of the Jacobi identity for `a, b, c` homogeneous of the given degrees:
/// `Σ_i C(r,i) (a(t+i)b)(r+s−i)c = Σ_i (−1)^i C(t,i) [a(r+t−i)b(s+i)c − (−1)^t b(s+t−i)a(r+i)c]`.
pub fn jacobi_sides(a: &Partition, b: &Partition, c: &Partition, r: i64, s: i64, t: i64) -> (RFock, RFock) {
    let (da, db, dc) = (a.size() as i64, b.size() as i64, c.size() as i64);
    let (va, vb, vc) = (basis(a), basis(b), basis(c));
    // x(n)y vanishes for n ≥ deg x + deg y, which bounds every sum
    let mut lhs = RFock::zero();
    for i in 0..=(da + db - t).max(0) {
        let ab = general_mode(&va, t + i, &vb);
        if !ab.is_zero() {
            lhs.add_scaled(&general_mode(&ab, r + s - i, &vc), &brat(r, i));
        }
    }
    let mut rhs = RFock::zero();
    let sign_t = if t.rem_euclid(2) == 0 { int(1) } else { int(-1) };
    for i in 0..=(db + dc - s).max(0) {
        let w = brat(t, i) * if i % 2 == 0 { int(1) } else { int(-1) };
        let bc = general_mode(&vb, s + i, &vc);
        if !bc.is_zero() {
            rhs.add_scaled(&general_mode(&va, r + t - i, &bc), &w);
        }
    }
    for i in 0..=(da + dc - r).max(0) {
        let w = brat(t, i) * if i % 2 == 0 { int(1) } else { int(-1) } * &sign_t;
        let ac = general_mode(&va, r + i, &vc);
        if !ac.is_zero() {
            rhs.add_scaled(&general_mode(&vb, s + t - i, &ac), &-w);
        }
    }
    (lhs, rhs)
}

#[derive(Clone, Debug)]
pub struct JacobiSample {
    pub a: Partition,
    pub b: Partition,
    pub c: Partition,
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

/// Seeded random basis triples of degree `≤ max_degree` and indices in `[−range, range]`.
pub fn jacobi_samples(seed: u64, count: usize, max_degree: u32, range: i64) -> Vec<JacobiSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = states_up_to(max_degree);
    (0..count)
        .map(|_| {
            let mut pick = || pool.choose(&mut rng).expect("nonempty").clone();
            let (a, b, c) = (pick(), pick(), pick());
            JacobiSample {
                a,
                b,
                c,
                r: rng.gen_range(-range..=range),
                s: rng.gen_range(-range..=range),
                t: rng.gen_range(-range..=range),
            }
        })
        .collect()
}

pub fn jacobi_holds(x: &JacobiSample) -> bool {
    let (l, r) = jacobi_sides(&x.a, &x.b, &x.c, x.r, x.s, x.t);
    l == r
}

/// `(L(−1)a)(n) = −n a(n−1)` on `F_{cap}S`, for basis `a` of degree `≤ deg_a`.
pub fn translation_covariance_check(deg_a: u32, cap: u32) -> bool {
    let states = states_up_to(cap);
    states_up_to(deg_a).iter().all(|a| {
        let va = basis(a);
        let da = l_op(-1, &va);
        (-4..=4).all(|n| {
            states.iter().all(|w| {
                let vw = basis(w);
                general_mode(&da, n, &vw) == general_mode(&va, n - 1, &vw).scale_rat(&int(-n))
            })
        })
    })
}

/// Rank of `L(1): S_{k+1} → S_k` equals `p(k)`.
pub fn l1_surjective(k: u32) -> bool {
    let src = partitions(k + 1);
    let dst = partitions(k);
    let rows = dst
        .iter()
        .map(|q| src.iter().map(|p| l_op(1, &basis(p)).coeff(q)).collect())
        .collect();
    QMatrix::from_rows(rows).rank() == dst.len()
}

/// `[L(1), h(−n)] = n h(−n+1)` and `[L(−1), h(−n)] = n h(−n−1)` on `F_{cap}S`, with `L(±1)`
/// taken as modes of `ω`.
pub fn sl2_commutator_check(cap: u32, max_n: i64) -> bool {
    let omega = RFock::from_terms(
        super::fock::omega().iter().map(|(p, c)| (p.clone(), c.as_rational().expect("rational coefficient"))),
    );
    let l = |k: i64, v: &RFock| general_mode(&omega, k + 1, v);
    states_up_to(cap).iter().all(|p| {
        let v = basis(p);
        (1..=max_n).all(|n| {
            let up = &l(1, &h_mode(-n, &v)) - &h_mode(-n, &l(1, &v));
            let down = &l(-1, &h_mode(-n, &v)) - &h_mode(-n, &l(-1, &v));
            up == h_mode(1 - n, &v).scale_rat(&int(n))
                && down == h_mode(-n - 1, &v).scale_rat(&int(n))
                && l(1, &v) == l_op(1, &v)
        })
    })
}

/// `Σ_{j=0}^n (−1)^j C(n,j) L(1)^j L(−1) L(1)^{n−j} v`, which is `(−1)ⁿ (ad L(1))ⁿ L(−1) v`.
pub fn alternating_sum(n: u32, v: &RFock) -> RFock {
    let pow = |k: u32, v: &RFock| (0..k).fold(v.clone(), |acc, _| l_op(1, &acc));
    let mut acc = RFock::zero();
    for j in 0..=n {
        let term = pow(j, &l_op(-1, &pow(n - j, v)));
        let c = brat(n as i64, j as i64) * if j % 2 == 0 { int(1) } else { int(-1) };
        acc.add_scaled(&term, &c);
    }
    acc
}

/// The alternating sum annihilates `F_{cap}S`. Holds for `n ≥ 3`; at `n = 2` it is `2L(1)`.
pub fn alternating_sum_vanishes(n: u32, cap: u32) -> bool {
    states_up_to(cap).iter().all(|p| alternating_sum(n, &basis(p)).is_zero())
}

/// `(ad L(1))² L(−1) = 2L(1)` on `F_{cap}S`.
pub fn alternating_sum_two_is_2l1(cap: u32) -> bool {
    states_up_to(cap).iter().all(|p| {
        let v = basis(p);
        alternating_sum(2, &v) == l_op(1, &v).scale_rat(&int(2))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_small() {
        assert!(creativity_check(4));
        let one = Partition::vacuum();
        let h: Partition = "h(-1)".parse().unwrap();
        for (r, s, t) in [(0, 0, 0), (1, -1, 0), (-1, -1, -1), (2, -3, 1)] {
            let (l, rr) = jacobi_sides(&h, &h, &one, r, s, t);
            assert_eq!(l, rr, "{r} {s} {t}");
        }
        assert!(jacobi_samples(7, 30, 3, 3).iter().all(jacobi_holds));
        assert!(translation_covariance_check(2, 3));
        assert!((1..=6).all(l1_surjective));
        assert!(!l1_surjective(0));
        assert!(sl2_commutator_check(4, 3));
        assert!((3..=5).all(|n| alternating_sum_vanishes(n, 4)));
        assert!(!alternating_sum_vanishes(2, 4));
        assert!(alternating_sum_two_is_2l1(4));
        assert!(!alternating_sum_vanishes(1, 2));
    }
}
