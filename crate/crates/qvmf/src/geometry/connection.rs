use crate::error::{Error, Result};
use crate::heisenberg::fock::{l_op, RFock};
use crate::heisenberg::partitions;
use crate::ring::rational::{int, pow_i};
use crate::ring::Rational;

use super::cocycle::exp_l1;

fn j_power_shift(j: &Rational, n: u32, v: &RFock) -> RFock {
    // j^{2L(0) − 2N − 2}
    v.map_rational(|p| {
        let e = 2 * p.size() as i64 - 2 * n as i64 - 2;
        RFock::term(p.clone(), rational_pow(j, e))
    })
}

fn rational_pow(x: &Rational, e: i64) -> Rational {
    let mut out = Rational::from_integer(1.into());
    for _ in 0..e.unsigned_abs() {
        out *= x;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// `L(−1) f = j^{2L(0)−2N−2} e^{cjL(1)} L(−1) e^{−cjL(1)} f − c² j⁻² L(1) f − 2Nc j⁻¹ f` for `f ∈ S_N`.
pub fn connection_identity_holds(f: &RFock, n: u32, c: i64, j: &Rational) -> bool {
    let cj = int(c) * j;
    let inner = exp_l1(&cj, &l_op(-1, &exp_l1(&-&cj, f)));
    let mut rhs = j_power_shift(j, n, &inner);
    rhs.add_scaled(&l_op(1, f), &-(int(c * c) / (j * j)));
    rhs.add_scaled(f, &-(int(2 * n as i64 * c) / j));
    l_op(-1, f) == rhs
}

/// Checks the identity on every basis vector of degree `≤ N` at each `(c, j)` sample.
pub fn connection_identity_check(trunc: u32, samples: &[(i64, Rational)]) -> Result<bool> {
    if trunc > 6 {
        return Err(Error::InvalidArgument("truncation is capped at 6".into()));
    }
    if samples.iter().any(|(_, j)| j == &int(0)) {
        return Err(Error::InvalidArgument("j must be nonzero".into()));
    }
    Ok(samples.iter().all(|(c, j)| {
        (0..=trunc).all(|n| partitions(n).into_iter().all(|p| connection_identity_holds(&RFock::basis(p), n, *c, j)))
    }))
}

/// Default `(c, j)` samples.
pub fn connection_samples() -> Vec<(i64, Rational)> {
    vec![(1, int(2)), (-2, Rational::new(3.into(), 2.into())), (3, int(-1)), (5, Rational::new((-7).into(), 3.into())), (0, pow_i(2, -2))]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connection_examples() {
        let h = RFock::basis("h(-1)".parse().unwrap());
        assert!(connection_identity_holds(&h, 1, 1, &int(2)));
        assert!(connection_identity_check(6, &[(0, int(3))]).unwrap());
        assert!(connection_identity_check(3, &connection_samples()).unwrap());
        // the identity is specific to the degree it is applied at
        assert!(!connection_identity_holds(&h, 2, 1, &int(2)));
    }
}
