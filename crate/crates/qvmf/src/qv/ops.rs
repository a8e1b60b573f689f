use crate::error::{Error, Result};
use crate::heisenberg::fock::{l_op, RFock};
use crate::heisenberg::Partition;
use crate::qmf::mono::Mono;
use crate::qmf::poly::{delta_e2, theta, times_e2};
use crate::ring::rational::{factorial, int};
use crate::ring::{LaurentScalar, LinComb, Rational};

use super::form::{check_weight_of, e2_degree, QVForm, QvKey};

/// Applies an operator acting on the Fock factor only.
pub fn on_fock(f: &QVForm, op: impl Fn(&Partition) -> RFock) -> QVForm {
    f.map_rational(|k| {
        LinComb::from_terms(op(&k.part).into_terms().into_iter().map(|(p, r)| (QvKey::new(k.mono, p), r)))
    })
}

/// Applies a rational operator on the `Q` factor only.
pub fn on_q(f: &QVForm, op: impl Fn(&LinComb<Mono, Rational>) -> LinComb<Mono, Rational>) -> QVForm {
    f.map_rational(|k| {
        let img = op(&LinComb::basis(k.mono));
        LinComb::from_terms(img.into_terms().into_iter().map(|(m, r)| (QvKey::new(m, k.part.clone()), r)))
    })
}

pub fn l1(f: &QVForm) -> QVForm {
    on_fock(f, |p| l_op(1, &RFock::basis(p.clone())))
}

pub fn l_minus1(f: &QVForm) -> QVForm {
    on_fock(f, |p| l_op(-1, &RFock::basis(p.clone())))
}

/// `Λ = 12u⁻¹ ∂/∂E2 ⊗ 1 + 1 ⊗ L(1)`.
pub fn lambda_op(f: &QVForm) -> QVForm {
    let twelve_over_u = LaurentScalar::monomial(int(12), -1);
    &on_q(f, delta_e2).scale(&twelve_over_u) + &l1(f)
}

/// Least `s` with `Λ^{s+1} f = 0`.
pub fn depth(f: &QVForm) -> u32 {
    let mut g = lambda_op(f);
    let mut s = 0;
    while !g.is_zero() {
        s += 1;
        g = lambda_op(&g);
    }
    s
}

/// `Q_n(f) = Λⁿ f / n!`.
pub fn q_component(f: &QVForm, n: u32) -> QVForm {
    let mut g = f.clone();
    for _ in 0..n {
        g = lambda_op(&g);
    }
    g.scale_rat(&Rational::new(1.into(), factorial(n as u64)))
}

/// `∇_k = uθ − (ku/12)E2 + L(−1)` on a weight-`k` form.
pub fn nabla(f: &QVForm, k: u32) -> Result<QVForm> {
    check_weight_of(f, k)?;
    let u = LaurentScalar::u();
    let serre = &on_q(f, theta) - &on_q(f, times_e2).scale_rat(&Rational::new(k.into(), 12.into()));
    Ok(&serre.scale(&u) + &l_minus1(f))
}

fn require_e2_free(f: &QVForm) -> Result<()> {
    if e2_degree(f) > 0 {
        Err(Error::HasE2)
    } else {
        Ok(())
    }
}

/// `P = exp(−(u/12) E2 ⊗ L(1))` on an E2-free form.
pub fn p_iso(f: &QVForm) -> Result<QVForm> {
    require_e2_free(f)?;
    Ok(p_exp(f))
}

fn p_exp(f: &QVForm) -> QVForm {
    let c = LaurentScalar::monomial(Rational::new((-1).into(), 12.into()), 1);
    let mut out = f.clone();
    let mut term = f.clone();
    let mut n = 0u32;
    loop {
        n += 1;
        term = on_q(&l1(&term), times_e2).scale(&c).scale_rat(&Rational::new(1.into(), n.into()));
        if term.is_zero() {
            return out;
        }
        out.add_assign(&term);
    }
}

/// Inverse of `P` on `ker Λ`: the E2-free part.
pub fn p_inv(f: &QVForm) -> Result<QVForm> {
    if !lambda_op(f).is_zero() {
        return Err(Error::NotModular);
    }
    Ok(f.filter(|k| k.mono.a == 0))
}

/// `∇′_k = u·ϑ ⊗ 1 + (u²/144) E4 ⊗ L(1) + 1 ⊗ L(−1)` on E2-free forms of weight `k`, where `ϑ`
/// is the Serre derivative at the own weight of each `Q`-component.
pub fn nabla_prime(f: &QVForm, k: u32) -> Result<QVForm> {
    require_e2_free(f)?;
    check_weight_of(f, k)?;
    let u = LaurentScalar::u();
    let serre = f.map_rational(|key| {
        let g = LinComb::basis(key.mono);
        let w = key.mono.weight();
        let d = &theta(&g) - &times_e2(&g).scale_rat(&Rational::new(w.into(), 12.into()));
        LinComb::from_terms(d.into_terms().into_iter().map(|(m, r)| (QvKey::new(m, key.part.clone()), r)))
    });
    let e4l1 = on_q(&l1(f), |g| crate::qmf::poly::mul(g, &LinComb::basis(Mono::E4)));
    let c = LaurentScalar::monomial(Rational::new(1.into(), 144.into()), 2);
    Ok(&(&serre.scale(&u) + &e4l1.scale(&c)) + &l_minus1(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmf::poly::delta;
    use crate::qv::form::{qv_term, tensor};

    fn lau(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    fn t(m: Mono, p: &str, c: &str) -> QVForm {
        qv_term(m, p.parse().unwrap(), lau(c))
    }

    fn basis_w4() -> QVForm {
        &t(Mono::E2, "h(-1)", "1") + &t(Mono::ONE, "h(-2)", "-6*u^-1")
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_op(&t(Mono::E2, "1", "1")), t(Mono::ONE, "1", "12*u^-1"));
        assert!(lambda_op(&basis_w4()).is_zero());
        assert!(lambda_op(&t(Mono::ONE, "h(-1)^2", "1")).is_zero());
    }

    #[test]
    fn depth_examples() {
        assert_eq!(depth(&basis_w4()), 0);
        assert_eq!(depth(&t(Mono::ONE, "h(-2)", "1")), 1);
        assert_eq!(depth(&t(Mono::new(2, 0, 0), "1", "1")), 2);
        let f = t(Mono::new(2, 0, 0), "h(-2)", "1");
        assert_eq!(q_component(&f, 0), f);
        assert!(q_component(&f, depth(&f) + 1).is_zero());
    }

    #[test]
    fn nabla_examples() {
        assert!(nabla(&t(Mono::ONE, "1", "1"), 0).unwrap().is_zero());
        let d = tensor(&delta(), &crate::heisenberg::vacuum());
        assert!(nabla(&d, 12).unwrap().is_zero());
        let got = nabla(&basis_w4(), 4).unwrap();
        let expect = &(&(&t(Mono::new(2, 0, 0), "h(-1)", "-1/4*u") + &t(Mono::E4, "h(-1)", "-1/12*u"))
            + &t(Mono::E2, "h(-2)", "3"))
            + &t(Mono::ONE, "h(-3)", "-12*u^-1");
        assert_eq!(got, expect);
        assert!(lambda_op(&got).is_zero());
        assert!(matches!(nabla(&basis_w4(), 6), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn p_examples() {
        let got = p_iso(&t(Mono::ONE, "h(-2)", "1")).unwrap();
        assert_eq!(got, &t(Mono::ONE, "h(-2)", "1") + &t(Mono::E2, "h(-1)", "-1/6*u"));
        let qp = t(Mono::E4, "h(-1)^2", "1");
        assert_eq!(p_iso(&qp).unwrap(), qp);
        let w8 = p_iso(&t(Mono::ONE, "h(-4)", "1")).unwrap();
        let expect = &(&(&t(Mono::ONE, "h(-4)", "1") + &t(Mono::E2, "h(-3)", "-1/3*u"))
            + &t(Mono::new(2, 0, 0), "h(-2)", "1/24*u^2"))
            + &t(Mono::new(3, 0, 0), "h(-1)", "-1/432*u^3");
        assert_eq!(w8, expect);
        assert_eq!(p_iso(&basis_w4()), Err(Error::HasE2));
    }

    #[test]
    fn p_inverse_examples() {
        assert_eq!(p_inv(&basis_w4()).unwrap(), t(Mono::ONE, "h(-2)", "-6*u^-1"));
        assert_eq!(p_iso(&p_inv(&basis_w4()).unwrap()).unwrap(), basis_w4());
        assert_eq!(p_inv(&t(Mono::E4, "1", "1")).unwrap(), t(Mono::E4, "1", "1"));
        assert_eq!(p_inv(&t(Mono::E2, "1", "1")), Err(Error::NotModular));
    }

    #[test]
    fn nabla_prime_examples() {
        assert!(nabla_prime(&t(Mono::ONE, "1", "1"), 0).unwrap().is_zero());
        assert_eq!(nabla_prime(&t(Mono::E4, "1", "1"), 4).unwrap(), t(Mono::E6, "1", "-1/3*u"));
        for (m, p, k) in [(Mono::ONE, "h(-1)", 2), (Mono::E4, "h(-2)", 8), (Mono::E6, "h(-3)h(-1)", 14)] {
            let f = t(m, p, "1");
            let lhs = p_iso(&nabla_prime(&f, k).unwrap()).unwrap();
            let rhs = nabla(&p_iso(&f).unwrap(), k).unwrap();
            assert_eq!(lhs, rhs, "{m} {p}");
        }
    }
}
