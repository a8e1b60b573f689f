use crate::heisenberg::modes::mode_basis;
use crate::qmf::poly::theta_pow;
use crate::ring::rational::factorial;
use crate::ring::{LinComb, Rational};

use super::form::{QVForm, QvKey};

/// `(p⊗v)(n)(q⊗w) = pq ⊗ v(n)w`.
pub fn pointwise_mode(f: &QVForm, n: i64, g: &QVForm) -> QVForm {
    let mut out = QVForm::zero();
    for (a, ca) in f.iter() {
        for (b, cb) in g.iter() {
            let c = ca * cb;
            let mono = a.mono.mul(&b.mono);
            for (p, r) in mode_basis(&a.part, n, &b.part).iter() {
                out.add_term(QvKey::new(mono, p.clone()), c.scale(r));
            }
        }
    }
    out
}

/// Modes of `Q ⊗ V^(2)`: `(a⊗v)(n) = Σ_{i+j+1=n} a(i) ⊗ v(j)`, where on the `Q` side
/// `a(−m−1)b = θᵐ(a) b / m!` and the nonnegative modes vanish.
pub fn graded_mode(f: &QVForm, n: i64, g: &QVForm) -> QVForm {
    let mut out = QVForm::zero();
    for (a, ca) in f.iter() {
        for (b, cb) in g.iter() {
            let c = ca * cb;
            let top = a.part.size() as i64 + b.part.size() as i64 - 1;
            // i = −m−1 and j = n + m; v(j)w vanishes once j exceeds deg v + deg w − 1
            for m in 0..=(top - n).max(-1) {
                let j = n + m;
                let vw = mode_basis(&a.part, j, &b.part);
                if vw.is_zero() {
                    continue;
                }
                let th: LinComb<_, Rational> = theta_pow(&LinComb::basis(a.mono), m as u32);
                let inv = Rational::new(1.into(), factorial(m as u64));
                for (mono, r) in th.iter() {
                    let prod = mono.mul(&b.mono);
                    for (p, s) in vw.iter() {
                        out.add_term(QvKey::new(prod, p.clone()), c.scale(&(r * s * &inv)));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmf::mono::Mono;
    use crate::qv::form::qv_term;
    use crate::ring::rational::rat;
    use crate::ring::LaurentScalar;

    fn t(m: Mono, p: &str) -> QVForm {
        qv_term(m, p.parse().unwrap(), LaurentScalar::one())
    }

    #[test]
    fn pointwise_examples() {
        let h = t(Mono::ONE, "h(-1)");
        assert!(pointwise_mode(&h, 0, &h).is_zero());
        assert_eq!(pointwise_mode(&h, -1, &h), t(Mono::ONE, "h(-1)^2"));
        assert_eq!(pointwise_mode(&h, 1, &h), t(Mono::ONE, "1"));
    }

    #[test]
    fn graded_examples() {
        let one = t(Mono::ONE, "1");
        let g = t(Mono::E4, "h(-2)");
        for n in -3..3 {
            let expect = if n == -1 { g.clone() } else { QVForm::zero() };
            assert_eq!(graded_mode(&one, n, &g), expect);
        }
        let got = graded_mode(&t(Mono::E4, "1"), -2, &one);
        let expect = &t(Mono::new(1, 1, 0), "1").scale_rat(&rat(1, 3)) - &t(Mono::E6, "1").scale_rat(&rat(1, 3));
        assert_eq!(got, expect);
        let h = t(Mono::ONE, "h(-1)");
        assert_eq!(graded_mode(&h, 1, &h), one);
    }
}
