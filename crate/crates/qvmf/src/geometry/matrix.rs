use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::rational::{fmt_rational, int, parse_rational};
use crate::ring::Rational;

/// Integer 2×2 matrix with positive determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix2 {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Self = Self { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Self = Self { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = Self { a, b, c, d };
        if m.det() <= 0 {
            return Err(Error::InvalidArgument(format!("determinant of {m} is not positive")));
        }
        Ok(m)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Adjugate; the same Möbius map as the inverse.
    pub fn adjugate(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `j(γ, τ) = cτ + d`, erroring at a pole.
    pub fn j(&self, tau: &Rational) -> Result<Rational> {
        let j = int(self.c) * tau + int(self.d);
        if j.is_zero() {
            return Err(Error::PoleAtTau(fmt_rational(tau)));
        }
        Ok(j)
    }

    pub fn apply(&self, tau: &Rational) -> Result<Rational> {
        let j = self.j(tau)?;
        Ok((int(self.a) * tau + int(self.b)) / j)
    }

    /// Random matrix with entries in `[-bound, bound]` and `1 ≤ det ≤ max_det`.
    pub fn random<R: Rng>(rng: &mut R, bound: i64, max_det: i64) -> Self {
        loop {
            let [a, b, c, d] = [0; 4].map(|_| rng.gen_range(-bound..=bound));
            let det = a * d - b * c;
            if (1..=max_det).contains(&det) {
                return Self { a, b, c, d };
            }
        }
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for IntMatrix2 {
    type Err = Error;

    /// Accepts `a,b,c,d` or `[[a,b],[c,d]]`.
    fn from_str(s: &str) -> Result<Self> {
        let nums: Vec<i64> = s
            .split(|ch: char| ch == ',' || ch == '[' || ch == ']' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad matrix entry {t:?}"))))
            .collect::<Result<_>>()?;
        match nums[..] {
            [a, b, c, d] => Self::new(a, b, c, d),
            _ => Err(Error::Parse(format!("expected four entries in {s:?}"))),
        }
    }
}

/// `X(γ, τ) = c/(cτ + d)`.
pub fn x_factor(g: &IntMatrix2, tau: &Rational) -> Result<Rational> {
    Ok(int(g.c) / g.j(tau)?)
}

/// `X(α)|₂β = X(αβ) − X(β)`, i.e. `j(β,τ)⁻² det β X(α, βτ) = X(αβ,τ) − X(β,τ)`, at each sample.
pub fn x_cocycle_check(alpha: &IntMatrix2, beta: &IntMatrix2, samples: &[Rational]) -> Result<bool> {
    for tau in samples {
        let jb = beta.j(tau)?;
        let lhs = int(beta.det()) * x_factor(alpha, &beta.apply(tau)?)? / (&jb * &jb);
        let rhs = x_factor(&alpha.mul(beta), tau)? - x_factor(beta, tau)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixed panel of sample points, starting `2, 3, 5/2, 7/3, −4/3` and continuing through
/// rationals of small height.
pub fn sample_panel(len: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = ["2", "3", "5/2", "7/3", "-4/3"]
        .iter()
        .map(|s| parse_rational(s).expect("literal"))
        .collect();
    let mut den = 1i64;
    while out.len() < len {
        for num in (1..=4 * den).flat_map(|n| [n, -n]) {
            let r = Rational::new(num.into(), den.into());
            if num.abs() > 1 && !out.contains(&r) && r.denom() == &den.into() {
                out.push(r);
            }
        }
        den += 1;
    }
    out.truncate(len);
    out
}

/// Panel points at which every listed matrix is pole-free.
pub fn panel_avoiding(mats: &[IntMatrix2], len: usize) -> Vec<Rational> {
    let mut want = len;
    loop {
        let ok: Vec<Rational> = sample_panel(want + 16)
            .into_iter()
            .filter(|t| mats.iter().all(|m| m.j(t).is_ok()))
            .take(len)
            .collect();
        if ok.len() == len {
            return ok;
        }
        want *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::rat;

    #[test]
    fn x_examples() {
        assert_eq!(x_factor(&IntMatrix2::IDENTITY, &rat(7, 3)).unwrap(), rat(0, 1));
        assert_eq!(x_factor(&IntMatrix2::S, &int(2)).unwrap(), rat(1, 2));
        assert_eq!(x_factor(&IntMatrix2::T, &int(5)).unwrap(), rat(0, 1));
        assert!(matches!(x_factor(&IntMatrix2::S, &int(0)), Err(Error::PoleAtTau(_))));
    }

    #[test]
    fn x_cocycle_examples() {
        let panel = [int(2), int(3), rat(5, 2)];
        assert!(x_cocycle_check(&IntMatrix2::IDENTITY, &IntMatrix2::S, &panel).unwrap());
        assert!(x_cocycle_check(&IntMatrix2::S, &IntMatrix2::T, &panel).unwrap());
        let g = IntMatrix2::new(1, 1, 1, 3).unwrap();
        let four = panel_avoiding(&[IntMatrix2::S, g.mul(&IntMatrix2::S)], 4);
        assert!(x_cocycle_check(&g, &IntMatrix2::S, &four).unwrap());
    }

    #[test]
    fn panel_is_distinct() {
        let p = sample_panel(60);
        let mut q = p.clone();
        q.sort();
        q.dedup();
        assert_eq!(q.len(), 60);
        assert_eq!(p[3], rat(7, 3));
    }

    #[test]
    fn parse_and_det() {
        assert_eq!("[[0,-1],[1,0]]".parse::<IntMatrix2>().unwrap(), IntMatrix2::S);
        assert!("1,2,3,4".parse::<IntMatrix2>().is_err());
        assert_eq!(IntMatrix2::S.mul(&IntMatrix2::S).det(), 1);
    }
}
