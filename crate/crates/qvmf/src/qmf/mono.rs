use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The monomial `E2^a E4^b E6^c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Mono {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, b: 0, c: 0 };
    pub const E2: Mono = Mono { a: 1, b: 0, c: 0 };
    pub const E4: Mono = Mono { a: 0, b: 1, c: 0 };
    pub const E6: Mono = Mono { a: 0, b: 0, c: 1 };

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Self { a, b, c }
    }

    pub fn weight(&self) -> u32 {
        2 * self.a + 4 * self.b + 6 * self.c
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono::new(self.a + o.a, self.b + o.b, self.c + o.c)
    }

    /// True when no E2 occurs.
    pub fn is_modular(&self) -> bool {
        self.a == 0
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("E2", self.a), ("E4", self.b), ("E6", self.c)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

pub fn check_weight(k: i64) -> Result<u32> {
    if k < 0 || k % 2 != 0 {
        Err(Error::BadWeight(k))
    } else {
        Ok(k as u32)
    }
}

/// Monomials of weight `k`, by descending E2-exponent then descending E4-exponent.
pub fn monomials_of_weight(k: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    if k % 2 != 0 {
        return out;
    }
    let half = k / 2;
    for a in (0..=half).rev() {
        let rest = half - a;
        for b in (0..=rest / 2).rev() {
            let r = rest - 2 * b;
            if r % 3 == 0 {
                out.push(Mono::new(a, b, r / 3));
            }
        }
    }
    out
}

/// Monomials of weight `k` with no E2.
pub fn modular_monomials(k: u32) -> Vec<Mono> {
    monomials_of_weight(k).into_iter().filter(Mono::is_modular).collect()
}

/// `dim M_k` by the classical closed form.
pub fn dim_m(k: i64) -> Result<usize> {
    let k = check_weight(k)? as usize;
    Ok(if k % 12 == 2 { k / 12 } else { k / 12 + 1 })
}

/// `dim Q_k = Σ_i dim M_{k−2i}`.
pub fn dim_q(k: i64) -> Result<usize> {
    let k = check_weight(k)?;
    (0..=k / 2).map(|i| dim_m((k - 2 * i) as i64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_match_monomial_counts() {
        assert_eq!(dim_m(12).unwrap(), 2);
        assert_eq!(dim_q(0).unwrap(), 1);
        assert_eq!(dim_q(8).unwrap(), 4);
        for k in (0..=60).step_by(2) {
            assert_eq!(dim_q(k as i64).unwrap(), monomials_of_weight(k).len(), "Q_{k}");
            assert_eq!(dim_m(k as i64).unwrap(), modular_monomials(k).len(), "M_{k}");
        }
        assert_eq!(dim_m(3), Err(Error::BadWeight(3)));
        assert_eq!(dim_q(-2), Err(Error::BadWeight(-2)));
    }

    #[test]
    fn display() {
        assert_eq!(Mono::new(2, 1, 0).to_string(), "E2^2*E4");
        assert_eq!(Mono::ONE.to_string(), "1");
    }
}
