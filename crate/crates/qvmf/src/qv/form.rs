use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisenberg::{FockVector, Partition};
use crate::qmf::mono::{monomials_of_weight, Mono};
use crate::qmf::QmPolynomial;
use crate::ring::pi::render_pi;
use crate::ring::{LaurentScalar, LinComb};

/// Basis element `E2^a E4^b E6^c ⊗ h(−n₁)…h(−n_k)𝟙`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QvKey {
    pub mono: Mono,
    pub part: Partition,
}

impl QvKey {
    pub fn new(mono: Mono, part: Partition) -> Self {
        Self { mono, part }
    }

    /// Q-weight plus twice the conformal degree.
    pub fn weight(&self) -> u32 {
        self.mono.weight() + 2 * self.part.size()
    }

    /// Sort key for the canonical basis order: E2-degree descending, then `(b, c)` graded
    /// lexicographically descending, then partitions descending.
    pub fn canonical_rank(&self) -> (Reverse<u32>, Reverse<u32>, Reverse<u32>, Reverse<Partition>) {
        let m = self.mono;
        (Reverse(m.a), Reverse(m.b + m.c), Reverse(m.b), Reverse(self.part.clone()))
    }

    pub fn name(&self) -> Option<String> {
        match (self.mono == Mono::ONE, self.part.is_vacuum()) {
            (true, true) => None,
            (true, false) => Some(self.part.to_string()),
            (false, true) => Some(self.mono.to_string()),
            (false, false) => Some(format!("{}*{}", self.mono, self.part)),
        }
    }
}

/// Element of `Q(V) = Q ⊗ V^(2)`.
pub type QVForm = LinComb<QvKey, LaurentScalar>;

pub fn qv_term(mono: Mono, part: Partition, c: LaurentScalar) -> QVForm {
    QVForm::term(QvKey::new(mono, part), c)
}

/// `g ⊗ v`.
pub fn tensor(g: &QmPolynomial, v: &FockVector) -> QVForm {
    let mut out = QVForm::zero();
    for (m, a) in g.iter() {
        for (p, b) in v.iter() {
            out.add_term(QvKey::new(*m, p.clone()), a * b);
        }
    }
    out
}

/// Common weight, `Some(None)` for zero, `None` when mixed.
pub fn homogeneous_weight(f: &QVForm) -> Option<Option<u32>> {
    let mut w = None;
    for k in f.keys() {
        match w {
            None => w = Some(k.weight()),
            Some(x) if x != k.weight() => return None,
            _ => {}
        }
    }
    Some(w)
}

pub fn check_weight_of(f: &QVForm, k: u32) -> Result<()> {
    match homogeneous_weight(f) {
        Some(None) => Ok(()),
        Some(Some(w)) if w == k => Ok(()),
        other => Err(Error::WeightMismatch {
            expected: k as i64,
            found: match other {
                Some(Some(w)) => w.to_string(),
                _ => "mixed".into(),
            },
        }),
    }
}

/// Maximal E2-exponent.
pub fn e2_degree(f: &QVForm) -> u32 {
    f.keys().map(|k| k.mono.a).max().unwrap_or(0)
}

/// Basis of the weight-`k` slice in canonical order.
pub fn weight_slice(k: u32) -> Vec<QvKey> {
    let mut out = Vec::new();
    if k % 2 != 0 {
        return out;
    }
    for r in (0..=k).step_by(2) {
        let parts = crate::heisenberg::partitions((k - r) / 2);
        for m in monomials_of_weight(r) {
            for p in &parts {
                out.push(QvKey::new(m, p.clone()));
            }
        }
    }
    out.sort_by_key(QvKey::canonical_rank);
    out
}

/// Terms in canonical order.
pub fn canonical_terms(f: &QVForm) -> Vec<(&QvKey, &LaurentScalar)> {
    let mut t: Vec<_> = f.iter().collect();
    t.sort_by_key(|(k, _)| k.canonical_rank());
    t
}

/// Scales so that the canonically leading coefficient is 1; the leading coefficient must be a
/// monomial in `u`.
pub fn normalize_leading(f: &QVForm) -> Result<QVForm> {
    let Some((_, c)) = canonical_terms(f).first().cloned() else {
        return Ok(f.clone());
    };
    Ok(f.scale(&c.monomial_inverse()?))
}

pub fn render(f: &QVForm) -> String {
    let terms: Vec<_> = canonical_terms(f).into_iter().map(|(k, c)| (k.name(), c.clone())).collect();
    crate::qmf::poly::render_linear(&terms)
}

/// Rendering with `u` written as `2πi`.
pub fn render_pi_notation(f: &QVForm) -> String {
    let mut out = String::new();
    for (i, (k, c)) in canonical_terms(f).into_iter().enumerate() {
        let s = render_pi(c);
        let (neg, mag) = match s.strip_prefix('-') {
            Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, rest.to_string()),
            _ => (false, s.clone()),
        };
        let sep = match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        out.push_str(sep);
        let mag = if mag.contains(" + ") || mag.contains(" - ") { format!("({mag})") } else { mag };
        match k.name() {
            None => out.push_str(&mag),
            Some(n) if mag == "1" => out.push_str(&n),
            Some(n) => out.push_str(&format!("{mag}*{n}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub struct DisplayQv<'a>(pub &'a QVForm);

impl fmt::Display for DisplayQv<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.0))
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    e2: u32,
    e4: u32,
    e6: u32,
    partition: Partition,
    coeff: LaurentScalar,
}

pub fn to_json(f: &QVForm) -> serde_json::Value {
    let terms: Vec<JsonTerm> = canonical_terms(f)
        .into_iter()
        .map(|(k, c)| JsonTerm {
            e2: k.mono.a,
            e4: k.mono.b,
            e6: k.mono.c,
            partition: k.part.clone(),
            coeff: c.clone(),
        })
        .collect();
    serde_json::to_value(terms).expect("serializable")
}

pub fn from_json(v: &serde_json::Value) -> Result<QVForm> {
    let terms: Vec<JsonTerm> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(QVForm::from_terms(
        terms
            .into_iter()
            .map(|t| (QvKey::new(Mono::new(t.e2, t.e4, t.e6), t.partition), t.coeff)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slices_and_json() {
        assert_eq!(weight_slice(0).len(), 1);
        assert_eq!(weight_slice(8).len(), 19);
        let f = &qv_term(Mono::E2, "h(-1)".parse().unwrap(), LaurentScalar::one())
            + &qv_term(Mono::ONE, "h(-2)".parse().unwrap(), "-6*u^-1".parse().unwrap());
        assert_eq!(render(&f), "E2*h(-1) - 6*u^-1*h(-2)");
        assert_eq!(render_pi_notation(&f), "E2*h(-1) - 3/(πi)*h(-2)");
        let j = to_json(&f);
        assert_eq!(j[0]["e2"], 1);
        assert_eq!(j[1]["partition"], serde_json::json!([2]));
        assert_eq!(from_json(&j).unwrap(), f);
    }
}
