//! Published basis rows for `M_k(S)`, `k ≤ 8`, with constants rewritten through `πi = u/2`.

use crate::error::{Error, Result};
use crate::qmf::Mono;

use super::form::{qv_term, QVForm};
use super::kernel::{mforms_basis, span_rank};

type Row = &'static [(&'static str, Mono, &'static str)];

const E2E4: Mono = Mono { a: 1, b: 1, c: 0 };
const E2SQ: Mono = Mono { a: 2, b: 0, c: 0 };
const E2CU: Mono = Mono { a: 3, b: 0, c: 0 };
const E4SQ: Mono = Mono { a: 0, b: 2, c: 0 };

const ROWS: &[(u32, Row)] = &[
    (0, &[("1", Mono::ONE, "1")]),
    (2, &[("1", Mono::ONE, "h(-1)")]),
    (4, &[("1", Mono::E4, "1")]),
    (4, &[("1", Mono::ONE, "h(-1)^2")]),
    (4, &[("1", Mono::E2, "h(-1)"), ("-6*u^-1", Mono::ONE, "h(-2)")]),
    (6, &[("1", Mono::E6, "1")]),
    (6, &[("1", Mono::E4, "h(-1)")]),
    (6, &[("1", Mono::ONE, "h(-1)^3")]),
    (6, &[("1", E2SQ, "h(-1)"), ("-12*u^-1", Mono::E2, "h(-2)"), ("48*u^-2", Mono::ONE, "h(-3)")]),
    (6, &[("1", Mono::E2, "h(-1)^2"), ("-6*u^-1", Mono::ONE, "h(-2)h(-1)")]),
    (8, &[("1", E4SQ, "1")]),
    (8, &[("1", Mono::E6, "h(-1)")]),
    (8, &[("1", Mono::E4, "h(-1)^2")]),
    (8, &[("1", Mono::ONE, "h(-1)^4")]),
    (8, &[("1", Mono::E4, "h(-2)"), ("-1/6*u", E2E4, "h(-1)")]),
    // printed as −π/6 on E2²h(−2); −π²/6 = u²/24 is the value forced by ker Λ
    (8, &[("1", Mono::ONE, "h(-4)"), ("-1/432*u^3", E2CU, "h(-1)"), ("1/24*u^2", E2SQ, "h(-2)"), ("-1/3*u", Mono::E2, "h(-3)")]),
    (8, &[("1", Mono::ONE, "h(-3)h(-1)"), ("1/48*u^2", E2SQ, "h(-1)^2"), ("-1/4*u", Mono::E2, "h(-2)h(-1)")]),
    (8, &[("1", Mono::ONE, "h(-2)^2"), ("1/36*u^2", E2SQ, "h(-1)^2"), ("-1/3*u", Mono::E2, "h(-2)h(-1)")]),
    (8, &[("1", Mono::ONE, "h(-2)h(-1)^2"), ("-1/6*u", Mono::E2, "h(-1)^3")]),
];

/// The coefficient whose printed value disagrees with the kernel: weight, monomial, state.
pub const FLAGGED: (u32, Mono, &str) = (8, E2SQ, "h(-2)");

pub fn reference_rows(k: u32) -> Result<Vec<QVForm>> {
    if k > 8 || k % 2 != 0 {
        return Err(Error::BadWeight(k as i64));
    }
    Ok(ROWS
        .iter()
        .filter(|(w, _)| *w == k)
        .map(|(_, row)| {
            row.iter()
                .map(|(c, m, p)| qv_term(*m, p.parse().expect("literal state"), c.parse().expect("literal coefficient")))
                .fold(QVForm::zero(), |acc, t| &acc + &t)
        })
        .collect())
}

/// Mutual containment of the rows and the computed kernel basis, by exact rank.
pub fn reference_span_check(k: u32) -> Result<bool> {
    let rows = reference_rows(k)?;
    let basis = mforms_basis(k)?;
    let mut both = rows.clone();
    both.extend(basis.iter().cloned());
    let r_rows = span_rank(k, &rows)?;
    Ok(r_rows == rows.len() && r_rows == basis.len() && span_rank(k, &both)? == r_rows)
}
