//! Rendering of `u`-scalars with `u = 2πi` written out, so that `−6u⁻¹` prints as `-3/(πi)`.

use num_traits::{One, Signed};

use super::laurent::LaurentScalar;
use super::rational::{pow_i, Rational};

fn pi_power(n: u32) -> String {
    match n {
        1 => "π".into(),
        2 => "π²".into(),
        3 => "π³".into(),
        n => format!("π^{n}"),
    }
}

/// Signed rational and symbol for a single term `c·u^e`.
fn term_parts(c: &Rational, e: i32) -> (Rational, String, bool) {
    // c u^e = c 2^e (πi)^e
    let r = c * pow_i(2, e as i64);
    if e == 0 {
        return (r, String::new(), false);
    }
    let n = e.unsigned_abs();
    // i^n reduced to ±1 or ±i
    let (neg, has_i) = match n % 4 {
        0 => (false, false),
        1 => (false, true),
        2 => (true, false),
        _ => (true, true),
    };
    let sym = format!("{}{}", pi_power(n), if has_i { "i" } else { "" });
    // 1/i^n flips the sign of the odd cases relative to i^n: 1/i = -i, 1/(-i) = i
    let r = if neg { -r } else { r };
    (r, sym, e < 0)
}

fn render_term(mag: &Rational, sym: &str, inverse: bool) -> String {
    let num = mag.numer().to_string();
    let den = mag.denom().to_string();
    if sym.is_empty() {
        return if mag.denom().is_one() { num } else { format!("{num}/{den}") };
    }
    if inverse {
        let bottom = if mag.denom().is_one() {
            sym.to_string()
        } else {
            format!("{den}{sym}")
        };
        let wrapped = sym.ends_with('i') || !mag.denom().is_one();
        if wrapped {
            format!("{num}/({bottom})")
        } else {
            format!("{num}/{bottom}")
        }
    } else {
        let top = if mag.numer().is_one() {
            sym.to_string()
        } else {
            format!("{num}{sym}")
        };
        if mag.denom().is_one() {
            top
        } else {
            format!("{top}/{den}")
        }
    }
}

/// Formats a scalar in π-notation; each `u`-power becomes a power of `πi`.
pub fn render_pi(a: &LaurentScalar) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in a.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let (r, sym, inverse) = term_parts(c, e);
        let neg = r.is_negative();
        let body = render_term(&r.abs(), &sym, inverse);
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> String {
        render_pi(&s.parse().unwrap())
    }

    #[test]
    fn table_constants() {
        assert_eq!(p("-6*u^-1"), "-3/(πi)");
        assert_eq!(p("48*u^-2"), "-12/π²");
        assert_eq!(p("-1/432*u^3"), "π³i/54");
        assert_eq!(p("1/24*u^2"), "-π²/6");
        assert_eq!(p("-1/3*u"), "-2πi/3");
        assert_eq!(p("-1/6*u"), "-πi/3");
        assert_eq!(p("1/48*u^2"), "-π²/12");
        assert_eq!(p("7"), "7");
    }
}
