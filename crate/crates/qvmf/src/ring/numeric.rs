use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::laurent::LaurentScalar;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Complex approximation with rational parts, accurate to roughly `bits` bits.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexApprox {
    pub re: Rational,
    pub im: Rational,
    pub bits: u32,
}

impl ComplexApprox {
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// `atan(1/x)` scaled by `2^bits`, by the alternating Taylor series.
fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// π as a dyadic rational with `bits` fractional bits (Machin's formula).
pub fn pi_approx(bits: u32) -> Rational {
    let guard = bits + 16;
    let scaled = atan_inv(5, guard) * 16 - atan_inv(239, guard) * 4;
    Rational::new(scaled, BigInt::one() << guard)
}

/// Evaluates `a` at `u = 2πi`.
pub fn substitute_u_numeric(a: &LaurentScalar, precision_bits: u32) -> Result<ComplexApprox> {
    if precision_bits < 53 {
        return Err(Error::InvalidArgument(format!(
            "precision must be at least 53 bits, got {precision_bits}"
        )));
    }
    let max_e = a.terms().map(|(e, _)| e.unsigned_abs()).max().unwrap_or(0);
    let work = precision_bits + 32 + 4 * max_e;
    let two_pi = pi_approx(work) * Rational::from_integer(2.into());
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for (e, c) in a.terms() {
        let mag = num_traits::pow(two_pi.clone(), e.unsigned_abs() as usize);
        let mag = if e < 0 { mag.recip() } else { mag };
        let v = c * mag;
        // i^e for e mod 4
        match e.rem_euclid(4) {
            0 => re += v,
            1 => im += v,
            2 => re -= v,
            _ => im -= v,
        }
    }
    Ok(ComplexApprox {
        re,
        im,
        bits: precision_bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let one = substitute_u_numeric(&LaurentScalar::one(), 53).unwrap().to_f64();
        assert_eq!(one, (1.0, 0.0));
        let (re, im) = substitute_u_numeric(&LaurentScalar::u(), 64).unwrap().to_f64();
        assert_eq!(re, 0.0);
        assert!((im - std::f64::consts::TAU).abs() < 1e-15);
        let x: LaurentScalar = "-6*u^-1".parse().unwrap();
        let (re, im) = substitute_u_numeric(&x, 80).unwrap().to_f64();
        assert_eq!(re, 0.0);
        assert!((im - 3.0 / std::f64::consts::PI).abs() < 1e-15);
        assert!(substitute_u_numeric(&x, 20).is_err());
    }

    #[test]
    fn pi_digits() {
        let p = pi_approx(200);
        let lo: Rational = "31415926535897932384626433832795028841971/10000000000000000000000000000000000000000"
            .parse()
            .unwrap();
        let diff = (p - lo).to_f64().unwrap().abs();
        assert!(diff < 1e-39);
    }
}
