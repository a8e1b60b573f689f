//! Expression syntax: `E2`, `E4`, `E6`, `u`, rational literals, `+ - * / ^`, parentheses and
//! implicit multiplication (`3E4`, `u E2`). Division is allowed only by a nonzero scalar monomial.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{LaurentScalar, Rational};

use super::mono::Mono;
use super::poly::{constant, mul, pow, QmPolynomial};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let j = (i..cs.len()).find(|&j| !cs[j].is_ascii_digit()).unwrap_or(cs.len());
            let text: String = cs[i..j].iter().collect();
            out.push(Tok::Num(text.parse().unwrap()));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let j = (i..cs.len()).find(|&j| !cs[j].is_ascii_alphanumeric()).unwrap_or(cs.len());
            out.push(Tok::Ident(cs[i..j].iter().collect()));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QmPolynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QmPolynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = mul(&acc, &self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.scale(&scalar_inverse(&d)?);
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = mul(&acc, &self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QmPolynomial> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QmPolynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(Error::Parse("expected an integer exponent".into()));
        };
        self.pos += 1;
        let n: u32 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
        if neg {
            let inv = scalar_inverse(&base)?;
            Ok(constant(inv.pow(n)))
        } else {
            Ok(pow(&base, n))
        }
    }

    fn atom(&mut self) -> Result<QmPolynomial> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(constant(LaurentScalar::constant(Rational::from_integer(n)))),
            Tok::Ident(name) => match name.as_str() {
                "u" => Ok(constant(LaurentScalar::u())),
                "E2" => Ok(QmPolynomial::basis(Mono::E2)),
                "E4" => Ok(QmPolynomial::basis(Mono::E4)),
                "E6" => Ok(QmPolynomial::basis(Mono::E6)),
                other => Err(Error::Parse(format!("unknown symbol {other:?}"))),
            },
            Tok::Op('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Tok::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

fn scalar_inverse(d: &QmPolynomial) -> Result<LaurentScalar> {
    if d.is_zero() {
        return Err(Error::ZeroDivision);
    }
    if d.len() != 1 || d.get(&Mono::ONE).is_none() {
        return Err(Error::Parse("division by a non-scalar".into()));
    }
    d.coeff(&Mono::ONE).monomial_inverse()
}

/// Parses an element of `Q`.
pub fn parse_qm(s: &str) -> Result<QmPolynomial> {
    let mut p = Parser { toks: lex(s)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmf::poly::{e2, e4, e6, DisplayPoly};
    use crate::ring::rational::rat;

    #[test]
    fn parses() {
        let f = parse_qm("(E2^2 - E4)/12").unwrap();
        assert_eq!(f, (&pow(&e2(), 2) - &e4()).scale_rat(&rat(1, 12)));
        let g = parse_qm("3E4 - u^-1 E2*E4 + 1/2 u E6").unwrap();
        let expect = &(&e4().scale_rat(&rat(3, 1)) - &mul(&e2(), &e4()).scale(&"u^-1".parse().unwrap()))
            + &e6().scale(&"1/2*u".parse().unwrap());
        assert_eq!(g, expect);
        assert_eq!(DisplayPoly(&parse_qm("-E2").unwrap()).to_string(), "-E2");
    }

    #[test]
    fn rejects() {
        assert!(matches!(parse_qm("E4/E2"), Err(Error::Parse(_))));
        assert_eq!(parse_qm("E4/0"), Err(Error::ZeroDivision));
        assert!(parse_qm("E8").is_err());
        assert!(parse_qm("(E2").is_err());
        assert!(parse_qm("").is_err());
        assert!(matches!(parse_qm("E4/(1+u)"), Err(Error::NotAMonomial(_))));
    }
}
