//! Polynomial expressions in `x` and `y`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! `a/b` is only a rational literal; there is no general division. The
//! [`Display`](std::fmt::Display) form of [`BivariatePolynomial`] is accepted back.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::BivariatePolynomial;
use crate::rational::Rational;

type P = BivariatePolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("exponent at byte {offset} is not a nonnegative integer")]
    NonIntegerExponent { offset: usize },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },
}

/// Parses and expands an expression.
pub fn parse_polynomial(text: &str) -> Result<BivariatePolynomial, ParseError> {
    let mut p = Parser { s: text.as_bytes(), i: 0 };
    let e = p.expr()?;
    p.ws();
    if p.i < p.s.len() {
        return Err(p.syntax("unexpected input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn syntax(&self, message: &str) -> ParseError {
        ParseError::SyntaxError { offset: self.i, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<P, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let t = self.term()?;
            acc = if c == b'+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<P, ParseError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<P, ParseError> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<P, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.i += 1;
        let at = {
            self.ws();
            self.i
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.peek() == Some(b'/') || self.peek() == Some(b'.') {
                    return Err(ParseError::NonIntegerExponent { offset: at });
                }
                let n: u32 = n.try_into().map_err(|_| ParseError::NonIntegerExponent { offset: at })?;
                Ok(base.pow(n))
            }
            Some(b'x' | b'y' | b'(' | b'-') => Err(ParseError::NonIntegerExponent { offset: at }),
            Some(c) if c.is_ascii_alphabetic() => Err(ParseError::NonIntegerExponent { offset: at }),
            _ => Err(self.syntax("expected an exponent")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.syntax("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn atom(&mut self) -> Result<P, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if self.s.get(self.i) == Some(&b'.') {
                    return Err(self.syntax("decimal literals are not supported"));
                }
                if self.peek() == Some(b'/') {
                    self.i += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.syntax("`/` must join two integer literals"));
                    }
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.syntax("zero denominator"));
                    }
                    return Ok(P::constant(Rational::new(n, d)));
                }
                Ok(P::constant(Rational::from_integer(n)))
            }
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                match &self.s[start..self.i] {
                    b"x" => Ok(P::x()),
                    b"y" => Ok(P::y()),
                    name => Err(ParseError::UnknownVariable {
                        name: String::from_utf8_lossy(name).into_owned(),
                        offset: start,
                    }),
                }
            }
            None => Err(self.syntax("unexpected end of input")),
            _ => Err(self.syntax("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::p;
    use proptest::prelude::*;

    #[test]
    fn annulus_curve() {
        let f = parse_polynomial("y^2 - (x-1)*(x-2)*(x-3)").unwrap();
        assert_eq!(f, p(&[(1, 0, 2), (-1, 3, 0), (6, 2, 0), (-11, 1, 0), (6, 0, 0)]));
    }

    #[test]
    fn circle_and_precedence() {
        assert_eq!(parse_polynomial("x^2 + y^2 - 1").unwrap(), p(&[(1, 2, 0), (1, 0, 2), (-1, 0, 0)]));
        assert_eq!(parse_polynomial("-x^2").unwrap(), p(&[(-1, 2, 0)]));
        assert_eq!(parse_polynomial("2*x^3*y - -1").unwrap(), p(&[(2, 3, 1), (1, 0, 0)]));
        assert_eq!(parse_polynomial("1/2*x").unwrap(), P::x().scale(&crate::rational::rat(1, 2)));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_polynomial("y^x"), Err(ParseError::NonIntegerExponent { offset: 2 }));
        assert_eq!(parse_polynomial("x^(2)"), Err(ParseError::NonIntegerExponent { offset: 2 }));
        assert_eq!(
            parse_polynomial("x + z"),
            Err(ParseError::UnknownVariable { name: "z".into(), offset: 4 })
        );
        assert!(matches!(parse_polynomial("x + "), Err(ParseError::SyntaxError { offset: 4, .. })));
        assert!(matches!(parse_polynomial("(x"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_polynomial("x / y"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_polynomial("0.5*x"), Err(ParseError::SyntaxError { .. })));
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-20i64..20, 1i64..6, 0u32..5, 0u32..5), 0..8).prop_map(|ts| {
            P::from_terms(
                ts.into_iter()
                    .map(|(n, d, i, j)| ((i, j), Rational::new(n.into(), d.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_poly()) {
            prop_assert_eq!(parse_polynomial(&f.to_string()).unwrap(), f);
        }
    }
}
