//! Recursive-descent parser for polynomial text such as
//! `x^3 + y^3 - (4/27)*z^3 - 2xyz`.
//!
//! Grammar: `expr := term (('+'|'-') term)*`,
//! `term := unary (('*'|'/')? unary)*` (juxtaposition multiplies),
//! `unary := ('-'|'+') unary | power`, `power := atom ('^' int)?`,
//! `atom := int | letter | '(' expr ')'`. Each letter is its own variable.
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ExactError, MPoly, Rational};

pub fn parse_poly(text: &str) -> Result<MPoly, ExactError> {
    let mut p = Parser { s: text.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.err(format!("unexpected `{}`", p.s[p.pos])));
    }
    Ok(e)
}

struct Parser {
    s: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: impl Into<String>) -> ExactError {
        ExactError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly, ExactError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ExactError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        Some(_) => {
                            return Err(ExactError::Parse { pos: at, msg: "division by zero".into() })
                        }
                        None => {
                            return Err(ExactError::Parse {
                                pos: at,
                                msg: "division by a non-constant".into(),
                            })
                        }
                    }
                }
                Some(c) if c.is_ascii_alphabetic() || c == '(' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, ExactError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MPoly, ExactError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.s.get(self.pos).is_some_and(char::is_ascii_digit) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected a non-negative integer exponent"));
            }
            let digits: String = self.s[start..self.pos].iter().collect();
            let e: u32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, ExactError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.s.get(self.pos).is_some_and(char::is_ascii_digit) {
                    self.pos += 1;
                }
                let digits: String = self.s[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(MPoly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                Ok(MPoly::var(&c.to_string()))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn juxtaposition_and_rationals() {
        let a = parse_poly("x^3 + y^3 - (4/27)*z^3 - 2xyz").unwrap();
        let b = parse_poly("x^3 + y^3 - 4/27 z^3 - 2*x*y*z").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("3/6").unwrap(), MPoly::constant(rat(1, 2)));
        assert_eq!(parse_poly("-x^2").unwrap(), -&parse_poly("x^2").unwrap());
        assert_eq!(parse_poly("2(x+1)").unwrap(), parse_poly("2x + 2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_poly("x +"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse_poly("x / y"), Err(ExactError::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("(x"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse_poly("x^-1"), Err(ExactError::Parse { .. })));
        assert!(matches!(parse_poly("x ? y"), Err(ExactError::Parse { pos: 2, .. })));
    }
}
