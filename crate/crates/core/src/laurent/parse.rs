use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::Rational;

/// Parse a literal such as `"1 - 2/3*t^-1 + t^2"`. Whitespace is ignored.
pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    parse_poly_in(s, 't')
}

/// Same as [`parse_poly`] with a different variable letter.
pub fn parse_poly_in(s: &str, var: char) -> Result<LaurentPoly> {
    let chars: Vec<(usize, char)> = s
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser { chars, pos: 0, var };
    parser.poly()
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let chars: Vec<(usize, char)> = s
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut parser = Parser { chars, pos: 0, var: 't' };
    let neg = parser.eat('-');
    if !neg {
        parser.eat('+');
    }
    let r = parser.rational()?;
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(if neg { -r } else { r })
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    var: char,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i + 1)
            .unwrap_or_else(|| self.chars.last().map(|&(i, _)| i + 2).unwrap_or(1))
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse { column: self.column(), message: message.to_string() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat('/') {
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if !self.eat('^') {
            return Ok(1);
        }
        let neg = self.eat('-');
        let e = self.integer()?;
        let e: i64 = e.try_into().map_err(|_| self.error("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        if self.eat(self.var) {
            let e = self.exponent()?;
            return Ok(LaurentPoly::monomial(Rational::one(), e));
        }
        let c = self.rational()?;
        if self.eat('*') {
            if !self.eat(self.var) {
                return Err(self.error(&format!("expected '{}' after '*'", self.var)));
            }
            let e = self.exponent()?;
            return Ok(LaurentPoly::monomial(c, e));
        }
        Ok(LaurentPoly::constant(c))
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        if self.chars.is_empty() {
            return Err(self.error("empty polynomial literal"));
        }
        let mut acc = LaurentPoly::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(self.error("expected '+' or '-'"));
            };
            first = false;
            let term = self.term()?;
            acc = if neg { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }
}
