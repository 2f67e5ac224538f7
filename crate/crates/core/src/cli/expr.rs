//! Recursive-descent parser for polynomial coordinate expressions.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' nat)?
//! base     := rational | var | '(' expr ')'
//! var      := 'u' index
//! rational := int ('/' posint)?
//! ```
//!
//! The optional leading sign lets printed polynomials such as `-u1 + 2`
//! parse back unchanged.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact::{Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("variable u{index} out of range: expected u1..u{k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("division by zero literal at byte {position}")]
    DivisionByZeroLiteral { position: usize },
}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    k: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::SyntaxError { position: self.pos, message: message.into() })
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> PResult<Poly> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> PResult<Poly> {
        let base = self.base()?;
        if self.eat(b'^') {
            let Some(e) = self.digits() else { return self.error("expected exponent") };
            let Ok(e) = e.parse::<u32>() else { return self.error("exponent too large") };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base(&mut self) -> PResult<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() => self.var(),
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn rational(&mut self) -> PResult<Poly> {
        let num: BigInt = self.digits().unwrap().parse().unwrap();
        let mut value = Rational::from_integer(num);
        if self.eat(b'/') {
            let position = self.pos;
            let Some(d) = self.digits() else { return self.error("expected denominator") };
            let den: BigInt = d.parse().unwrap();
            if den.is_zero() {
                return Err(ParseError::DivisionByZeroLiteral { position });
            }
            value /= Rational::from_integer(den);
        }
        Ok(Poly::constant(self.k, value))
    }

    fn var(&mut self) -> PResult<Poly> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let index = name
            .strip_prefix('u')
            .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|s| s.parse::<usize>().ok());
        match index {
            None => Err(ParseError::UnknownVariable { name: name.to_string(), position: start }),
            Some(i) if i == 0 || i > self.k => Err(ParseError::IndexOutOfRange { index: i, k: self.k }),
            Some(i) => Ok(Poly::var(self.k, i - 1)),
        }
    }
}

/// Parses one coordinate expression in the variables `u1..uk`.
pub fn parse_expr(text: &str, k: usize) -> Result<Poly, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, k };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(poly)
}

/// Inverse of [`parse_expr`] up to whitespace.
pub fn print_expr(p: &Poly) -> String {
    p.to_expr("u")
}
