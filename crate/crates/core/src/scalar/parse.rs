//! Parser for the textual form produced by `Display`, e.g. `(2*x0^2 - 1)/(3*x1)`.

use num_bigint::BigInt;
use thiserror::Error;

use crate::field::{Field, Q};

use super::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {0:?} at offset {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown variable {0:?}; expected x0..x3")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent too large")]
    Exponent,
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d.is_zero() {
                        return Err(ParseError::DivisionByZero);
                    }
                    acc = acc / d;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.primary()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let e = self.integer()?;
                    let e: u32 = e.try_into().map_err(|_| ParseError::Exponent)?;
                    if e > 64 {
                        return Err(ParseError::Exponent);
                    }
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.s.get(self.pos) {
                Some(&c) => Err(ParseError::Unexpected(c as char, self.pos)),
                None => Err(ParseError::Eof),
            };
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(txt.parse().expect("digits parse"))
    }

    fn primary(&mut self) -> Result<Scalar, ParseError> {
        match self.peek() {
            None => Err(ParseError::Eof),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(e)
                    }
                    Some(c) => Err(ParseError::Unexpected(c as char, self.pos)),
                    None => Err(ParseError::Eof),
                }
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::constant(Q::from_integer(self.integer()?))),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                match name {
                    "x0" => Ok(Scalar::var(0)),
                    "x1" => Ok(Scalar::var(1)),
                    "x2" => Ok(Scalar::var(2)),
                    "x3" => Ok(Scalar::var(3)),
                    _ => Err(ParseError::UnknownVariable(name.to_string())),
                }
            }
            Some(c) => Err(ParseError::Unexpected(c as char, self.pos)),
        }
    }
}

impl std::str::FromStr for Scalar {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        match p.peek() {
            None => Ok(v),
            Some(c) => Err(ParseError::Unexpected(c as char, p.pos)),
        }
    }
}
