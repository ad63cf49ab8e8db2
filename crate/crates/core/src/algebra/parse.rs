//! Polynomial input grammar.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := ['-'] int | var | gen | '(' expr ')'
//! ```
//!
//! `var` is the declared single-letter variable. Over an extension field the
//! letter `t` additionally denotes the field generator, so every polynomial
//! printed by [`Poly::format_in`] parses back to itself.

use crate::algebra::field::{Elem, Field};
use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// Letter naming the generator of `F_p[t]/(modulus)`.
pub const GENERATOR: char = 't';

const MAX_EXPONENT: u64 = 1 << 16;

/// Parses `text` as a polynomial in `var` over `field`.
pub fn parse_poly(text: &str, field: &Field, var: char) -> Result<Poly> {
    let gen = field
        .generator()
        .filter(|_| var != GENERATOR)
        .map(|g| (GENERATOR, g));
    Parser::new(text, field, Some(var), gen).parse()
}

/// Parses a field element: an integer expression, or over an extension field a
/// polynomial in `t` reduced modulo the defining polynomial.
pub fn parse_elem(text: &str, field: &Field) -> Result<Elem> {
    let gen = field.generator().map(|g| (GENERATOR, g));
    let poly = Parser::new(text, field, None, gen).parse()?;
    debug_assert!(poly.is_constant());
    Ok(poly.coeff(0))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
    var: Option<char>,
    gen: Option<(char, Elem)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, field: &'a Field, var: Option<char>, gen: Option<(char, Elem)>) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            field,
            var,
            gen,
        }
    }

    fn parse(mut self) -> Result<Poly> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(e)
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let mut e: u64 = 0;
        while let Some(&b) = self.src.get(self.pos).filter(|b| b.is_ascii_digit()) {
            e = e.saturating_mul(10).saturating_add((b - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected unsigned integer exponent"));
        }
        if e > MAX_EXPONENT {
            self.pos = start;
            return Err(self.error("exponent too large"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly> {
        let k = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                if !self.src.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    return Err(self.error("expected integer after '-'"));
                }
                let v = self.integer();
                Ok(Poly::constant(k, k.neg(v)))
            }
            Some(b) if b.is_ascii_digit() => {
                let v = self.integer();
                Ok(Poly::constant(k, v))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let c = b as char;
                let offset = self.pos;
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric()) {
                    return Err(self.error("identifiers are single letters"));
                }
                if Some(c) == self.var {
                    return Ok(Poly::x(k));
                }
                if let Some((g, value)) = self.gen {
                    if g == c {
                        return Ok(Poly::constant(k, value));
                    }
                }
                Err(Error::WrongVariable {
                    offset,
                    found: c,
                    expected: self.var.unwrap_or(GENERATOR),
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// Reads a decimal literal, reducing modulo p as it goes.
    fn integer(&mut self) -> Elem {
        let k = self.field;
        let p = k.characteristic();
        let mut v = 0u64;
        while let Some(&b) = self.src.get(self.pos).filter(|b| b.is_ascii_digit()) {
            v = (v * 10 + (b - b'0') as u64) % p;
            self.pos += 1;
        }
        k.from_u64(v)
    }
}
