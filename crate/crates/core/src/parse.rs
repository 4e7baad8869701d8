//! Text front-end for polynomials and ideals.
//!
//! ```text
//! ideal   := '(' expr (',' expr)* ')'
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' natural)?
//! atom    := natural | variable | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. Juxtaposition such as `2x` is an
//! error; errors carry the byte offset where they were detected.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Polynomial, Ring};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 10_000;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(b) => format!("`{}`", b as char),
        }
    }

    fn starts_atom(b: u8) -> bool {
        b.is_ascii_alphanumeric() || b == b'_' || b == b'('
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(b) if Self::starts_atom(b) => {
                    return Err(Error::parse(self.pos, "implicit multiplication is not allowed; use `*`"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(Error::parse(start, "exponent must be a natural number"));
        }
        let n: u64 = std::str::from_utf8(digits)
            .unwrap()
            .parse()
            .ok()
            .filter(|&n| n <= MAX_EXPONENT)
            .ok_or_else(|| Error::parse(start, format!("exponent exceeds {MAX_EXPONENT}")))?;
        Ok(base.pow(n))
    }

    fn digits(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let start = match self.peek() {
            None => return Err(Error::parse(self.pos, "expected a term, found end of input")),
            Some(_) => self.pos,
        };
        let b = self.text[start];
        if b.is_ascii_digit() {
            let p = self.ring.prime() as u64;
            let value = self.digits().iter().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
            return Ok(Polynomial::constant(self.ring, value as i64));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            while self.pos < self.text.len()
                && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
            return match self.ring.var_index(name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::parse(start, format!("unknown variable `{name}`"))),
            };
        }
        if b == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                let found = self.describe();
                return Err(Error::parse(self.pos, format!("expected `)`, found {found}")));
            }
            self.pos += 1;
            return Ok(inner);
        }
        let found = self.describe();
        Err(Error::parse(start, format!("expected a term, found {found}")))
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            let found = self.describe();
            return Err(Error::parse(self.pos, format!("unexpected {found}")));
        }
        Ok(())
    }
}

fn check_text(text: &str) -> Result<()> {
    if let Some(k) = text.bytes().position(|b| !b.is_ascii()) {
        return Err(Error::parse(k, "non-ASCII character"));
    }
    if text.trim().is_empty() {
        return Err(Error::parse(0, "empty input"));
    }
    Ok(())
}

pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    check_text(text)?;
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        ring,
    };
    let f = p.expr()?;
    p.finish()?;
    Ok(f)
}

/// A parenthesized, comma-separated generator list such as `(x*y, x*z)`.
pub fn parse_ideal(text: &str, ring: &Arc<Ring>) -> Result<Ideal> {
    check_text(text)?;
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
        ring,
    };
    if p.peek() != Some(b'(') {
        let found = p.describe();
        return Err(Error::parse(p.pos, format!("an ideal starts with `(`, found {found}")));
    }
    p.pos += 1;
    if p.peek() == Some(b')') {
        return Err(Error::parse(p.pos, "empty generator list"));
    }
    let mut gens = Vec::new();
    loop {
        if matches!(p.peek(), Some(b',' | b')')) {
            return Err(Error::parse(p.pos, "empty generator slot"));
        }
        gens.push(p.expr()?);
        match p.peek() {
            Some(b',') => p.pos += 1,
            Some(b')') => {
                p.pos += 1;
                break;
            }
            _ => {
                let found = p.describe();
                return Err(Error::parse(p.pos, format!("expected `,` or `)`, found {found}")));
            }
        }
    }
    p.finish()?;
    Ok(Ideal::new(ring, gens))
}
