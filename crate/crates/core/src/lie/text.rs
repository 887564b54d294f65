//! Text form of elements: `coeff*[g1,[g2,g3]]` terms joined by ` + ` / ` - `,
//! rationals as `p/q`, unit coefficients omitted, `0` for zero.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use super::context::Context;
use super::element::LieElement;
use crate::error::{CdglError, Result};
use crate::rational::Rational;

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.basis_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", m.render(self.ctx()))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a Context,
}

fn is_ident_start(b: u8) -> bool {
    b.is_ascii_alphabetic() || b == b'_'
}

fn is_ident_char(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'.'
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(CdglError::Parse { pos: self.pos, msg: msg.into() })
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

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", b as char))
        }
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<LieElement> {
        let mut acc = LieElement::zero(self.ctx);
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&sign, &t);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := coeff ['*' atom] | atom
    fn term(&mut self) -> Result<LieElement> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let c = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    Ok(self.atom()?.scaled(&c))
                } else if c.is_zero() {
                    Ok(LieElement::zero(self.ctx))
                } else {
                    self.err("a nonzero scalar is not a Lie element")
                }
            }
            _ => self.atom(),
        }
    }

    fn coeff(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/') {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| CdglError::Parse { pos: start, msg: format!("bad coefficient `{s}`") })
    }

    // atom := ident | '[' expr ',' expr ']' | '(' expr ')'
    fn atom(&mut self) -> Result<LieElement> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let u = self.expr()?;
                self.expect(b',')?;
                let v = self.expr()?;
                self.expect(b']')?;
                u.bracket(&v)
            }
            Some(b'(') => {
                self.pos += 1;
                let u = self.expr()?;
                self.expect(b')')?;
                Ok(u)
            }
            Some(b) if is_ident_start(b) => {
                let start = self.pos;
                while self.pos < self.src.len() && is_ident_char(self.src[self.pos]) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                LieElement::from_label(self.ctx, name)
            }
            _ => self.err("expected generator, `[` or `(`"),
        }
    }
}

/// Parses the text form over the generators of `ctx`.
pub fn parse_element(ctx: &Context, text: &str) -> Result<LieElement> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Generator names mentioned in `text`, sorted.
pub fn identifiers(text: &str) -> BTreeSet<String> {
    let b = text.as_bytes();
    let mut out = BTreeSet::new();
    let mut i = 0;
    while i < b.len() {
        if is_ident_start(b[i]) {
            let s = i;
            while i < b.len() && is_ident_char(b[i]) {
                i += 1;
            }
            out.insert(text[s..i].to_string());
        } else {
            i += 1;
        }
    }
    out
}
