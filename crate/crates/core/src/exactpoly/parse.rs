use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, PolyError, PolyRing, Rational};

/// Parses a polynomial over `ring`.
///
/// Accepts `+ - * ^ / ( )`, integer literals and variable names. Products may
/// be written with `*` or by juxtaposition (`2EH`, `E H`); a name followed by
/// digits is a single identifier, so `q0` is a variable. `/` only divides by a
/// constant.
pub fn parse_poly(text: &str, ring: &Arc<PolyRing>) -> Result<Poly, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Splits a leading identifier (`[A-Za-z_][A-Za-z0-9_]*`) off `s`.
pub fn tokenize_ident(s: &str) -> Option<(&str, &str)> {
    let b = s.as_bytes();
    if b.is_empty() || !(b[0].is_ascii_alphabetic() || b[0] == b'_') {
        return None;
    }
    let end = b
        .iter()
        .position(|c| !(c.is_ascii_alphanumeric() || *c == b'_'))
        .unwrap_or(b.len());
    Some(s.split_at(end))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
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

    fn starts_factor(c: u8) -> bool {
        c.is_ascii_alphanumeric() || c == b'_' || c == b'('
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() {
                        return Err(self.err("division by a non-constant"));
                    }
                    let c = d.constant_term();
                    if num_traits::Zero::is_zero(&c) {
                        return Err(PolyError::ZeroDenominator);
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(c) if Self::starts_factor(c) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected a nonnegative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .expect("digits");
                Ok(Poly::constant(self.ring, Rational::new(n, BigInt::one())))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let rest = std::str::from_utf8(&self.src[self.pos..]).unwrap();
                let (ident, _) = tokenize_ident(rest).expect("identifier start");
                // Longest prefix naming a variable, so `EH` reads as `E*H`.
                let name = (1..=ident.len())
                    .rev()
                    .map(|k| &ident[..k])
                    .find(|n| self.ring.var_index(n).is_some())
                    .ok_or_else(|| self.err(&format!("unknown variable `{ident}`")))?;
                self.pos += name.len();
                self.ring.var(name)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
