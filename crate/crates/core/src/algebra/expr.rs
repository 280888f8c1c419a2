//! Text form of algebra elements.
//!
//! ```text
//! expr  := "0" | term ("+" term)*
//! term  := [coef "*"] ["z^" int "*"] "e[" N "](" proto ";" label "," label ")"
//! coef  := "(" q5 "," q5 ")"
//! q5    := rat [("+" | "-") rat "r5"]
//! ```
//!
//! For example `(1+0r5,0+0r5)*z^2*e[1](0;3,5) + e[1](0;5,3)`.

use super::{AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::geometry::tile::Label;
use crate::numerics::{ExactComplex, QRoot5, Rational};

pub fn print(a: &AlgebraElement) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = a
        .terms
        .iter()
        .map(|(g, c)| if *c == ExactComplex::ONE { g.to_string() } else { format!("{c}*{g}") })
        .collect();
    terms.join(" + ")
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse().or_else(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn rational(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        if self.s.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = |c: &mut Self| {
            let st = c.pos;
            while c.pos < c.s.len() && c.s[c.pos].is_ascii_digit() {
                c.pos += 1;
            }
            c.pos > st
        };
        if !digits(self) {
            self.pos = start;
            return self.err("expected a rational number");
        }
        if self.s.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            if !digits(self) {
                return self.err("expected a denominator");
            }
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        txt.parse().or_else(|_| {
            self.pos = start;
            self.err("invalid rational (zero denominator?)")
        })
    }

    fn q5(&mut self) -> Result<QRoot5> {
        let a = self.rational()?;
        let sign = match self.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => return Ok(QRoot5::from_rational(a)),
        };
        self.pos += 1;
        let b = self.rational()?;
        self.skip_ws();
        if self.s[self.pos..].starts_with(b"r5") {
            self.pos += 2;
        } else {
            return self.err("expected 'r5'");
        }
        let b = if sign < 0 { -b } else { b };
        Ok(QRoot5::new(a, b))
    }

    fn label(&mut self) -> Result<Label> {
        self.skip_ws();
        let mut v = Vec::new();
        while let Some(&c) = self.s.get(self.pos) {
            match c {
                b'1'..=b'5' => v.push(c - b'0'),
                b'0' | b'6'..=b'9' => return self.err(format!("invalid digit '{}'", c as char)),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(Label(v))
    }

    fn term(&mut self) -> Result<(ExactComplex, Generator)> {
        let mut coef = ExactComplex::ONE;
        if self.eat(b'(') {
            let re = self.q5()?;
            self.expect(b',')?;
            let im = self.q5()?;
            self.expect(b')')?;
            self.expect(b'*')?;
            coef = ExactComplex::new(re, im);
        }
        let mut k = 0;
        if self.eat(b'z') {
            k = if self.eat(b'^') { self.int()? } else { 1 };
            self.expect(b'*')?;
        }
        let at = self.pos;
        self.expect(b'e')?;
        self.expect(b'[')?;
        let n = self.int()?;
        self.expect(b']')?;
        self.expect(b'(')?;
        let p = self.int()?;
        self.expect(b';')?;
        let row = self.label()?;
        self.expect(b',')?;
        let col = self.label()?;
        self.expect(b')')?;
        if n < 0 {
            return Err(Error::Parse { pos: at, msg: "negative level".into() });
        }
        let g = Generator::new(k, n as usize, p.clamp(0, 255) as u8, row, col)
            .map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
        Ok((coef, g))
    }
}

pub fn parse(s: &str) -> Result<AlgebraElement> {
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    if c.peek() == Some(b'0') {
        c.pos += 1;
        if c.peek().is_none() {
            return Err(Error::Parse { pos: c.pos, msg: "the zero element has no level; write a term".into() });
        }
        return c.err("unexpected input after '0'");
    }
    let mut terms = vec![c.term()?];
    while c.eat(b'+') {
        terms.push(c.term()?);
    }
    if c.peek().is_some() {
        return c.err("unexpected trailing input");
    }
    let level = terms[0].1.level;
    let mut out = AlgebraElement::zero(level);
    for (coef, g) in terms {
        if g.level != level {
            return Err(Error::LevelMismatch(level, g.level));
        }
        out.add_term(g, coef);
    }
    Ok(out)
}

/// Parses `expr`, also accepting `0` as the zero element of `level`.
pub fn parse_at_level(s: &str, level: usize) -> Result<AlgebraElement> {
    if s.trim() == "0" {
        return Ok(AlgebraElement::zero(level));
    }
    let e = parse(s)?;
    if e.level != level {
        return Err(Error::LevelMismatch(level, e.level));
    }
    Ok(e)
}
