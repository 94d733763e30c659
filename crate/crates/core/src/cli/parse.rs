//! The ideal description format:
//!
//! ```text
//! # comment
//! ring F32003 [x, y, z]
//! ideal
//! x^2 + 3*x*y - y^2
//! y^3
//! ```
//!
//! Products may be written with `*` or by juxtaposition (`3xy^2`); an
//! identifier that is not a variable is split greedily into variable names.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::ideal::Ideal;
use crate::poly::{Monomial, PolyRing, Polynomial, MAX_VARS};

#[derive(Clone, Debug)]
pub struct IdealDocument {
    pub ring: Arc<PolyRing>,
    pub generators: Vec<Polynomial>,
    /// One-based source line of each generator.
    pub lines: Vec<usize>,
}

impl PartialEq for IdealDocument {
    fn eq(&self, other: &Self) -> bool {
        self.ring.field() == other.ring.field()
            && self.ring.names() == other.ring.names()
            && self.generators == other.generators
    }
}

impl IdealDocument {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.generators.clone()).expect("parser checks homogeneity")
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn from_ideal(ideal: &Ideal) -> Self {
        IdealDocument {
            ring: ideal.ring().clone(),
            generators: ideal.generators().to_vec(),
            lines: vec![0; ideal.generators().len()],
        }
    }
}

impl fmt::Display for IdealDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ring F{} [{}]",
            self.ring.field().modulus(),
            self.ring.names().join(", ")
        )?;
        writeln!(f, "ideal")?;
        for g in &self.generators {
            writeln!(f, "{}", self.ring.format(g))?;
        }
        Ok(())
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn strip_comment(s: &str) -> &str {
    s.split('#').next().unwrap_or("")
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_header(text: &str, line: usize, field_override: Option<PrimeField>) -> Result<(PrimeField, Vec<String>)> {
    let col = |rest: &str| text.len() - rest.len() + 1;
    let rest = text.trim_start();
    let Some(rest) = rest.strip_prefix("ring") else {
        return Err(syntax(line, col(rest), "expected `ring F<p> [vars]`"));
    };
    let rest = rest.trim_start();
    let Some(rest) = rest.strip_prefix('F') else {
        return Err(syntax(line, col(rest), "expected field `F<p>`"));
    };
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    if digits.is_empty() {
        return Err(syntax(line, col(rest), "expected a prime after `F`"));
    }
    let p: u64 = digits
        .parse()
        .map_err(|_| syntax(line, col(rest), "prime out of range"))?;
    let field = match field_override {
        Some(f) => f,
        None => PrimeField::new(p)?,
    };
    let rest = rest[digits.len()..].trim_start();
    let Some(rest) = rest.strip_prefix('[') else {
        return Err(syntax(line, col(rest), "expected `[` before the variable list"));
    };
    let Some(end) = rest.find(']') else {
        return Err(syntax(line, col(rest), "missing `]`"));
    };
    if !rest[end + 1..].trim().is_empty() {
        return Err(syntax(line, col(&rest[end + 1..]), "unexpected text after `]`"));
    }
    let mut names = Vec::new();
    let mut offset = 0;
    for piece in rest[..end].split(',') {
        let name = piece.trim();
        let at = col(&rest[offset..]) + piece.len() - piece.trim_start().len();
        if name.is_empty() || !name.starts_with(is_ident_start) || !name.chars().all(is_ident_char) {
            return Err(syntax(line, at, format!("bad variable name `{name}`")));
        }
        names.push(name.to_string());
        offset += piece.len() + 1;
    }
    if names.len() > MAX_VARS - 1 {
        return Err(Error::VariableCount {
            got: names.len(),
            max: MAX_VARS - 1,
        });
    }
    Ok((field, names))
}

/// Term-by-term polynomial parser over one line.
struct Line<'a> {
    ring: &'a PolyRing,
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl<'a> Line<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, message: impl Into<String>) -> Error {
        syntax(self.line, self.column(), message)
    }

    fn number(&mut self) -> Result<Fp> {
        let field = self.ring.field();
        let p = field.modulus() as u64;
        let mut v = 0u64;
        let start = self.pos;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            v = (v * 10 + d as u64) % p;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(Fp(v as u32))
    }

    fn exponent(&mut self) -> Result<u32> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an exponent after `^`"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u32>()
            .ok()
            .filter(|&e| e <= u16::MAX as u32)
            .ok_or_else(|| syntax(self.line, start + 1, "exponent too large"))
    }

    /// Splits an identifier into variable names, longest match first.
    fn identifier(&mut self) -> Result<Monomial> {
        let start = self.pos;
        while self.peek().is_some_and(is_ident_char) {
            self.pos += 1;
        }
        let word: String = self.chars[start..self.pos].iter().collect();
        let names = self.ring.names();
        let mut vars = Vec::new();
        let mut at = 0;
        while at < word.len() {
            let best = names
                .iter()
                .enumerate()
                .filter(|(_, n)| word[at..].starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((i, n)) => {
                    vars.push(i);
                    at += n.len();
                }
                None => {
                    return Err(Error::UnknownVariable {
                        name: word[at..].to_string(),
                        line: self.line,
                        column: start + at + 1,
                    })
                }
            }
        }
        let e = self.exponent()?;
        let mut m = Monomial::one();
        // the exponent binds to the last variable only
        for (k, &v) in vars.iter().enumerate() {
            let p = if k + 1 == vars.len() { e } else { 1 };
            let add = Monomial::var(v);
            for _ in 0..p {
                m = m.mul(&add);
            }
        }
        if m.exponents(self.ring.nvars()).iter().any(|&x| x > u16::MAX as u32) {
            return Err(self.err("exponent too large"));
        }
        Ok(m)
    }

    /// `factor (('*')? factor)*`
    fn term(&mut self) -> Result<(Monomial, Fp)> {
        let field = *self.ring.field();
        let mut coeff = Fp::ONE;
        let mut mono = Monomial::one();
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    let e = self.exponent()?;
                    coeff = field.mul(coeff, field.pow(n, e as u64));
                }
                Some(c) if is_ident_start(c) => {
                    let m = self.identifier()?;
                    mono = mono.mul(&m);
                }
                _ if factors == 0 => return Err(self.err("expected a term")),
                _ => return Err(self.err("expected a factor after `*`")),
            }
            factors += 1;
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_digit() || is_ident_start(c) => {}
                _ => return Ok((mono, coeff)),
            }
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let field = *self.ring.field();
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = Fp::ONE;
        if let Some(c @ ('+' | '-')) = self.peek() {
            if c == '-' {
                sign = field.neg(Fp::ONE);
            }
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, field.mul(sign, c)));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => sign = Fp::ONE,
                Some('-') => sign = field.neg(Fp::ONE),
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            }
            self.pos += 1;
        }
        Ok(self.ring.from_terms(terms))
    }
}

/// Parses one polynomial in the given ring.
pub fn parse_polynomial(ring: &PolyRing, text: &str, line: usize) -> Result<Polynomial> {
    Line {
        ring,
        chars: text.chars().collect(),
        pos: 0,
        line,
    }
    .polynomial()
}

/// Parses a document; generators must be homogeneous.
pub fn parse(text: &str) -> Result<IdealDocument> {
    parse_with_field(text, None)
}

/// Like [`parse`], reading coefficients in `field` whatever the header says.
pub fn parse_with_field(text: &str, field: Option<PrimeField>) -> Result<IdealDocument> {
    let mut ring: Option<Arc<PolyRing>> = None;
    let mut in_ideal = false;
    let mut generators = Vec::new();
    let mut lines = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        match (&ring, in_ideal) {
            (None, _) => {
                let (field, names) = parse_header(body, line, field)?;
                ring = Some(PolyRing::new(field, names)?);
            }
            (Some(_), false) => {
                if body.trim() != "ideal" {
                    let col = body.len() - body.trim_start().len() + 1;
                    return Err(syntax(line, col, "expected `ideal`"));
                }
                in_ideal = true;
            }
            (Some(r), true) => {
                let f = parse_polynomial(r, body, line)?;
                if !f.is_homogeneous() {
                    return Err(Error::NonHomogeneousGenerator {
                        index: generators.len(),
                        line,
                    });
                }
                if !f.is_zero() {
                    generators.push(f);
                    lines.push(line);
                }
            }
        }
    }
    let last = text.lines().count().max(1);
    let Some(ring) = ring else {
        return Err(syntax(last, 1, "missing `ring` header"));
    };
    if !in_ideal {
        return Err(syntax(last, 1, "missing `ideal` line"));
    }
    Ok(IdealDocument {
        ring,
        generators,
        lines,
    })
}

/// Rejects generator degrees the coefficient field is too small for, and
/// degrees beyond the user's cap.
pub fn check_degrees(doc: &IdealDocument, max_degree: u32) -> Result<()> {
    let p = doc.ring.field().modulus();
    for g in &doc.generators {
        let d = g.degree().unwrap_or(0);
        if d as u64 * 100 > p as u64 {
            return Err(Error::CharacteristicTooSmall { degree: d, p });
        }
        if d > max_degree {
            return Err(Error::DegreeCap {
                degree: d,
                cap: max_degree,
            });
        }
    }
    Ok(())
}
