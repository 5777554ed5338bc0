//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var
//! coeff  := rational | '(' rational ',' rational ')'
//! var    := 'x' digits ['^' digits]
//! ```
//!
//! Rationals are `p/q` or decimal literals, converted exactly. Whitespace is
//! ignored between tokens. A leading sign on the whole expression or on a
//! numeric literal is also accepted.

use super::{MultiIndex, SparsePolynomial};
use crate::error::{Error, Result};
use crate::exact::{parse_q, QComplex, Q};

pub const DEFAULT_MAX_DEGREE: u64 = 64;

pub fn parse_polynomial(text: &str, dim: usize) -> Result<SparsePolynomial> {
    parse_polynomial_with(text, dim, DEFAULT_MAX_DEGREE)
}

pub fn parse_polynomial_with(text: &str, dim: usize, max_degree: u64) -> Result<SparsePolynomial> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, dim, max_degree };
    let terms = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    SparsePolynomial::from_terms(dim, terms)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
    max_degree: u64,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<Vec<(MultiIndex, QComplex)>> {
        let mut out = Vec::new();
        let mut negate = false;
        if let Some(s @ (b'+' | b'-')) = self.peek() {
            // A sign directly followed by a digit belongs to the literal.
            let next = self.src.get(self.pos + 1).copied();
            if !next.is_some_and(|b| b.is_ascii_digit() || b == b'.') {
                negate = s == b'-';
                self.pos += 1;
            }
        }
        loop {
            let (idx, c) = self.term()?;
            out.push((idx, if negate { -c } else { c }));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(MultiIndex, QComplex)> {
        let mut exps = vec![0u32; self.dim];
        let mut coeff = QComplex::one();
        let mut degree: u64 = 0;
        loop {
            let start = self.pos;
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let var = self.digits()?;
                    let index: usize = var.parse().map_err(|_| self.err("variable index too large"))?;
                    if index == 0 {
                        self.pos = start;
                        return Err(self.err("variables are numbered from x1"));
                    }
                    if index > self.dim {
                        return Err(Error::VariableOutOfRange { index, dim: self.dim });
                    }
                    let mut e: u64 = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let d = self.digits()?;
                        e = d.parse().map_err(|_| self.err("exponent too large"))?;
                    }
                    degree = degree.saturating_add(e);
                    if degree > self.max_degree {
                        return Err(Error::DegreeCap { degree, cap: self.max_degree });
                    }
                    exps[index - 1] += e as u32;
                }
                Some(b'(') => {
                    self.pos += 1;
                    let re = self.rational()?;
                    self.expect(b',')?;
                    let im = self.rational()?;
                    self.expect(b')')?;
                    coeff = &coeff * &QComplex::new(re, im);
                }
                Some(b) if b.is_ascii_digit() || b == b'.' || b == b'-' || b == b'+' => {
                    let r = self.rational()?;
                    coeff = coeff.scale(&r);
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((MultiIndex(exps), coeff))
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    /// `[sign] decimal ['/' decimal]`
    fn rational(&mut self) -> Result<Q> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        self.decimal()?;
        self.skip_ws();
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            self.skip_ws();
            self.decimal()?;
        }
        let text: String = String::from_utf8_lossy(&self.src[start..self.pos])
            .chars()
            .filter(|c| !c.is_ascii_whitespace())
            .collect();
        parse_q(&text).map_err(|_| Error::Syntax { pos: start, msg: format!("invalid rational {text:?}") })
    }

    fn decimal(&mut self) -> Result<()> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos == start || &self.src[start..self.pos] == b"." {
            self.pos = start;
            return Err(self.err("expected a number"));
        }
        Ok(())
    }
}
