//! Human-readable polynomial syntax: `3*t1^2*t2 - 1`, `X^2 + t1*X - t1`.
//!
//! Printing is canonical: terms by descending `X` degree, then descending lex
//! order in `t`. Parsing accepts any expression built from integers, the
//! variables, `+ - * ^` and parentheses; when `n = 1`, a bare `t` means `t1`.

use std::fmt::Write;

use num_traits::{One, Signed};

use super::{Int, MPoly, MPolyRing, PolyRing, Ring, UPoly};
use crate::error::{Error, Result};

pub fn format_mpoly(p: &MPoly) -> String {
    format_terms(p.terms().rev().map(|(m, c)| (c.clone(), monomial_string(m, None))))
}

pub fn format_upoly(p: &UPoly<MPoly>) -> String {
    format_upoly_in(p, "X")
}

/// Like [`format_upoly`] with a custom name for the main variable.
pub fn format_upoly_in(p: &UPoly<MPoly>, var: &str) -> String {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        for (m, a) in c.terms().rev() {
            terms.push((a.clone(), monomial_string(m, Some((var, k)))));
        }
    }
    format_terms(terms.into_iter())
}

fn monomial_string(m: &[u32], main: Option<(&str, usize)>) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{}", i + 1, e)),
        }
    }
    if let Some((v, k)) = main {
        match k {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

/// Join signed terms; an empty monomial string marks a constant term.
pub(crate) fn format_terms(terms: impl Iterator<Item = (Int, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            write!(out, "{a}").unwrap();
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            write!(out, "{a}*{mono}").unwrap();
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `Z`, `Z[t1]`, `Z[t1,t2]`, …
pub fn integer_ring_name(n: usize) -> String {
    if n == 0 {
        "Z".into()
    } else {
        format!("Z[{}]", (1..=n).map(|i| format!("t{i}")).collect::<Vec<_>>().join(","))
    }
}

/// `Q`, `Q(t1)`, `Q(t1,t2)`, …
pub fn rational_field_name(n: usize) -> String {
    if n == 0 {
        "Q".into()
    } else {
        format!("Q({})", (1..=n).map(|i| format!("t{i}")).collect::<Vec<_>>().join(","))
    }
}

pub fn parse_mpoly(s: &str, nvars: usize) -> Result<MPoly> {
    let p = Parser::new(s, nvars, false).run()?;
    Ok(p.coeff(0).cloned().unwrap_or_else(|| MPoly::zero(nvars)))
}

pub fn parse_upoly(s: &str, nvars: usize) -> Result<UPoly<MPoly>> {
    Parser::new(s, nvars, true).run()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Int),
    Ident(String),
    Sym(char),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    nvars: usize,
    allow_x: bool,
    px: PolyRing<MPolyRing>,
}

fn err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line: 1, column, message: message.into() }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, nvars: usize, allow_x: bool) -> Self {
        Parser {
            src,
            toks: Vec::new(),
            pos: 0,
            nvars,
            allow_x,
            px: PolyRing::new(MPolyRing::new(nvars)),
        }
    }

    fn lex(&mut self) -> Result<()> {
        let chars: Vec<(usize, char)> = self.src.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (off, c) = chars[i];
            let col = self.src[..off].chars().count() + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let end = chars.get(j).map_or(self.src.len(), |x| x.0);
                let n: Int = self.src[off..end].parse().map_err(|_| err(col, "bad integer"))?;
                self.toks.push((Tok::Num(n), col));
                i = j;
            } else if c.is_ascii_alphabetic() {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_alphanumeric() {
                    j += 1;
                }
                let end = chars.get(j).map_or(self.src.len(), |x| x.0);
                self.toks.push((Tok::Ident(self.src[off..end].to_string()), col));
                i = j;
            } else if "+-*^()".contains(c) {
                self.toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(err(col, format!("unexpected character '{c}'")));
            }
        }
        Ok(())
    }

    fn end_col(&self) -> usize {
        self.src.chars().count() + 1
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col(), |t| t.1)
    }

    fn run(mut self) -> Result<UPoly<MPoly>> {
        self.lex()?;
        if self.toks.is_empty() {
            return Err(err(1, "empty polynomial"));
        }
        let p = self.expr()?;
        if self.pos < self.toks.len() {
            return Err(err(self.col(), "unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<UPoly<MPoly>> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { self.px.add(&acc, &rhs) } else { self.px.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<UPoly<MPoly>> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = self.px.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<UPoly<MPoly>> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(self.px.neg(&v))
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<UPoly<MPoly>> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u64 = n.try_into().map_err(|_| err(col, "exponent too large"))?;
                    if e > 4096 {
                        return Err(err(col, "exponent too large"));
                    }
                    Ok(self.px.pow(&base, e))
                }
                _ => Err(err(col, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<UPoly<MPoly>> {
        let col = self.col();
        let tok = self.peek().cloned().ok_or_else(|| err(col, "unexpected end of input"))?;
        self.pos += 1;
        let r = *self.px.base();
        match tok {
            Tok::Num(n) => Ok(UPoly::constant(r.constant(n))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(err(self.col(), "expected ')'")),
                }
            }
            Tok::Sym(c) => Err(err(col, format!("unexpected '{c}'"))),
            Tok::Ident(name) => {
                if name == "X" {
                    if !self.allow_x {
                        return Err(err(col, "X is not allowed here"));
                    }
                    return Ok(self.px.x());
                }
                if name == "t" && self.nvars == 1 {
                    return Ok(UPoly::constant(r.var(0)));
                }
                if let Some(i) = name.strip_prefix('t').and_then(|d| d.parse::<usize>().ok()) {
                    if (1..=self.nvars).contains(&i) && !name[1..].starts_with('0') {
                        return Ok(UPoly::constant(r.var(i - 1)));
                    }
                }
                Err(err(col, format!("unknown variable '{name}' (n = {})", self.nvars)))
            }
        }
    }
}
