//! Field-spec files: named extensions, towers between them and lemma
//! instances to check.
//!
//! ```text
//! # Gaussian integers
//! extension { n = 0; f = "X^2 + 1"; label = "Qi" }
//! extension { n = 0; f = "X^2 + 5"; label = "K5" }
//! extension { n = 0; f = "X^4 + 3*X^2 + 1"; label = "K5(i)" }
//! tower { label = "hcf"; lower = "K5"; upper = "K5(i)"; e = "-X^3 - 4*X"; den = "1" }
//! harness { composite = ["hcf", "hcf"] }
//! ```
//!
//! A tower may list several `upper`/`e`/`den` groups: alternative
//! presentations of the same relative extension. `e` is the image of the lower
//! generator written in the upper one, divided by `den`.

use std::collections::HashMap;
use std::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::orders::{new_extension, FunctionFieldExt};
use crate::poly::text::{format_mpoly, format_upoly, parse_mpoly, parse_upoly};
use crate::poly::{MPoly, UPoly};
use crate::ramification::{LemmaInstance, LocalTower, TowerEmbedding};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDecl {
    pub label: String,
    pub n: usize,
    pub f: UPoly<MPoly>,
    pub maximal_attested: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationDecl {
    pub upper: String,
    pub e: UPoly<MPoly>,
    pub den: MPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerDecl {
    pub label: String,
    pub lower: String,
    pub presentations: Vec<PresentationDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HarnessDecl {
    Composite { left: String, right: String },
    BaseChange { base: String, ext: String },
    Transitivity { step: String, other: String },
    Subfield { sub: String, other: String },
    Substitution { ext: String, images: Vec<MPoly> },
}

impl HarnessDecl {
    fn key(&self) -> &'static str {
        match self {
            HarnessDecl::Composite { .. } => "composite",
            HarnessDecl::BaseChange { .. } => "base_change",
            HarnessDecl::Transitivity { .. } => "transitivity",
            HarnessDecl::Subfield { .. } => "subfield",
            HarnessDecl::Substitution { .. } => "substitution",
        }
    }

    fn items(&self) -> Vec<String> {
        match self {
            HarnessDecl::Composite { left: a, right: b }
            | HarnessDecl::BaseChange { base: a, ext: b }
            | HarnessDecl::Transitivity { step: a, other: b }
            | HarnessDecl::Subfield { sub: a, other: b } => vec![a.clone(), b.clone()],
            HarnessDecl::Substitution { ext, images } => {
                std::iter::once(ext.clone()).chain(images.iter().map(format_mpoly)).collect()
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldSpecFile {
    pub extensions: Vec<ExtensionDecl>,
    pub towers: Vec<TowerDecl>,
    pub harness: Vec<HarnessDecl>,
}

impl FieldSpecFile {
    pub fn extension_decl(&self, label: &str) -> Option<&ExtensionDecl> {
        self.extensions.iter().find(|e| e.label == label)
    }

    pub fn tower_decl(&self, label: &str) -> Option<&TowerDecl> {
        self.towers.iter().find(|t| t.label == label)
    }

    fn unknown(label: &str, what: &str) -> Error {
        Error::Semantic { token: label.to_string(), message: format!("no {what} with this label") }
    }

    /// Build the named extension.
    pub fn extension(&self, label: &str) -> Result<FunctionFieldExt> {
        let d = self.extension_decl(label).ok_or_else(|| Self::unknown(label, "extension"))?;
        Ok(new_extension(d.n, d.f.clone(), &d.label)?.with_maximal_attested(d.maximal_attested))
    }

    /// Build the named tower. An extension label names that field over `Q`.
    pub fn tower(&self, label: &str) -> Result<LocalTower> {
        if let Some(d) = self.tower_decl(label) {
            let lower = self.extension(&d.lower)?;
            let mut presentations = Vec::with_capacity(d.presentations.len());
            for p in &d.presentations {
                let upper = self.extension(&p.upper)?;
                presentations.push(TowerEmbedding::new(lower.clone(), upper, p.e.clone(), p.den.clone())?);
            }
            return LocalTower::new(&d.label, presentations);
        }
        if self.extension_decl(label).is_some() {
            let ext = self.extension(label)?;
            return Ok(LocalTower::single(TowerEmbedding::over_rationals(&ext)?));
        }
        Err(Self::unknown(label, "tower or extension"))
    }

    pub fn harness_instances(&self) -> Result<Vec<LemmaInstance>> {
        let mut cache: HashMap<String, LocalTower> = HashMap::new();
        let mut get = |label: &str| -> Result<LocalTower> {
            if let Some(t) = cache.get(label) {
                return Ok(t.clone());
            }
            let t = self.tower(label)?;
            cache.insert(label.to_string(), t.clone());
            Ok(t)
        };
        let mut out = Vec::with_capacity(self.harness.len());
        for h in &self.harness {
            out.push(match h {
                HarnessDecl::Composite { left, right } => {
                    LemmaInstance::Composite { left: get(left)?, right: get(right)? }
                }
                HarnessDecl::BaseChange { base, ext } => LemmaInstance::BaseChange { base: get(base)?, ext: get(ext)? },
                HarnessDecl::Transitivity { step, other } => {
                    LemmaInstance::Transitivity { step: get(step)?, other: get(other)? }
                }
                HarnessDecl::Subfield { sub, other } => LemmaInstance::Subfield { sub: get(sub)?, other: get(other)? },
                HarnessDecl::Substitution { ext, images } => {
                    LemmaInstance::Substitution { ext: self.extension(ext)?, images: images.clone() }
                }
            });
        }
        Ok(out)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

impl fmt::Display for FieldSpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.extensions {
            write!(f, "extension {{ n = {}; f = {}; label = {}", e.n, quote(&format_upoly(&e.f)), quote(&e.label))?;
            if e.maximal_attested {
                write!(f, "; maximal = attested")?;
            }
            writeln!(f, " }}")?;
        }
        for t in &self.towers {
            write!(f, "tower {{ label = {}; lower = {}", quote(&t.label), quote(&t.lower))?;
            for p in &t.presentations {
                write!(
                    f,
                    "; upper = {}; e = {}; den = {}",
                    quote(&p.upper),
                    quote(&format_upoly(&p.e)),
                    quote(&format_mpoly(&p.den))
                )?;
            }
            writeln!(f, " }}")?;
        }
        if !self.harness.is_empty() {
            writeln!(f, "harness {{")?;
            for h in &self.harness {
                let items: Vec<String> = h.items().iter().map(|s| quote(s)).collect();
                writeln!(f, "  {} = [{}];", h.key(), items.join(", "))?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    let advance = |c: char, line: &mut usize, column: &mut usize| {
        if c == '\n' {
            *line += 1;
            *column = 1;
        } else {
            *column += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut column);
        } else if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                chars.next();
                advance(d, &mut line, &mut column);
            }
        } else if c == '"' {
            chars.next();
            advance(c, &mut line, &mut column);
            let mut s = String::new();
            loop {
                let Some(d) = chars.next() else {
                    return Err(syntax(l0, c0, "unterminated string"));
                };
                advance(d, &mut line, &mut column);
                match d {
                    '"' => break,
                    '\n' => return Err(syntax(l0, c0, "unterminated string")),
                    '\\' => {
                        let Some(e) = chars.next() else {
                            return Err(syntax(l0, c0, "unterminated string"));
                        };
                        advance(e, &mut line, &mut column);
                        if e != '"' && e != '\\' {
                            return Err(syntax(line, column - 2, format!("unknown escape '\\{e}'")));
                        }
                        s.push(e);
                    }
                    _ => s.push(d),
                }
            }
            out.push(Spanned { tok: Tok::Str(s), line: l0, column: c0 });
        } else if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_' || d == '-') {
                    break;
                }
                s.push(d);
                chars.next();
                advance(d, &mut line, &mut column);
            }
            out.push(Spanned { tok: Tok::Word(s), line: l0, column: c0 });
        } else if "{}[];=,".contains(c) {
            chars.next();
            advance(c, &mut line, &mut column);
            out.push(Spanned { tok: Tok::Sym(c), line: l0, column: c0 });
        } else {
            return Err(syntax(l0, c0, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// A value on the right of `=`, with the position where it started.
#[derive(Clone, Debug)]
struct Value {
    items: Vec<(String, usize, usize)>,
    list: bool,
    line: usize,
    column: usize,
}

impl Value {
    fn scalar(&self, key: &str) -> Result<&(String, usize, usize)> {
        if self.list {
            return Err(syntax(self.line, self.column, format!("'{key}' takes a single value, not a list")));
        }
        Ok(&self.items[0])
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Spanned { tok: Tok::Sym(d), .. }) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            _ => {
                let (l, col) = self.here();
                Err(syntax(l, col, format!("expected '{c}'")))
            }
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Spanned { tok: Tok::Sym(d), .. }) if *d == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self, what: &str) -> Result<(String, usize, usize)> {
        match self.peek().cloned() {
            Some(Spanned { tok: Tok::Word(w), line, column }) => {
                self.pos += 1;
                Ok((w, line, column))
            }
            _ => {
                let (l, c) = self.here();
                Err(syntax(l, c, format!("expected {what}")))
            }
        }
    }

    fn atom(&mut self) -> Result<(String, usize, usize)> {
        match self.peek().cloned() {
            Some(Spanned { tok: Tok::Word(w) | Tok::Str(w), line, column }) => {
                self.pos += 1;
                Ok((w, line, column))
            }
            _ => {
                let (l, c) = self.here();
                Err(syntax(l, c, "expected a value"))
            }
        }
    }

    fn value(&mut self) -> Result<Value> {
        let (line, column) = self.here();
        if self.eat_sym('[') {
            let mut items = Vec::new();
            if !self.eat_sym(']') {
                loop {
                    items.push(self.atom()?);
                    if self.eat_sym(']') {
                        break;
                    }
                    self.expect_sym(',')?;
                }
            }
            return Ok(Value { items, list: true, line, column });
        }
        Ok(Value { items: vec![self.atom()?], list: false, line, column })
    }

    /// `{ key = value; … }`, trailing `;` optional.
    fn block(&mut self) -> Result<Vec<(String, usize, usize, Value)>> {
        self.expect_sym('{')?;
        let mut out = Vec::new();
        loop {
            if self.eat_sym('}') {
                return Ok(out);
            }
            let (k, l, c) = self.word("a key")?;
            self.expect_sym('=')?;
            let v = self.value()?;
            out.push((k, l, c, v));
            if self.eat_sym(';') {
                continue;
            }
            self.expect_sym('}')?;
            return Ok(out);
        }
    }
}

fn semantic(token: &str, message: impl Into<String>) -> Error {
    Error::Semantic { token: token.to_string(), message: message.into() }
}

/// Reject variables beyond `t_n` before handing the text to the polynomial
/// parser, so the error names the offending variable.
fn check_variables(s: &str, n: usize) -> Result<()> {
    for word in s.split(|c: char| !c.is_ascii_alphanumeric()) {
        let Some(rest) = word.strip_prefix('t') else { continue };
        let bad = if rest.is_empty() {
            n != 1
        } else {
            rest.parse::<usize>().map_or(false, |i| i == 0 || i > n)
        };
        if bad {
            return Err(semantic(word, format!("variable count mismatch: declared n = {n}")));
        }
    }
    Ok(())
}

fn poly_error(e: Error, line: usize, column: usize) -> Error {
    match e {
        Error::Parse { column: c, message, .. } => syntax(line, column + c, message),
        other => other,
    }
}

fn upoly_at(item: &(String, usize, usize), n: usize) -> Result<UPoly<MPoly>> {
    check_variables(&item.0, n)?;
    parse_upoly(&item.0, n).map_err(|e| poly_error(e, item.1, item.2))
}

fn mpoly_at(item: &(String, usize, usize), n: usize) -> Result<MPoly> {
    check_variables(&item.0, n)?;
    parse_mpoly(&item.0, n).map_err(|e| poly_error(e, item.1, item.2))
}

fn required<'a>(
    fields: &'a [(String, usize, usize, Value)],
    key: &str,
    section: &str,
    at: (usize, usize),
) -> Result<&'a (String, usize, usize)> {
    let mut found = fields.iter().filter(|f| f.0 == key);
    let v = found.next().ok_or_else(|| syntax(at.0, at.1, format!("{section} needs '{key}'")))?;
    if let Some(dup) = found.next() {
        return Err(syntax(dup.1, dup.2, format!("duplicate '{key}'")));
    }
    v.3.scalar(key)
}

fn extension_section(fields: &[(String, usize, usize, Value)], at: (usize, usize)) -> Result<ExtensionDecl> {
    for f in fields {
        if !["n", "f", "label", "maximal"].contains(&f.0.as_str()) {
            return Err(syntax(f.1, f.2, format!("unknown key '{}' in extension", f.0)));
        }
    }
    let n_item = required(fields, "n", "extension", at)?;
    let n: usize = n_item.0.parse().map_err(|_| syntax(n_item.1, n_item.2, "n must be a nonnegative integer"))?;
    let label = required(fields, "label", "extension", at)?.0.clone();
    if label.is_empty() {
        return Err(syntax(at.0, at.1, "empty label"));
    }
    let f = upoly_at(required(fields, "f", "extension", at)?, n)?;
    let maximal_attested = match fields.iter().find(|f| f.0 == "maximal") {
        None => false,
        Some(m) => match m.3.scalar("maximal")?.0.as_str() {
            "attested" => true,
            "unknown" => false,
            other => return Err(syntax(m.1, m.2, format!("maximal must be 'attested' or 'unknown', not '{other}'"))),
        },
    };
    Ok(ExtensionDecl { label, n, f, maximal_attested })
}

fn tower_section(
    fields: &[(String, usize, usize, Value)],
    at: (usize, usize),
    extensions: &[ExtensionDecl],
) -> Result<TowerDecl> {
    let find = |label: &str| {
        extensions.iter().find(|e| e.label == label).ok_or_else(|| semantic(label, "undeclared extension"))
    };
    let mut label = None;
    let mut lower: Option<&ExtensionDecl> = None;
    let mut presentations = Vec::new();
    let mut pending: Option<(String, Option<UPoly<MPoly>>, Option<MPoly>)> = None;
    let close = |p: Option<(String, Option<UPoly<MPoly>>, Option<MPoly>)>,
                 out: &mut Vec<PresentationDecl>,
                 n: usize|
     -> Result<()> {
        if let Some((upper, e, den)) = p {
            let e = e.ok_or_else(|| syntax(at.0, at.1, format!("presentation '{upper}' needs 'e'")))?;
            let den = den.unwrap_or_else(|| MPoly::constant(n, 1.into()));
            out.push(PresentationDecl { upper, e, den });
        }
        Ok(())
    };
    for (key, line, column, value) in fields {
        let item = value.scalar(key)?;
        match key.as_str() {
            "label" if label.is_none() => label = Some(item.0.clone()),
            "lower" if lower.is_none() => lower = Some(find(&item.0)?),
            "upper" => {
                let lo = lower.ok_or_else(|| syntax(*line, *column, "'lower' must come before 'upper'"))?;
                let up = find(&item.0)?;
                if up.n != lo.n {
                    return Err(semantic(
                        &item.0,
                        format!("variable count mismatch: n = {} over '{}' with n = {}", up.n, lo.label, lo.n),
                    ));
                }
                close(pending.take(), &mut presentations, lo.n)?;
                pending = Some((item.0.clone(), None, None));
            }
            "e" | "den" => {
                let lo = lower.ok_or_else(|| syntax(*line, *column, "'lower' must come before 'e' and 'den'"))?;
                let Some(p) = pending.as_mut() else {
                    return Err(syntax(*line, *column, format!("'{key}' before any 'upper'")));
                };
                if key == "e" {
                    if p.1.is_some() {
                        return Err(syntax(*line, *column, "duplicate 'e'"));
                    }
                    p.1 = Some(upoly_at(item, lo.n)?);
                } else {
                    if p.2.is_some() {
                        return Err(syntax(*line, *column, "duplicate 'den'"));
                    }
                    p.2 = Some(mpoly_at(item, lo.n)?);
                }
            }
            "label" | "lower" => return Err(syntax(*line, *column, format!("duplicate '{key}'"))),
            _ => return Err(syntax(*line, *column, format!("unknown key '{key}' in tower"))),
        }
    }
    let label = label.ok_or_else(|| syntax(at.0, at.1, "tower needs 'label'"))?;
    let lower = lower.ok_or_else(|| syntax(at.0, at.1, "tower needs 'lower'"))?;
    close(pending, &mut presentations, lower.n)?;
    if presentations.is_empty() {
        return Err(syntax(at.0, at.1, "tower needs at least one 'upper'"));
    }
    Ok(TowerDecl { label, lower: lower.label.clone(), presentations })
}

fn harness_section(
    fields: &[(String, usize, usize, Value)],
    extensions: &[ExtensionDecl],
    towers: &[TowerDecl],
) -> Result<Vec<HarnessDecl>> {
    let known_tower = |s: &str| {
        if towers.iter().any(|t| t.label == s) || extensions.iter().any(|e| e.label == s) {
            Ok(s.to_string())
        } else {
            Err(semantic(s, "undeclared tower"))
        }
    };
    let mut out = Vec::new();
    for (key, line, column, value) in fields {
        if !value.list {
            return Err(syntax(*line, *column, format!("'{key}' takes a list")));
        }
        let names: Vec<&str> = value.items.iter().map(|i| i.0.as_str()).collect();
        if key == "substitution" {
            let Some(first) = value.items.first() else {
                return Err(syntax(value.line, value.column, "substitution needs an extension and images"));
            };
            let ext = extensions.iter().find(|e| e.label == first.0).ok_or_else(|| semantic(&first.0, "undeclared extension"))?;
            if value.items.len() != ext.n + 1 {
                return Err(semantic(
                    &first.0,
                    format!("variable count mismatch: {} images for n = {}", value.items.len() - 1, ext.n),
                ));
            }
            let images = value.items[1..].iter().map(|i| mpoly_at(i, ext.n)).collect::<Result<_>>()?;
            out.push(HarnessDecl::Substitution { ext: ext.label.clone(), images });
            continue;
        }
        if names.len() != 2 {
            return Err(syntax(value.line, value.column, format!("'{key}' takes exactly two labels")));
        }
        let (a, b) = (known_tower(names[0])?, known_tower(names[1])?);
        out.push(match key.as_str() {
            "composite" => HarnessDecl::Composite { left: a, right: b },
            "base_change" => HarnessDecl::BaseChange { base: a, ext: b },
            "transitivity" => HarnessDecl::Transitivity { step: a, other: b },
            "subfield" => HarnessDecl::Subfield { sub: a, other: b },
            _ => return Err(syntax(*line, *column, format!("unknown key '{key}' in harness"))),
        });
    }
    Ok(out)
}

/// Parse a field-spec file, checking names and variable counts.
pub fn parse_field_spec(text: &str) -> Result<FieldSpecFile> {
    let toks = lex(text)?;
    let end = match toks.last() {
        Some(t) => (t.line, t.column + 1),
        None => (1, 1),
    };
    let mut p = Parser { toks, pos: 0, end };
    let mut spec = FieldSpecFile::default();
    while p.peek().is_some() {
        let (kind, line, column) = p.word("'extension', 'tower' or 'harness'")?;
        let fields = p.block()?;
        match kind.as_str() {
            "extension" => {
                let e = extension_section(&fields, (line, column))?;
                check_fresh(&spec, &e.label)?;
                spec.extensions.push(e);
            }
            "tower" => {
                let t = tower_section(&fields, (line, column), &spec.extensions)?;
                check_fresh(&spec, &t.label)?;
                spec.towers.push(t);
            }
            "harness" => {
                let h = harness_section(&fields, &spec.extensions, &spec.towers)?;
                spec.harness.extend(h);
            }
            other => return Err(syntax(line, column, format!("unknown section '{other}'"))),
        }
    }
    Ok(spec)
}

fn check_fresh(spec: &FieldSpecFile, label: &str) -> Result<()> {
    if spec.extension_decl(label).is_some() || spec.tower_decl(label).is_some() {
        return Err(semantic(label, "label declared twice"));
    }
    Ok(())
}

/// Canonical text of a spec; `parse_field_spec` reads it back unchanged.
pub fn print_field_spec(spec: &FieldSpecFile) -> String {
    let mut s = String::new();
    write!(s, "{spec}").unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const HCF: &str = r#"
        # K = Q(sqrt -5) and its Hilbert class field
        extension { n = 0; f = "X^2 + 5"; label = "K5" }
        extension { n = 0; f = "X^4 + 3*X^2 + 1"; label = "K5(i)" }
        tower {
            label = "hcf"; lower = "K5";
            upper = "K5(i)"; e = "-X^3 - 4*X"; den = "1";
        }
        extension { n = 1; f = "X^2 - t"; label = "Qt-sqrt-t"; maximal = attested }
        harness { composite = ["hcf", "hcf"]; substitution = ["Qt-sqrt-t", "t1 + 1"] }
    "#;

    #[test]
    fn single_extension() {
        let s = parse_field_spec(r#"extension { n=0; f="X^2+1"; label="Qi" }"#).unwrap();
        assert_eq!(s.extensions.len(), 1);
        assert_eq!(format_upoly(&s.extensions[0].f), "X^2 + 1");
        assert!(!s.extensions[0].maximal_attested);
        let qi = s.extension("Qi").unwrap();
        assert_eq!(qi.degree(), 2);
    }

    #[test]
    fn towers_and_harness() {
        let s = parse_field_spec(HCF).unwrap();
        assert_eq!(s.towers[0].presentations.len(), 1);
        assert!(s.extension_decl("Qt-sqrt-t").unwrap().maximal_attested);
        let t = s.tower("hcf").unwrap();
        assert_eq!(t.relative_degree(), 2);
        let inst = s.harness_instances().unwrap();
        assert_eq!(inst.iter().map(|i| i.kind()).collect::<Vec<_>>(), vec!["composite", "substitution"]);
        let over_q = s.tower("K5").unwrap();
        assert_eq!(over_q.lower().label(), "Q");
    }

    #[test]
    fn undeclared_names_are_reported() {
        let text = r#"extension { n = 0; f = "X^2 + 5"; label = "K5" }
tower { label = "T"; lower = "K9"; upper = "K5"; e = "X" }"#;
        match parse_field_spec(text) {
            Err(Error::Semantic { token, .. }) => assert_eq!(token, "K9"),
            other => panic!("{other:?}"),
        }
        match parse_field_spec(r#"harness { composite = ["A", "B"] }"#) {
            Err(Error::Semantic { token, .. }) => assert_eq!(token, "A"),
            other => panic!("{other:?}"),
        }
        let dup = r#"extension { n = 0; f = "X^2 + 5"; label = "K5" } extension { n = 0; f = "X^2 + 1"; label = "K5" }"#;
        assert!(matches!(parse_field_spec(dup), Err(Error::Semantic { token, .. }) if token == "K5"));
    }

    #[test]
    fn variable_count_mismatch_names_the_variable() {
        let text = r#"extension { n = 1; f = "X^2 - t2"; label = "bad" }"#;
        assert!(matches!(parse_field_spec(text), Err(Error::Semantic { token, .. }) if token == "t2"));
        let mixed = r#"extension { n = 0; f = "X^2 + 5"; label = "K5" }
extension { n = 1; f = "X^2 - t1"; label = "L" }
tower { label = "T"; lower = "K5"; upper = "L"; e = "X" }"#;
        assert!(matches!(parse_field_spec(mixed), Err(Error::Semantic { token, .. }) if token == "L"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_field_spec("extension { n = 0;\n  f = \"X^2 +\"; label = \"a\" }").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        let e = parse_field_spec("extension { n = 0 f }").unwrap_err();
        assert_eq!(e, Error::Parse { line: 1, column: 19, message: "expected '}'".into() });
        let e = parse_field_spec("\n\n  field { }").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 3, .. }));
        assert!(matches!(parse_field_spec("extension { label = \"x"), Err(Error::Parse { line: 1, column: 21, .. })));
        assert!(matches!(parse_field_spec("extension { n = 0; f = \"X\"; label = \"a\"; colour = 1 }"), Err(Error::Parse { .. })));
    }

    #[test]
    fn printing_is_canonical() {
        let s = parse_field_spec(HCF).unwrap();
        let printed = print_field_spec(&s);
        assert!(printed.contains(r#"extension { n = 1; f = "X^2 - t1"; label = "Qt-sqrt-t"; maximal = attested }"#));
        assert!(printed.contains(r#"tower { label = "hcf"; lower = "K5"; upper = "K5(i)"; e = "-X^3 - 4*X"; den = "1" }"#));
        assert_eq!(parse_field_spec(&printed).unwrap(), s);
        assert_eq!(print_field_spec(&parse_field_spec(&printed).unwrap()), printed);
    }

    #[test]
    fn quoted_labels_escape() {
        let s = parse_field_spec(r#"extension { n = 0; f = "X"; label = "a\"b\\c" }"#).unwrap();
        assert_eq!(s.extensions[0].label, "a\"b\\c");
        assert_eq!(parse_field_spec(&print_field_spec(&s)).unwrap(), s);
    }
}
