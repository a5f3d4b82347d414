//! The `dgforge/1` text format for algebras and modules.
//!
//! ```text
//! dgforge/1 algebra
//! field: Q
//! basis: 1:0, x:1
//! unit: 1
//! mul:
//!   x * x = 0
//! diff:
//!   x = 0
//! ```
//!
//! Modules use the header `dgforge/1 module`, an `algebra:` reference (a
//! path relative to the module file, or `builtin:<name>`), an optional
//! `side: right|left`, a `basis:`, `act:` entries `m . a = …` giving the
//! action of `a` on `m`, and `diff:`. Unspecified entries are zero and the
//! unit always acts as the identity.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dgforge_core::linalg::{sparse, SparseVec};
use dgforge_core::{DgModule, FdDga, FieldSpec, Scalar, Side};

pub const VERSION: &str = "dgforge/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, message: message.into() })
}

/// A piece of source text with its 1-based position.
#[derive(Clone, Copy, Debug)]
struct Span<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Span<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.col, message)
    }

    fn sub(&self, start: usize, end: usize) -> Span<'a> {
        let head = &self.text[..start];
        Span { text: &self.text[start..end], line: self.line, col: self.col + head.chars().count() }
    }

    fn trim(&self) -> Span<'a> {
        let start = self.text.len() - self.text.trim_start().len();
        let end = self.text.trim_end().len().max(start);
        self.sub(start, end)
    }

    fn split_once(&self, pat: char) -> Option<(Span<'a>, Span<'a>)> {
        let i = self.text.find(pat)?;
        Some((self.sub(0, i), self.sub(i + pat.len_utf8(), self.text.len())))
    }
}

#[derive(Debug)]
struct Section<'a> {
    key: Span<'a>,
    value: Span<'a>,
    entries: Vec<Span<'a>>,
}

struct Document<'a> {
    kind: Span<'a>,
    sections: Vec<Section<'a>>,
    end_line: usize,
}

impl<'a> Document<'a> {
    fn parse(text: &'a str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate().map(|(i, l)| {
            let l = l.split('#').next().unwrap_or("");
            (i + 1, l)
        });
        let mut header = None;
        for (n, l) in lines.by_ref() {
            if !l.trim().is_empty() {
                header = Some(Span { text: l, line: n, col: 1 }.trim());
                break;
            }
        }
        let Some(header) = header else { return err(1, 1, "empty document") };
        let Some(kind) = header.text.strip_prefix(VERSION) else {
            return header.error(format!("expected header `{VERSION} algebra` or `{VERSION} module`"));
        };
        let kind = header.sub(header.text.len() - kind.len(), header.text.len()).trim();
        let mut sections: Vec<Section<'a>> = Vec::new();
        let mut end_line = header.line;
        for (n, l) in lines {
            end_line = n;
            if l.trim().is_empty() {
                continue;
            }
            let span = Span { text: l, line: n, col: 1 };
            if l.starts_with(char::is_whitespace) {
                match sections.last_mut() {
                    Some(s) => s.entries.push(span.trim()),
                    None => return span.trim().error("indented entry outside a section"),
                }
                continue;
            }
            let Some((key, value)) = span.split_once(':') else {
                return span.trim().error("expected `key: value` or an indented entry");
            };
            let key = key.trim();
            if sections.iter().any(|s| s.key.text == key.text) {
                return key.error(format!("duplicate section `{}`", key.text));
            }
            sections.push(Section { key, value: value.trim(), entries: Vec::new() });
        }
        Ok(Document { kind, sections, end_line })
    }

    fn get(&self, key: &str) -> Option<&Section<'a>> {
        self.sections.iter().find(|s| s.key.text == key)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), ParseError> {
        for s in &self.sections {
            if !allowed.contains(&s.key.text) {
                return s.key.error(format!("unknown section `{}` (expected one of {})", s.key.text, allowed.join(", ")));
            }
        }
        Ok(())
    }

    fn required(&self, key: &str) -> Result<&Section<'a>, ParseError> {
        self.get(key).ok_or_else(|| ParseError { line: self.end_line, col: 1, message: format!("{key} required") })
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || ":,=*+-./#".contains(c))
}

fn parse_basis<'a>(section: &Section<'a>) -> Result<Vec<(String, i32)>, ParseError> {
    let mut items = Vec::new();
    let mut push_items = |span: Span<'a>| -> Result<(), ParseError> {
        let mut rest = span;
        while !rest.text.trim().is_empty() {
            let end = rest.text.find(',').unwrap_or(rest.text.len());
            let item = rest.sub(0, end).trim();
            rest = rest.sub((end + 1).min(rest.text.len()), rest.text.len());
            for tok in item.text.split_whitespace() {
                let off = item.text.find(tok).unwrap_or(0);
                items.push(item.sub(off, off + tok.len()));
            }
        }
        Ok(())
    };
    push_items(section.value)?;
    for e in &section.entries {
        push_items(*e)?;
    }
    let mut out: Vec<(String, i32)> = Vec::new();
    for it in items {
        let Some((name, deg)) = it.split_once(':') else {
            return it.error(format!("basis element `{}` needs a degree, as in `{}:0`", it.text, it.text));
        };
        if !valid_name(name.text) {
            return name.error(format!("invalid basis name `{}`", name.text));
        }
        let Ok(d) = deg.text.trim().parse::<i32>() else {
            return deg.error(format!("invalid degree `{}`", deg.text));
        };
        if out.iter().any(|(n, _)| n == name.text) {
            return name.error(format!("duplicate basis name `{}`", name.text));
        }
        out.push((name.text.to_string(), d));
    }
    if out.is_empty() {
        return section.key.error("empty basis");
    }
    Ok(out)
}

fn lookup(names: &BTreeMap<String, usize>, span: Span<'_>, what: &str) -> Result<usize, ParseError> {
    names.get(span.text).copied().ok_or_else(|| ParseError {
        line: span.line,
        col: span.col,
        message: format!("unknown {what}basis element `{}`", span.text),
    })
}

/// `c1 x + c2 y − …`; `0` is the empty combination.
fn parse_combination<S: Scalar>(span: Span<'_>, names: &BTreeMap<String, usize>) -> Result<SparseVec<S>, ParseError> {
    let span = span.trim();
    if span.text.is_empty() {
        return span.error("missing right-hand side");
    }
    if span.text == "0" && !names.contains_key("0") {
        return Ok(Vec::new());
    }
    // split at top-level + and − (a − directly after / stays with the literal)
    let mut terms = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let bytes: Vec<(usize, char)> = span.text.char_indices().collect();
    for (k, (i, c)) in bytes.iter().enumerate() {
        if (*c == '+' || *c == '-') && k > 0 {
            let prev = span.text[..*i].trim_end();
            if prev.is_empty() || prev.ends_with('*') {
                continue;
            }
            terms.push((negative, span.sub(start, *i)));
            negative = *c == '-';
            start = i + 1;
        } else if k == 0 && (*c == '+' || *c == '-') {
            negative = *c == '-';
            start = i + 1;
        }
    }
    terms.push((negative, span.sub(start, span.text.len())));
    let mut out = Vec::new();
    for (neg, t) in terms {
        let t = t.trim();
        if t.text.is_empty() {
            return t.error("empty term");
        }
        let (coeff, name) = if names.contains_key(t.text) {
            (S::one(), t)
        } else {
            let split = t.text.find(|c: char| c.is_whitespace() || c == '*').unwrap_or(t.text.len());
            let lit = t.sub(0, split);
            let mut rest = t.sub(split, t.text.len()).trim();
            if let Some(r) = rest.text.strip_prefix('*') {
                rest = rest.sub(rest.text.len() - r.len(), rest.text.len()).trim();
            }
            let Some(c) = S::parse_literal(lit.text) else {
                return lit.error(format!("`{}` is neither a basis element nor a coefficient", lit.text));
            };
            if rest.text.is_empty() {
                return lit.error("a coefficient needs a basis element");
            }
            (c, rest)
        };
        let idx = lookup(names, name, "")?;
        out.push((idx, if neg { -coeff } else { coeff }));
    }
    Ok(sparse::from_entries(out))
}

fn index_map(basis: &[(String, i32)]) -> BTreeMap<String, usize> {
    basis.iter().enumerate().map(|(i, (n, _))| (n.clone(), i)).collect()
}

/// The `field:` line of a document, `Q` when absent.
pub fn sniff_field(text: &str) -> Result<FieldSpec, ParseError> {
    let doc = Document::parse(text)?;
    match doc.get("field") {
        None => Ok(FieldSpec::Rational),
        Some(s) => s.value.text.parse().map_err(|e: dgforge_core::Error| ParseError {
            line: s.value.line,
            col: s.value.col,
            message: e.to_string(),
        }),
    }
}

fn check_field<S: Scalar>(doc: &Document<'_>) -> Result<(), ParseError> {
    if let Some(s) = doc.get("field") {
        let f: FieldSpec = s.value.text.parse().map_err(|e: dgforge_core::Error| ParseError {
            line: s.value.line,
            col: s.value.col,
            message: e.to_string(),
        })?;
        if f != S::field() {
            return s.value.error(format!("field {f} does not match the requested field {}", S::field()));
        }
    }
    Ok(())
}

/// Parses an algebra document; validation is left to the caller.
pub fn parse_algebra<S: Scalar>(text: &str) -> Result<FdDga<S>, ParseError> {
    let doc = Document::parse(text)?;
    if doc.kind.text != "algebra" {
        return doc.kind.error(format!("expected an algebra document, found `{}`", doc.kind.text));
    }
    doc.check_keys(&["field", "basis", "unit", "mul", "diff"])?;
    check_field::<S>(&doc)?;
    let basis = parse_basis(doc.required("basis")?)?;
    let names = index_map(&basis);
    let unit_sec = doc.required("unit")?;
    if unit_sec.value.text.is_empty() {
        return unit_sec.key.error("unit required");
    }
    let unit = lookup(&names, unit_sec.value, "unit ")?;
    let mut products = Vec::new();
    let mut seen = BTreeMap::new();
    if let Some(s) = doc.get("mul") {
        if !s.value.text.is_empty() {
            return s.value.error("mul entries go on indented lines");
        }
        for e in &s.entries {
            let Some((lhs, rhs)) = e.split_once('=') else { return e.error("expected `x * y = …`") };
            let Some((l, r)) = lhs.split_once('*') else { return lhs.error("expected `x * y`") };
            let (i, j) = (lookup(&names, l.trim(), "")?, lookup(&names, r.trim(), "")?);
            if i == unit || j == unit {
                return lhs.error("products with the unit are fixed and cannot be given");
            }
            if seen.insert((i, j), ()).is_some() {
                return lhs.error(format!("duplicate product {} * {}", l.trim().text, r.trim().text));
            }
            products.push((i, j, parse_combination::<S>(rhs, &names)?));
        }
    }
    let diffs = parse_diffs::<S>(&doc, &names)?;
    FdDga::from_tables(basis, unit, products, diffs).map_err(|e| ParseError { line: 1, col: 1, message: e.to_string() })
}

fn parse_diffs<S: Scalar>(doc: &Document<'_>, names: &BTreeMap<String, usize>) -> Result<Vec<(usize, SparseVec<S>)>, ParseError> {
    let mut out = Vec::new();
    let mut seen = BTreeMap::new();
    if let Some(s) = doc.get("diff") {
        if !s.value.text.is_empty() {
            return s.value.error("diff entries go on indented lines");
        }
        for e in &s.entries {
            let Some((lhs, rhs)) = e.split_once('=') else { return e.error("expected `x = …`") };
            let i = lookup(names, lhs.trim(), "")?;
            if seen.insert(i, ()).is_some() {
                return lhs.trim().error(format!("duplicate differential for `{}`", lhs.trim().text));
            }
            out.push((i, parse_combination::<S>(rhs, names)?));
        }
    }
    Ok(out)
}

/// Where a module document says its algebra lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraRef {
    Builtin(String),
    Path(String),
}

pub fn module_algebra_ref(text: &str) -> Result<Option<AlgebraRef>, ParseError> {
    let doc = Document::parse(text)?;
    Ok(doc.get("algebra").map(|s| match s.value.text.strip_prefix("builtin:") {
        Some(name) => AlgebraRef::Builtin(name.trim().to_string()),
        None => AlgebraRef::Path(s.value.text.to_string()),
    }))
}

/// Parses a module document over `algebra`; validation is left to the caller.
pub fn parse_module<S: Scalar>(text: &str, algebra: &Arc<FdDga<S>>) -> Result<DgModule<S>, ParseError> {
    let doc = Document::parse(text)?;
    if doc.kind.text != "module" {
        return doc.kind.error(format!("expected a module document, found `{}`", doc.kind.text));
    }
    doc.check_keys(&["field", "algebra", "side", "basis", "act", "diff"])?;
    check_field::<S>(&doc)?;
    let side = match doc.get("side") {
        None => Side::Right,
        Some(s) => match s.value.text {
            "right" => Side::Right,
            "left" => Side::Left,
            other => return s.value.error(format!("side must be `right` or `left`, not `{other}`")),
        },
    };
    let basis = parse_basis(doc.required("basis")?)?;
    let names = index_map(&basis);
    let anames: BTreeMap<String, usize> = algebra.names().iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    let (n, k) = (basis.len(), algebra.dim());
    let mut act = vec![Vec::new(); n * k];
    if let Some(u) = algebra.unit() {
        for m in 0..n {
            act[m * k + u] = vec![(m, S::one())];
        }
    }
    let mut seen = BTreeMap::new();
    if let Some(s) = doc.get("act") {
        if !s.value.text.is_empty() {
            return s.value.error("act entries go on indented lines");
        }
        for e in &s.entries {
            let Some((lhs, rhs)) = e.split_once('=') else { return e.error("expected `m . a = …`") };
            let Some((m, a)) = lhs.split_once('.') else { return lhs.error("expected `m . a`") };
            let m = lookup(&names, m.trim(), "module ")?;
            let a = lookup(&anames, a.trim(), "algebra ")?;
            if Some(a) == algebra.unit() {
                return lhs.error("the unit acts as the identity and cannot be given");
            }
            if seen.insert((m, a), ()).is_some() {
                return lhs.error("duplicate action entry");
            }
            act[m * k + a] = parse_combination::<S>(rhs, &names)?;
        }
    }
    let mut diff = vec![Vec::new(); n];
    for (i, v) in parse_diffs::<S>(&doc, &names)? {
        diff[i] = v;
    }
    let (names, degrees): (Vec<String>, Vec<i32>) = basis.into_iter().unzip();
    DgModule::from_raw(algebra.clone(), side, names, degrees, act, diff)
        .map_err(|e| ParseError { line: 1, col: 1, message: e.to_string() })
}

fn emit_combination<S: Scalar>(v: &[(usize, S)], names: &[String]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        let (neg, mag) = {
            let s = c.to_string();
            match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            }
        };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(&names[*i]);
    }
    out
}

fn emit_basis(names: &[String], degrees: &[i32]) -> String {
    names.iter().zip(degrees).map(|(n, d)| format!("{n}:{d}")).collect::<Vec<_>>().join(", ")
}

fn check_names(names: &[String]) -> Result<(), String> {
    match names.iter().find(|n| !valid_name(n)) {
        Some(n) => Err(format!("basis name `{n}` cannot be written in {VERSION}")),
        None => Ok(()),
    }
}

pub fn emit_algebra<S: Scalar>(a: &FdDga<S>) -> Result<String, String> {
    let unit = a.unit().ok_or("the zero ring has no unit and cannot be written")?;
    check_names(a.names())?;
    let n = a.dim();
    let mut out = format!("{VERSION} algebra\nfield: {}\nbasis: {}\nunit: {}\n", S::field(), emit_basis(a.names(), a.degrees()), a.name(unit));
    let products: Vec<String> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| *i != unit && *j != unit && !a.mul_basis(*i, *j).is_empty())
        .map(|(i, j)| format!("  {} * {} = {}\n", a.name(i), a.name(j), emit_combination(a.mul_basis(i, j), a.names())))
        .collect();
    if !products.is_empty() {
        out.push_str("mul:\n");
        out.extend(products);
    }
    let diffs: Vec<String> = (0..n)
        .filter(|i| !a.diff_basis(*i).is_empty())
        .map(|i| format!("  {} = {}\n", a.name(i), emit_combination(a.diff_basis(i), a.names())))
        .collect();
    if !diffs.is_empty() {
        out.push_str("diff:\n");
        out.extend(diffs);
    }
    Ok(out)
}

pub fn emit_module<S: Scalar>(m: &DgModule<S>, algebra_ref: &str) -> Result<String, String> {
    check_names(m.names())?;
    let a = m.algebra();
    let side = match m.side() {
        Side::Right => "right",
        Side::Left => "left",
    };
    let mut out = format!(
        "{VERSION} module\nfield: {}\nalgebra: {algebra_ref}\nside: {side}\nbasis: {}\n",
        S::field(),
        emit_basis(m.names(), m.degrees())
    );
    let acts: Vec<String> = (0..m.dim())
        .flat_map(|i| (0..a.dim()).map(move |b| (i, b)))
        .filter(|(i, b)| Some(*b) != a.unit() && !m.act_basis(*i, *b).is_empty())
        .map(|(i, b)| format!("  {} . {} = {}\n", m.name(i), a.name(b), emit_combination(m.act_basis(i, b), m.names())))
        .collect();
    if !acts.is_empty() {
        out.push_str("act:\n");
        out.extend(acts);
    }
    let diffs: Vec<String> = (0..m.dim())
        .filter(|i| !m.diff_basis(*i).is_empty())
        .map(|i| format!("  {} = {}\n", m.name(i), emit_combination(m.diff_basis(i), m.names())))
        .collect();
    if !diffs.is_empty() {
        out.push_str("diff:\n");
        out.extend(diffs);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgforge_core::{builtin_example, dga::BUILTIN_NAMES, Rational};

    type Q = Rational;

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let a = builtin_example::<Q>(name).unwrap();
            let text = emit_algebra(&a).unwrap();
            let b = parse_algebra::<Q>(&text).unwrap();
            assert_eq!(a, b, "{name}\n{text}");
        }
    }

    #[test]
    fn positions_and_messages() {
        let e = parse_algebra::<Q>("dgforge/1 algebra\nbasis: 1:0, x:0\n").unwrap_err();
        assert!(e.message.contains("unit required"), "{e}");
        let e = parse_algebra::<Q>("dgforge/1 algebra\nbasis: 1:0, x:0\nunit: 1\nmul:\n  x * y = x\n").unwrap_err();
        assert_eq!((e.line, e.col), (5, 7));
        let e = parse_algebra::<Q>("dgforge/1 algebra\nbasis: 1:0, x:0\nunit: 1\nmul:\n  x * x = 2/ x\n").unwrap_err();
        assert_eq!(e.line, 5);
        let e = parse_algebra::<Q>("dgforge/2 algebra\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse_algebra::<Q>("dgforge/1 algebra\nbasis: 1:0, x\nunit: 1\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 13));
    }

    #[test]
    fn combinations() {
        let names = index_map(&[("1".into(), 0), ("x".into(), 0), ("y".into(), 1)]);
        let span = |t| Span { text: t, line: 1, col: 1 };
        let q = |n: i64, d: i64| Q::new(n.into(), d.into());
        assert_eq!(parse_combination::<Q>(span("-x + 2 y - 1/2 * 1"), &names).unwrap(), vec![(0, q(-1, 2)), (1, q(-1, 1)), (2, q(2, 1))]);
        assert_eq!(parse_combination::<Q>(span("-1/3 x"), &names).unwrap(), vec![(1, q(-1, 3))]);
        assert_eq!(parse_combination::<Q>(span("x - x"), &names).unwrap(), vec![]);
        assert!(parse_combination::<Q>(span("z"), &names).is_err());
        assert!(parse_combination::<Q>(span("x +"), &names).is_err());
    }

    #[test]
    fn modules_round_trip() {
        let a = Arc::new(builtin_example::<Q>("dual_numbers").unwrap());
        let m = dgforge_core::random_module(&a, 3, 3).unwrap();
        let n = m.dim();
        let text = emit_module(&m.with_names((0..n).map(|i| format!("m{i}")).collect()), "builtin:dual_numbers").unwrap();
        let back = parse_module::<Q>(&text, &a).unwrap();
        assert_eq!(emit_module(&back, "builtin:dual_numbers").unwrap(), text);
        assert_eq!(module_algebra_ref(&text).unwrap(), Some(AlgebraRef::Builtin("dual_numbers".into())));
    }

    #[test]
    fn malformed_input_never_panics() {
        for t in ["", "dgforge/1", "dgforge/1 algebra\n  x", "dgforge/1 algebra\nbasis: :", "dgforge/1 algebra\nbasis: 1:0\nunit: 1\nmul:\n  *=", "dgforge/1 module\nbasis: m:0\nact:\n  m . = 1"] {
            let _ = parse_algebra::<Q>(t);
            let a = Arc::new(builtin_example::<Q>("point").unwrap());
            let _ = parse_module::<Q>(t, &a);
        }
    }
}
