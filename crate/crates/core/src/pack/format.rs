//! Text format of formula packs: parsing and canonical serialisation.
//!
//! ```text
//! # comment
//! pack genus=2
//! identity 0 0 0 1
//! source <free text>
//! [table delta vars=4 count=4 degree=4]
//! {
//! 1 4 0 0 0
//! coeff{
//! 2 1 0 0 0 0 0 0
//! -1 0 1 0 0 0 0 0
//! } 3 1 0 0
//! }
//! ```
//!
//! A monomial line is a rational coefficient followed by one exponent per
//! table variable. A `coeff{ ... }` block replaces the coefficient by a
//! polynomial in the curve coefficients f₀..f_{2g+2}, one monomial per line.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::arith::Rat;
use crate::error::{Error, Result};

/// Coefficient of a pack monomial: a polynomial in f₀..f_{2g+2}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Const(Rat),
    Poly(Vec<(Rat, Vec<u8>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackTerm {
    pub coeff: Coeff,
    pub exps: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PackPoly {
    pub terms: Vec<PackTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TableKind {
    Equations,
    Delta,
    Bqf,
    Xi,
    Minors,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Equations => "equations",
            TableKind::Delta => "delta",
            TableKind::Bqf => "bqf",
            TableKind::Xi => "xi",
            TableKind::Minors => "minors",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "equations" => TableKind::Equations,
            "delta" => TableKind::Delta,
            "bqf" => TableKind::Bqf,
            "xi" => TableKind::Xi,
            "minors" => TableKind::Minors,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackTable {
    pub kind: TableKind,
    pub vars: usize,
    pub degree: Option<usize>,
    pub polys: Vec<PackPoly>,
}

/// A parsed formula pack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaPack {
    pub genus: usize,
    pub identity: Vec<Rat>,
    pub source: Option<String>,
    pub tables: Vec<PackTable>,
}

impl PackPoly {
    pub fn total_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.iter().map(|t| t.exps.iter().map(|&e| e as usize).sum())
    }
}

impl FormulaPack {
    /// Number of Kummer coordinates, 2^g.
    pub fn n(&self) -> usize {
        1 << self.genus
    }

    /// Number of curve coefficients, 2g + 3.
    pub fn n_coeffs(&self) -> usize {
        2 * self.genus + 3
    }

    pub fn table(&self, kind: TableKind) -> Option<&PackTable> {
        self.tables.iter().find(|t| t.kind == kind)
    }

    pub fn table_mut(&mut self, kind: TableKind) -> Option<&mut PackTable> {
        self.tables.iter_mut().find(|t| t.kind == kind)
    }

    /// Expected (vars, count) for each table of this genus.
    pub fn expected_shape(&self, kind: TableKind) -> (usize, Option<usize>) {
        let n = self.n();
        match kind {
            TableKind::Equations => (n, None),
            TableKind::Delta => (n, Some(n)),
            TableKind::Bqf => (2 * n, Some(n * (n + 1) / 2)),
            TableKind::Xi => (2 * self.genus, Some(n)),
            TableKind::Minors => (7, Some(16)),
        }
    }
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::PackParse { line, col, msg: msg.into() }
}

/// Tokens of a line with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b + 1, &s[b..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

fn parse_rat(tok: &str, line: usize, col: usize) -> Result<Rat> {
    let bad = || err(line, col, format!("expected a rational number, found `{tok}`"));
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: crate::arith::Int = n.parse().map_err(|_| bad())?;
    let d: crate::arith::Int = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(err(line, col, "zero denominator"));
    }
    Ok(Rat::new(n, d))
}

fn parse_exps(toks: &[(usize, &str)], want: usize, line: usize, end_col: usize) -> Result<Vec<u8>> {
    if toks.len() != want {
        let col = toks.get(want).map_or(end_col, |t| t.0);
        return Err(err(line, col, format!("expected {want} exponents, found {}", toks.len())));
    }
    toks.iter()
        .map(|&(c, t)| t.parse::<u8>().map_err(|_| err(line, c, format!("bad exponent `{t}`"))))
        .collect()
}

fn parse_attr<'a>(tok: (usize, &'a str), key: &str, line: usize) -> Result<&'a str> {
    match tok.1.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(err(line, tok.0, format!("expected `{key}=...`"))),
    }
}

fn parse_usize(v: &str, line: usize, col: usize) -> Result<usize> {
    v.parse().map_err(|_| err(line, col, format!("expected a non-negative integer, found `{v}`")))
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        Cursor { lines, pos: 0 }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let l = self.peek();
        self.pos += 1;
        l
    }

    fn last_line(&self) -> usize {
        self.lines.last().map_or(1, |l| l.0)
    }
}

/// Parse a formula pack, reporting the line and column of the first error.
pub fn parse_pack(text: &str) -> Result<FormulaPack> {
    let mut cur = Cursor::new(text);
    let (ln, header) = cur.next().ok_or_else(|| err(1, 1, "empty pack"))?;
    let ht = tokens(header);
    if ht.len() != 2 || ht[0].1 != "pack" {
        return Err(err(ln, 1, "expected `pack genus=<g>`"));
    }
    let genus = parse_usize(parse_attr(ht[1], "genus", ln)?, ln, ht[1].0)?;
    if !(1..=3).contains(&genus) {
        return Err(err(ln, ht[1].0, format!("unsupported genus {genus}")));
    }
    let n = 1usize << genus;
    let mut pack = FormulaPack { genus, identity: vec![], source: None, tables: vec![] };
    while let Some((ln, l)) = cur.peek() {
        let t = tokens(l);
        match t[0].1 {
            "identity" => {
                cur.next();
                if t.len() != n + 1 {
                    return Err(err(ln, t[0].0, format!("identity needs {n} coordinates")));
                }
                pack.identity = t[1..].iter().map(|&(c, s)| parse_rat(s, ln, c)).collect::<Result<_>>()?;
            }
            "source" => {
                cur.next();
                let rest = l.trim_start()["source".len()..].trim();
                pack.source = Some(rest.to_string());
            }
            _ => break,
        }
    }
    if pack.identity.is_empty() {
        pack.identity = super::model::default_identity(n);
    }
    while let Some((ln, l)) = cur.next() {
        let table = parse_table(&mut cur, &pack, ln, l)?;
        if pack.table(table.kind).is_some() {
            return Err(err(ln, 1, format!("duplicate table `{}`", table.kind.name())));
        }
        pack.tables.push(table);
    }
    if pack.table(TableKind::Delta).is_none() {
        return Err(err(cur.last_line(), 1, "pack has no `delta` table"));
    }
    Ok(pack)
}

fn parse_table(cur: &mut Cursor<'_>, pack: &FormulaPack, ln: usize, l: &str) -> Result<PackTable> {
    let trimmed = l.trim();
    if !trimmed.starts_with("[table") || !trimmed.ends_with(']') {
        return Err(err(ln, 1, "expected `[table <name> vars=<k> count=<n>]`"));
    }
    let inner = &trimmed[1..trimmed.len() - 1];
    let offset = l.find('[').unwrap() + 1;
    let t: Vec<(usize, &str)> = tokens(inner).into_iter().map(|(c, s)| (c + offset, s)).collect();
    if t.len() < 4 || t.len() > 5 {
        return Err(err(ln, 1, "table header needs a name, vars, count and optional degree"));
    }
    let kind = TableKind::parse(t[1].1).ok_or_else(|| err(ln, t[1].0, format!("unknown table `{}`", t[1].1)))?;
    let vars = parse_usize(parse_attr(t[2], "vars", ln)?, ln, t[2].0)?;
    let count = parse_usize(parse_attr(t[3], "count", ln)?, ln, t[3].0)?;
    let degree = match t.get(4) {
        Some(&tok) => Some(parse_usize(parse_attr(tok, "degree", ln)?, ln, tok.0)?),
        None => None,
    };
    let (want_vars, want_count) = pack.expected_shape(kind);
    if vars != want_vars {
        return Err(err(ln, t[2].0, format!("table `{}` needs vars={want_vars} for genus {}", kind.name(), pack.genus)));
    }
    if want_count.is_some_and(|c| c != count) {
        return Err(err(ln, t[3].0, format!("table `{}` needs count={}", kind.name(), want_count.unwrap())));
    }
    if kind == TableKind::Minors && pack.genus != 3 {
        return Err(err(ln, t[1].0, "`minors` is only defined for genus 3"));
    }
    let mut polys = Vec::with_capacity(count);
    for _ in 0..count {
        polys.push(parse_poly(cur, pack, vars)?);
    }
    let table = PackTable { kind, vars, degree, polys };
    check_degrees(&table, ln)?;
    Ok(table)
}

fn parse_poly(cur: &mut Cursor<'_>, pack: &FormulaPack, vars: usize) -> Result<PackPoly> {
    let last = cur.last_line();
    let eof = || err(last, 1, "unexpected end of pack inside a table");
    let (ln, l) = cur.next().ok_or_else(eof)?;
    if l.trim() != "{" {
        return Err(err(ln, 1, "expected `{` opening a polynomial"));
    }
    let mut poly = PackPoly::default();
    loop {
        let (ln, l) = cur.next().ok_or_else(eof)?;
        let t = tokens(l);
        let end_col = l.trim_end().len() + 1;
        match t[0].1 {
            "}" if t.len() == 1 => return Ok(poly),
            "coeff{" => {
                if t.len() != 1 {
                    return Err(err(ln, t[1].0, "`coeff{` must stand alone on its line"));
                }
                let mut cpoly = Vec::new();
                loop {
                    let (cl, cs) = cur.next().ok_or_else(eof)?;
                    let ct = tokens(cs);
                    if ct[0].1 == "}" {
                        let exps = parse_exps(&ct[1..], vars, cl, cs.trim_end().len() + 1)?;
                        poly.terms.push(PackTerm { coeff: Coeff::Poly(cpoly), exps });
                        break;
                    }
                    let c = parse_rat(ct[0].1, cl, ct[0].0)?;
                    let e = parse_exps(&ct[1..], pack.n_coeffs(), cl, cs.trim_end().len() + 1)?;
                    cpoly.push((c, e));
                }
            }
            _ => {
                let c = parse_rat(t[0].1, ln, t[0].0)?;
                let exps = parse_exps(&t[1..], vars, ln, end_col)?;
                poly.terms.push(PackTerm { coeff: Coeff::Const(c), exps });
            }
        }
    }
}

fn check_degrees(table: &PackTable, ln: usize) -> Result<()> {
    let homogeneous = matches!(table.kind, TableKind::Equations | TableKind::Delta | TableKind::Bqf);
    for (i, p) in table.polys.iter().enumerate() {
        let mut degs = p.total_degrees();
        let Some(d0) = degs.next() else { continue };
        let want = table.degree.unwrap_or(d0);
        if (homogeneous || table.degree.is_some()) && (d0 != want || degs.any(|d| d != want)) {
            return Err(err(ln, 1, format!("polynomial {} of table `{}` is not homogeneous of degree {want}", i + 1, table.kind.name())));
        }
        if table.kind == TableKind::Delta && want != 4 {
            return Err(err(ln, 1, "`delta` polynomials must be quartics"));
        }
        if table.kind == TableKind::Bqf {
            let half = table.vars / 2;
            for t in &p.terms {
                let a: usize = t.exps[..half].iter().map(|&e| e as usize).sum();
                if a != 2 || want != 4 {
                    return Err(err(ln, 1, format!("`bqf` polynomial {} is not biquadratic", i + 1)));
                }
            }
        }
    }
    Ok(())
}

fn write_exps(out: &mut String, e: &[u8]) {
    for x in e {
        let _ = write!(out, " {x}");
    }
}

/// Canonical text of a pack; `parse_pack(&serialize_pack(p)) == p`.
pub fn serialize_pack(pack: &FormulaPack) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pack genus={}", pack.genus);
    out.push_str("identity");
    for c in &pack.identity {
        let _ = write!(out, " {c}");
    }
    out.push('\n');
    if let Some(s) = &pack.source {
        let one_line = s.replace(['\n', '#'], " ");
        let _ = writeln!(out, "source {}", one_line.trim());
    }
    for t in &pack.tables {
        let _ = write!(out, "[table {} vars={} count={}", t.kind.name(), t.vars, t.polys.len());
        if let Some(d) = t.degree {
            let _ = write!(out, " degree={d}");
        }
        out.push_str("]\n");
        for p in &t.polys {
            out.push_str("{\n");
            for term in &p.terms {
                match &term.coeff {
                    Coeff::Const(c) => {
                        let _ = write!(out, "{c}");
                    }
                    Coeff::Poly(cp) => {
                        out.push_str("coeff{\n");
                        for (c, e) in cp {
                            let _ = write!(out, "{c}");
                            write_exps(&mut out, e);
                            out.push('\n');
                        }
                        out.push('}');
                    }
                }
                write_exps(&mut out, &term.exps);
                out.push('\n');
            }
            out.push_str("}\n");
        }
    }
    out
}

/// SHA-256 of the canonical serialisation, as lowercase hex.
pub fn pack_checksum(pack: &FormulaPack) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(serialize_pack(pack).as_bytes()))
}
