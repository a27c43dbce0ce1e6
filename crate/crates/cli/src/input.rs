//! Curve files: `id ; genus ; f0,f1,…` lines, plus bracketed coefficient
//! lists `[f0,…,fn]` or `[[f0,…,fn],[h0,…,hk]]` for y² + h·y = f.

use std::collections::HashSet;

use kummer_torsion::arith::Rat;
use kummer_torsion::jacobian::HyperellipticCurveQ;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub id: String,
    pub genus: usize,
    /// f0, …, f_{2g+2} as exact rationals.
    pub f: Vec<String>,
}

impl CurveRecord {
    pub fn new(id: impl Into<String>, genus: Option<usize>, f: &[Rat]) -> CliResult<Self> {
        let f = trim(f.to_vec());
        let genus = match genus {
            Some(g) => g,
            None => infer_genus(f.len())?,
        };
        let rec = CurveRecord { id: id.into(), genus, f: f.iter().map(|c| c.to_string()).collect() };
        rec.curve()?;
        Ok(rec)
    }

    pub fn coefficients(&self) -> CliResult<Vec<Rat>> {
        self.f.iter().map(|s| parse_rat(s)).collect()
    }

    pub fn curve(&self) -> CliResult<HyperellipticCurveQ> {
        Ok(HyperellipticCurveQ::new(self.genus, self.coefficients()?)?)
    }
}

fn trim(mut f: Vec<Rat>) -> Vec<Rat> {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

/// Genus of y² = f from the number of coefficients after trimming.
pub fn infer_genus(n: usize) -> CliResult<usize> {
    if n < 4 {
        return Err(CliError::Input(format!("a polynomial of degree {} does not define a curve of genus ≥ 1", n as isize - 1)));
    }
    Ok((n - 2) / 2)
}

pub fn parse_rat(s: &str) -> CliResult<Rat> {
    let t = s.trim();
    t.parse::<Rat>().map_err(|_| CliError::Input(format!("not a rational number: `{t}`")))
}

/// Comma-separated rationals, lowest degree first.
pub fn parse_coeffs(s: &str) -> CliResult<Vec<Rat>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Err(CliError::Input("empty coefficient list".into()));
    }
    s.split(',').map(parse_rat).collect()
}

fn bracket_groups(s: &str) -> CliResult<Vec<Vec<Rat>>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.clear();
            }
            ']' => {
                if depth == 0 {
                    return Err(CliError::Input("unbalanced `]`".into()));
                }
                depth -= 1;
                if !cur.trim().is_empty() {
                    out.push(cur.split(',').map(parse_rat).collect::<CliResult<Vec<_>>>()?);
                } else if depth > 0 {
                    out.push(Vec::new());
                }
                cur.clear();
            }
            _ if depth > 0 => cur.push(ch),
            _ => {}
        }
    }
    if depth != 0 {
        return Err(CliError::Input("unbalanced `[`".into()));
    }
    Ok(out)
}

/// y² + h·y = f becomes y² = 4f + h².
fn complete_square(f: &[Rat], h: &[Rat]) -> Vec<Rat> {
    let n = f.len().max(2 * h.len().saturating_sub(1) + 1);
    let mut out = vec![Rat::zero(); n];
    for (i, c) in f.iter().enumerate() {
        out[i] += c * Rat::from_integer(4.into());
    }
    for (i, a) in h.iter().enumerate() {
        for (j, b) in h.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn parse_bracket_line(line: &str, lineno: usize) -> CliResult<CurveRecord> {
    let open = line.find('[').unwrap();
    let prefix = line[..open].trim().trim_end_matches([':', ';']).trim();
    let id = if prefix.is_empty() { lineno.to_string() } else { prefix.to_string() };
    let groups = bracket_groups(&line[open..])?;
    let f = match groups.as_slice() {
        [f] => f.clone(),
        [f, h] => complete_square(f, h),
        _ => return Err(CliError::Input(format!("line {lineno}: expected [f] or [f],[h]"))),
    };
    CurveRecord::new(id, None, &f)
}

fn parse_plain_line(line: &str, lineno: usize) -> CliResult<CurveRecord> {
    let parts: Vec<&str> = line.split(';').collect();
    let [id, genus, coeffs] = parts.as_slice() else {
        return Err(CliError::Input(format!("line {lineno}: expected `id ; genus ; f0,f1,…`")));
    };
    let id = id.trim();
    if id.is_empty() {
        return Err(CliError::Input(format!("line {lineno}: empty id")));
    }
    let genus = genus.trim();
    let genus = if genus.is_empty() {
        None
    } else {
        Some(genus.parse().map_err(|_| CliError::Input(format!("line {lineno}: bad genus `{genus}`")))?)
    };
    CurveRecord::new(id, genus, &parse_coeffs(coeffs)?)
}

/// One curve per line; blank lines and `#` comments are skipped.
pub fn parse_line(line: &str, lineno: usize) -> CliResult<Option<CurveRecord>> {
    let line = line.split('#').next().unwrap().trim();
    if line.is_empty() {
        return Ok(None);
    }
    let rec = if line.contains(';') { parse_plain_line(line, lineno) } else if line.contains('[') {
        parse_bracket_line(line, lineno)
    } else {
        Err(CliError::Input(format!("line {lineno}: unrecognised curve line")))
    };
    rec.map(Some).map_err(|e| match e {
        CliError::Input(m) if !m.starts_with("line ") => CliError::Input(format!("line {lineno}: {m}")),
        e => e,
    })
}

pub fn parse_curves(text: &str) -> CliResult<Vec<CurveRecord>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(rec) = parse_line(line, i + 1)? {
            if !seen.insert(rec.id.clone()) {
                return Err(CliError::Input(format!("line {}: duplicate id `{}`", i + 1, rec.id)));
            }
            out.push(rec);
        }
    }
    Ok(out)
}

/// The plain-format line for a record.
pub fn format_line(rec: &CurveRecord) -> String {
    format!("{} ; {} ; {}", rec.id, rec.genus, rec.f.join(","))
}
