//! Text serialization of linear codes.
//!
//! ```text
//! lcdmds 1
//! field 2 2
//! modulus 1 1 1
//! code 4 2
//! 1 0 1 1
//! 0 1 1 2
//! # provenance: ...
//! ```
//!
//! `#` starts a comment anywhere on a line. The `modulus` line is present
//! only when m > 1 and lists coefficients from the constant term up to the
//! leading 1. Negative entries are accepted for prime fields and reduced
//! mod p; output never contains them.

use std::fmt::Write as _;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Felt, FieldSpec};
use crate::matrix::Mat;

const MAGIC: &str = "lcdmds 1";
const PROVENANCE: &str = "provenance:";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub code: LinearCode,
    pub provenance: Option<String>,
}

impl CodeFile {
    pub fn new(code: LinearCode, provenance: Option<String>) -> Self {
        CodeFile { code, provenance }
    }

    pub fn field(&self) -> &FieldSpec {
        self.code.field()
    }

    pub fn render(&self) -> String {
        let f = self.field();
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "field {} {}", f.p(), f.m());
        if f.m() > 1 {
            let coeffs: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
            let _ = writeln!(out, "modulus {}", coeffs.join(" "));
        }
        let _ = writeln!(out, "code {} {}", self.code.n(), self.code.k());
        for row in self.code.generator().to_codes() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        if let Some(p) = &self.provenance {
            for line in p.lines() {
                let _ = writeln!(out, "# {PROVENANCE} {line}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<CodeFile> {
        let mut provenance: Vec<String> = Vec::new();
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let (body, comment) = match raw.find('#') {
                Some(pos) => (&raw[..pos], Some(raw[pos + 1..].trim())),
                None => (raw, None),
            };
            if let Some(rest) = comment.and_then(|c| c.strip_prefix(PROVENANCE)) {
                provenance.push(rest.trim().to_string());
            }
            let body = body.trim();
            if !body.is_empty() {
                lines.push((idx + 1, body));
            }
        }
        let mut it = lines.into_iter();
        let mut next = |what: &str| {
            it.next().ok_or_else(|| Error::Parse { line: 0, msg: format!("missing {what} line") })
        };

        let (ln, magic) = next("header")?;
        if magic.split_whitespace().collect::<Vec<_>>() != ["lcdmds", "1"] {
            return Err(Error::Parse { line: ln, msg: format!("expected `{MAGIC}`") });
        }

        let (ln, field_line) = next("field")?;
        let [p, m] = keyword_ints::<2>(ln, field_line, "field")?;
        let (p, m) = (to_u32(ln, p)?, to_u32(ln, m)?);
        let field = if m > 1 {
            let (ln, mod_line) = next("modulus")?;
            let coeffs = keyword_list(ln, mod_line, "modulus")?;
            let coeffs: Vec<u32> = coeffs.into_iter().map(|c| to_u32(ln, c)).collect::<Result<_>>()?;
            if coeffs.len() != m as usize + 1 {
                return Err(Error::Parse { line: ln, msg: format!("modulus needs {} coefficients", m + 1) });
            }
            FieldSpec::with_modulus(p, m, &coeffs).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?
        } else {
            FieldSpec::new(p, m).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?
        };

        let (ln, code_line) = next("code")?;
        let [n, k] = keyword_ints::<2>(ln, code_line, "code")?;
        let (n, k) = (to_u32(ln, n)? as usize, to_u32(ln, k)? as usize);
        if n == 0 || k > n {
            return Err(Error::Parse { line: ln, msg: format!("invalid dimensions n={n} k={k}") });
        }

        let mut data = Vec::with_capacity(n * k);
        for r in 0..k {
            let (ln, row) = next(&format!("generator row {}", r + 1))?;
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() != n {
                return Err(Error::Parse { line: ln, msg: format!("expected {n} entries, found {}", cells.len()) });
            }
            for c in cells {
                data.push(element(&field, ln, c)?);
            }
        }
        if let Some((ln, _)) = it.next() {
            return Err(Error::Parse { line: ln, msg: "unexpected content after generator rows".into() });
        }
        let gen = Mat::from_vec(&field, k, n, data)?;
        let code = if k == 0 {
            LinearCode::zero(&field, n)
        } else {
            LinearCode::new(gen).map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?
        };
        let provenance = if provenance.is_empty() { None } else { Some(provenance.join("\n")) };
        Ok(CodeFile { code, provenance })
    }
}

fn keyword_list<'a>(ln: usize, line: &'a str, kw: &str) -> Result<Vec<&'a str>> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(kw) {
        return Err(Error::Parse { line: ln, msg: format!("expected `{kw}` line") });
    }
    Ok(parts.collect())
}

fn keyword_ints<'a, const N: usize>(ln: usize, line: &'a str, kw: &str) -> Result<[&'a str; N]> {
    let parts = keyword_list(ln, line, kw)?;
    parts
        .try_into()
        .map_err(|_| Error::Parse { line: ln, msg: format!("`{kw}` takes {N} integers") })
}

fn to_u32(ln: usize, s: &str) -> Result<u32> {
    s.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad integer `{s}`") })
}

fn element(field: &FieldSpec, ln: usize, s: &str) -> Result<Felt> {
    let v: i64 = s.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad integer `{s}`") })?;
    if v < 0 {
        if field.m() != 1 {
            return Err(Error::Parse { line: ln, msg: format!("negative entry {v} outside a prime field") });
        }
        return Ok(field.from_int(v));
    }
    field
        .elem(u32::try_from(v).unwrap_or(u32::MAX))
        .ok_or_else(|| Error::Parse { line: ln, msg: format!("entry {v} is not an element of {field}") })
}
