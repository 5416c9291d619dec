//! Map-file format, one endomorphism per file:
//!
//! ```text
//! field: Q          (or F<p> for a prime p)
//! vars: X1 X2
//! degree: 3
//! F1 = X1 + X2^2
//! F2 = X2
//! prime: X1 - X2    (optional sample primes, zero or more lines)
//! ```
//!
//! Blank lines are ignored. Every image must respect the declared degree
//! bound; a violation is a hard error, not a clamp.

use keller_core::analysis::PolyMap;
use keller_core::field::FieldSpec;
use keller_core::poly::{Degree, Polynomial, PolyRing, RingRef};
use thiserror::Error;

use crate::parse::parse_polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

impl FileError {
    fn new(line: usize, message: impl Into<String>) -> FileError {
        FileError { line, message: message.into() }
    }
}

#[derive(Debug, Clone)]
pub struct MapFile {
    pub ring: RingRef,
    pub degree_bound: u32,
    pub map: PolyMap,
    pub primes: Vec<Polynomial>,
}

impl MapFile {
    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    /// Header spelling of the coefficient field: `Q` or `F<p>`.
    pub fn field_name(&self) -> String {
        let p = self.ring.field().characteristic();
        if p == 0 {
            "Q".into()
        } else {
            format!("F{p}")
        }
    }
}

/// Nonblank lines with their 1-based positions.
fn content_lines(text: &str) -> Result<Vec<(usize, &str)>, FileError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        if let Some(bad) = raw.chars().find(|c| !c.is_ascii() || (c.is_ascii_control() && *c != '\t')) {
            return Err(FileError::new(no, format!("non-printable or non-ASCII character {bad:?}")));
        }
        if !raw.trim().is_empty() {
            out.push((no, raw));
        }
    }
    Ok(out)
}

/// Value of a `key:` line, with the column its value starts at.
fn keyed<'a>(line: &'a str, key: &str) -> Option<(&'a str, usize)> {
    let rest = line.trim_start();
    let indent = line.len() - rest.len();
    let rest = rest.strip_prefix(key)?;
    let rest = rest.strip_prefix(':')?;
    Some((rest, indent + key.len() + 1))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

pub fn parse_map_file(text: &str) -> Result<MapFile, FileError> {
    let lines = content_lines(text)?;
    let eof = text.lines().count() + 1;
    let mut it = lines.into_iter();

    let (no, line) = it.next().ok_or_else(|| FileError::new(eof, "empty file"))?;
    let (value, _) = keyed(line, "field")
        .ok_or_else(|| FileError::new(no, "expected `field: Q` or `field: F<p>`"))?;
    let field: FieldSpec =
        value.trim().parse().map_err(|e: keller_core::field::FieldError| {
            FileError::new(no, e.to_string())
        })?;

    let (no, line) =
        it.next().ok_or_else(|| FileError::new(eof, "expected `vars: <names>`"))?;
    let (value, _) =
        keyed(line, "vars").ok_or_else(|| FileError::new(no, "expected `vars: <names>`"))?;
    let names: Vec<String> = value.split_whitespace().map(str::to_owned).collect();
    if names.is_empty() {
        return Err(FileError::new(no, "at least one variable is required"));
    }
    for name in &names {
        if !is_identifier(name) {
            return Err(FileError::new(
                no,
                format!("variable `{name}` is not an identifier ([A-Za-z][A-Za-z0-9]*)"),
            ));
        }
    }
    for (i, name) in names.iter().enumerate() {
        if names[..i].contains(name) {
            return Err(FileError::new(no, format!("duplicate variable `{name}`")));
        }
    }
    let ring = PolyRing::with_names(field, names);
    let n = ring.n_vars();

    let (no, line) =
        it.next().ok_or_else(|| FileError::new(eof, "expected `degree: <bound>`"))?;
    let (value, _) =
        keyed(line, "degree").ok_or_else(|| FileError::new(no, "expected `degree: <bound>`"))?;
    let degree_bound: u32 = value
        .trim()
        .parse()
        .map_err(|_| FileError::new(no, format!("degree bound `{}` is not a number", value.trim())))?;
    if degree_bound == 0 {
        return Err(FileError::new(no, "degree bound must be at least 1"));
    }

    let mut images = Vec::with_capacity(n);
    for i in 1..=n {
        let label = format!("F{i}");
        let (no, line) = it
            .next()
            .ok_or_else(|| FileError::new(eof, format!("expected `{label} = <polynomial>`")))?;
        let Some(eq) = line.find('=') else {
            return Err(FileError::new(no, format!("expected `{label} = <polynomial>`")));
        };
        let lhs = line[..eq].trim();
        if lhs != label {
            return Err(FileError::new(no, format!("expected `{label} = ...`, got `{lhs} = ...`")));
        }
        let body = &line[eq + 1..];
        let poly = parse_polynomial(body, &ring)
            .map_err(|e| {
                let e = e.offset(no, eq + 1);
                FileError::new(e.line, format!("column {}: {}", e.col, e.message))
            })?;
        if let Degree::Finite(d) = poly.degree() {
            if d > degree_bound {
                return Err(FileError::new(
                    no,
                    format!("{label} has degree {d}, above the declared bound {degree_bound}"),
                ));
            }
        }
        images.push(poly);
    }

    let mut primes = Vec::new();
    for (no, line) in it {
        let Some((value, col)) = keyed(line, "prime") else {
            return Err(FileError::new(no, "expected `prime: <polynomial>` or end of file"));
        };
        let poly = parse_polynomial(value, &ring)
            .map_err(|e| {
                let e = e.offset(no, col);
                FileError::new(e.line, format!("column {}: {}", e.col, e.message))
            })?;
        primes.push(poly);
    }

    let map = PolyMap::new(images).map_err(|e| FileError::new(eof, e.to_string()))?;
    Ok(MapFile { ring, degree_bound, map, primes })
}
