//! Plain-text matrix and vector format.
//!
//! ```text
//! # optional comment lines
//! 3
//! 0 1 0
//! 1 0 1
//! 0 1 0
//! ```
//!
//! The first token is the dimension `n`, followed by `n * n` reals in
//! row-major order (or `n` reals for a vector). Spaces, tabs and newlines
//! are interchangeable. Output uses 17 significant digits so that parsing
//! the emitted text reproduces every entry exactly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Formats a real with 17 significant digits in scientific notation.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
}

fn parse_body(text: &str, per_n: impl Fn(usize) -> usize) -> Result<(usize, Vec<f64>)> {
    let mut toks = tokens(text);
    let head = toks.next().ok_or(Error::TokenCount {
        expected: 1,
        found: 0,
    })?;
    let n: usize = head.parse().map_err(|_| Error::NotANumber {
        index: 0,
        token: head.to_string(),
    })?;
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let expected = per_n(n);
    let mut values = Vec::with_capacity(expected);
    for (k, tok) in toks.enumerate() {
        let v: f64 = tok.parse().map_err(|_| Error::NotANumber {
            index: k + 1,
            token: tok.to_string(),
        })?;
        if !v.is_finite() {
            return Err(Error::NotANumber {
                index: k + 1,
                token: tok.to_string(),
            });
        }
        values.push(v);
    }
    if values.len() != expected {
        return Err(Error::TokenCount {
            expected,
            found: values.len(),
        });
    }
    Ok((n, values))
}

pub fn parse_matrix(text: &str) -> Result<SymmetricMatrix> {
    let (n, values) = parse_body(text, |n| n * n)?;
    SymmetricMatrix::from_row_major(n, values)
}

/// Parses the one-column variant: `n` followed by `n` reals.
pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let (_, values) = parse_body(text, |n| n)?;
    Ok(values)
}

pub fn emit_matrix(m: &SymmetricMatrix) -> String {
    let n = m.n();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = m.row(i).iter().map(|&v| fmt_real(v)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn emit_vector(v: &[f64]) -> String {
    let mut out = format!("{}\n", v.len());
    for &x in v {
        let _ = writeln!(out, "{}", fmt_real(x));
    }
    out
}
