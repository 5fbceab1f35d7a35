//! Vector I/O: plain text with one value per line (`re im` per line for
//! complex data), or a single JSON array when the path ends in `.json`.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;

use crate::UsageError;

fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

fn parse_number(token: &str, line: usize) -> Result<f64> {
    token
        .parse::<f64>()
        .map_err(|e| UsageError::new(format!("line {line}: invalid number '{token}': {e}")).into())
}

/// Parses text lines; blank lines are skipped, `#` starts a comment.
fn parse_lines(text: &str, width: usize) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != width {
            bail!(UsageError::new(format!(
                "line {}: expected {width} value(s), found {}",
                i + 1,
                tokens.len()
            )));
        }
        rows.push(
            tokens
                .iter()
                .map(|t| parse_number(t, i + 1))
                .collect::<Result<_>>()?,
        );
    }
    Ok(rows)
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn check_count(path: &Path, found: usize, expected: usize) -> Result<()> {
    if found != expected {
        bail!(UsageError::new(format!(
            "{}: expected {expected} values, found {found}",
            path.display()
        )));
    }
    Ok(())
}

pub fn read_real(path: &Path, expected: usize) -> Result<Vec<f64>> {
    let text = read_text(path)?;
    let values: Vec<f64> = if is_json(path) {
        serde_json::from_str(&text)
            .map_err(|e| UsageError::new(format!("{}: {e}", path.display())))?
    } else {
        parse_lines(&text, 1)?.into_iter().map(|r| r[0]).collect()
    };
    check_count(path, values.len(), expected)?;
    Ok(values)
}

pub fn read_complex(path: &Path, expected: usize) -> Result<Vec<Complex64>> {
    let text = read_text(path)?;
    let pairs: Vec<[f64; 2]> = if is_json(path) {
        serde_json::from_str(&text)
            .map_err(|e| UsageError::new(format!("{}: {e}", path.display())))?
    } else {
        parse_lines(&text, 2)?
            .into_iter()
            .map(|r| [r[0], r[1]])
            .collect()
    };
    check_count(path, pairs.len(), expected)?;
    Ok(pairs
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect())
}

/// Seventeen significant digits, enough to round-trip any `f64`.
fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_real(values: &[f64], json: bool) -> String {
    if json {
        return serde_json::to_string(values).expect("finite reals serialize") + "\n";
    }
    values.iter().fold(String::new(), |mut s, &v| {
        let _ = writeln!(s, "{}", fmt_value(v));
        s
    })
}

pub fn format_complex(values: &[Complex64], json: bool) -> String {
    if json {
        let pairs: Vec<[f64; 2]> = values.iter().map(|z| [z.re, z.im]).collect();
        return serde_json::to_string(&pairs).expect("finite pairs serialize") + "\n";
    }
    values.iter().fold(String::new(), |mut s, z| {
        let _ = writeln!(s, "{} {}", fmt_value(z.re), fmt_value(z.im));
        s
    })
}
