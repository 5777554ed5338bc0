//! Parsing of command-line values: inline JSON or files, points, directions.

use std::fs;
use std::path::Path;

use lelong_core::convex::Direction;
use lelong_core::exact::{parse_q, QComplex};
use serde::de::DeserializeOwned;

use crate::output::Failure;

/// Reads `arg` as JSON text if it starts with `{`, else as a file path.
pub fn json_arg<T: DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg)).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON input: {e}")))
}

/// Splits on commas outside parentheses.
fn split_top(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

/// A point of exact complex coordinates: `1/2` or `(re,im)` per entry.
pub fn complex_point(text: &str) -> Result<Vec<QComplex>, Failure> {
    split_top(text)
        .into_iter()
        .map(|part| {
            if let Some(inner) = part.strip_prefix('(').and_then(|p| p.strip_suffix(')')) {
                let (re, im) = inner
                    .split_once(',')
                    .ok_or_else(|| Failure::Input(format!("bad complex coordinate {part:?}")))?;
                Ok(QComplex::new(parse_q(re.trim())?, parse_q(im.trim())?))
            } else {
                Ok(QComplex::real(parse_q(part)?))
            }
        })
        .collect()
}

pub fn direction(text: &str, dim: usize) -> Result<Direction, Failure> {
    let a = Direction::parse(text)?;
    if a.dim() != dim {
        return Err(Failure::Input(format!("direction {text:?} has {} entries, expected {dim}", a.dim())));
    }
    Ok(a)
}

pub fn reals(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| Failure::Input(format!("bad number {p:?}"))))
        .collect()
}

/// Largest `k` in a variable `xk` of the polynomial text.
pub fn max_variable(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if let Ok(k) = text[start..end].parse::<usize>() {
                best = best.max(k);
            }
            i = end.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}
