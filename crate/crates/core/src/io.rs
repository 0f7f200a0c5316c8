//! JSON file formats for matrices and map descriptors.
//!
//! A matrix is `{"n": n, "re": [[..]; n], "im": [[..]; n]}`, row-major; a
//! missing `im` means a real matrix.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cmat::{CMatrix, C64};
use crate::error::{Error, Result};
use crate::posmap::{MapDescriptor, MapSpec};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: usize,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

fn format_err(context: &str, message: impl Into<String>) -> Error {
    Error::Format { context: context.to_string(), message: message.into() }
}

fn check_rows(context: &str, field: &str, rows: &[Vec<f64>], n: usize) -> Result<()> {
    if rows.len() != n {
        return Err(format_err(context, format!("field `{field}` has {} rows, expected n = {n}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(format_err(context, format!("field `{field}` row {i} has {} entries, expected {n}", row.len())));
        }
    }
    Ok(())
}

/// Parses matrix JSON; `context` names the source in error messages.
pub fn parse_matrix(text: &str, context: &str) -> Result<CMatrix> {
    let raw: MatrixJson = serde_json::from_str(text).map_err(|e| format_err(context, e.to_string()))?;
    if raw.n == 0 {
        return Err(format_err(context, "field `n` must be positive"));
    }
    check_rows(context, "re", &raw.re, raw.n)?;
    if let Some(im) = &raw.im {
        check_rows(context, "im", im, raw.n)?;
    }
    let n = raw.n;
    Ok(CMatrix::from_fn(n, |i, j| {
        C64::new(raw.re[i][j], raw.im.as_ref().map_or(0.0, |im| im[i][j]))
    }))
}

/// Matrix JSON with both parts written out.
pub fn matrix_to_json(m: &CMatrix) -> String {
    let n = m.n();
    let part = |f: fn(C64) -> f64| -> Vec<Vec<f64>> { (0..n).map(|i| (0..n).map(|j| f(m[(i, j)])).collect()).collect() };
    let raw = MatrixJson { n, re: part(|z| z.re), im: Some(part(|z| z.im)) };
    serde_json::to_string(&raw).expect("plain numbers serialize")
}

fn read_text(path: &Path, context: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { context: context.to_string(), source })
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<CMatrix> {
    let path = path.as_ref();
    let context = path.display().to_string();
    parse_matrix(&read_text(path, &context)?, &context)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &CMatrix) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, matrix_to_json(m) + "\n")
        .map_err(|source| Error::Io { context: path.display().to_string(), source })
}

pub fn parse_map(text: &str, context: &str) -> Result<MapSpec> {
    let d: MapDescriptor = serde_json::from_str(text).map_err(|e| format_err(context, e.to_string()))?;
    d.build().map_err(|e| format_err(context, e.to_string()))
}

pub fn read_map(path: impl AsRef<Path>) -> Result<MapSpec> {
    let path = path.as_ref();
    let context = path.display().to_string();
    parse_map(&read_text(path, &context)?, &context)
}
