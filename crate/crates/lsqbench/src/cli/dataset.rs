//! Numeric CSV dataset ingestion with optional feature standardization.

use std::path::Path;

use crate::error::{Error, Result};
use crate::matcore::{Matrix, Vector};

/// A loaded regression dataset: target vector `y`, remaining columns as the
/// design matrix `x` in header order.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub x: Matrix,
    pub y: Vector,
    pub feature_names: Vec<String>,
    pub standardized: bool,
}

/// Loads a headered, all-numeric CSV. Lines starting with `#` are skipped.
///
/// With `standardize` each feature is centered to mean 0 and scaled to
/// sample standard deviation 1; constant features are centered only (a
/// warning goes to stderr) so nothing divides by zero.
pub fn load_csv_dataset(
    path: impl AsRef<Path>,
    target_column: &str,
    standardize: bool,
) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                Error::io(path.display().to_string(), io_from_csv(e))
            }
            _ => Error::Schema(e.to_string()),
        })?;

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Schema(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let target_idx = headers
        .iter()
        .position(|h| h == target_column)
        .ok_or_else(|| {
            Error::Schema(format!(
                "target column '{target_column}' not found; columns are: {}",
                headers.join(", ")
            ))
        })?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != target_idx)
        .map(|(_, h)| h.clone())
        .collect();
    if feature_names.is_empty() {
        return Err(Error::Schema(
            "dataset needs at least one feature column besides the target".into(),
        ));
    }

    let mut x_data: Vec<f64> = Vec::new();
    let mut y_data: Vec<f64> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or_default(),
            msg: e.to_string(),
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or_default();
        if record.len() != headers.len() {
            return Err(Error::Parse {
                line,
                msg: format!(
                    "expected {} fields, found {}",
                    headers.len(),
                    record.len()
                ),
            });
        }
        for (i, raw) in record.iter().enumerate() {
            let value: f64 = raw.parse().map_err(|_| Error::Parse {
                line,
                msg: format!("non-numeric value '{raw}' in column '{}'", headers[i]),
            })?;
            if i == target_idx {
                y_data.push(value);
            } else {
                x_data.push(value);
            }
        }
    }

    let rows = y_data.len();
    if rows < 2 {
        return Err(Error::Degenerate(format!(
            "dataset needs at least 2 rows, found {rows}"
        )));
    }
    let cols = feature_names.len();
    let mut x = Matrix::new(rows, cols, x_data)?;

    if standardize {
        for (j, name) in feature_names.iter().enumerate() {
            let mean: f64 = (0..rows).map(|i| x.get(i, j)).sum::<f64>() / rows as f64;
            let ss: f64 = (0..rows)
                .map(|i| {
                    let c = x.get(i, j) - mean;
                    c * c
                })
                .sum();
            let std = (ss / (rows - 1) as f64).sqrt();
            let min = (0..rows).map(|i| x.get(i, j)).fold(f64::INFINITY, f64::min);
            let max = (0..rows)
                .map(|i| x.get(i, j))
                .fold(f64::NEG_INFINITY, f64::max);
            if min == max {
                eprintln!("warning: feature '{name}' is constant; centered but not scaled");
                for i in 0..rows {
                    x.set(i, j, 0.0);
                }
            } else {
                for i in 0..rows {
                    x.set(i, j, (x.get(i, j) - mean) / std);
                }
            }
        }
    }

    Ok(Dataset {
        x,
        y: Vector::new(y_data),
        feature_names,
        standardized: standardize,
    })
}

fn io_from_csv(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    }
}
