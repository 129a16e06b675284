use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::spec::{ColumnKind, DatasetSpec, Delimiter};
use crate::error::{Error, Result};

/// A loaded dataset: row-major features after encoding, plus class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub x: Vec<f64>,
    pub num_features: usize,
    pub y: Vec<usize>,
    pub feature_names: Vec<String>,
    pub class_names: Vec<String>,
}

impl Dataset {
    pub fn new(
        name: impl Into<String>,
        x: Vec<f64>,
        num_features: usize,
        y: Vec<usize>,
        feature_names: Vec<String>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        if num_features == 0 || x.len() != y.len() * num_features {
            return Err(Error::Shape(format!(
                "{} values do not form {} rows of {num_features}",
                x.len(),
                y.len()
            )));
        }
        if feature_names.len() != num_features {
            return Err(Error::Shape(
                "feature name count differs from feature count".into(),
            ));
        }
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!(
                "row {}, feature {}",
                i / num_features,
                i % num_features
            )));
        }
        if let Some(&bad) = y.iter().find(|&&l| l >= class_names.len()) {
            return Err(Error::Data(format!(
                "label {bad} out of range for {} classes",
                class_names.len()
            )));
        }
        Ok(Self {
            name: name.into(),
            x,
            num_features,
            y,
            feature_names,
            class_names,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.y.len()
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.num_features..(i + 1) * self.num_features]
    }

    /// Rows and labels at `indices`, in the given order.
    pub fn select(&self, indices: &[usize]) -> (Vec<f64>, Vec<usize>) {
        let mut x = Vec::with_capacity(indices.len() * self.num_features);
        let mut y = Vec::with_capacity(indices.len());
        for &i in indices {
            x.extend_from_slice(self.row(i));
            y.push(self.y[i]);
        }
        (x, y)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_classes()];
        for &l in &self.y {
            counts[l] += 1;
        }
        counts
    }
}

fn split_line(line: &str, delimiter: Delimiter) -> Vec<&str> {
    match delimiter {
        Delimiter::Comma => line.split(',').map(str::trim).collect(),
        Delimiter::Whitespace => line.split_whitespace().collect(),
    }
}

/// Parse raw file text according to `spec`.
pub fn parse_dataset(spec: &DatasetSpec, text: &str) -> Result<Dataset> {
    spec.validate()?;
    let target = spec.target_index()?;
    let feature_cols = spec.feature_columns();
    let ncols = spec.columns.len();

    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields = split_line(line, spec.delimiter);
        if fields.len() != ncols {
            return Err(Error::Data(format!(
                "{}: line {} has {} fields, expected {ncols}",
                spec.key,
                lineno + 1,
                fields.len()
            )));
        }
        rows.push((lineno + 1, fields));
    }

    if let Some(expected) = spec.expected_rows {
        if rows.len() != expected {
            return Err(Error::RowCount {
                dataset: spec.key.clone(),
                expected,
                found: rows.len(),
            });
        }
    }

    // Lexicographic codes for generic categoricals need every distinct value first.
    let lexicon: Vec<Vec<String>> = feature_cols
        .iter()
        .map(|&c| match spec.columns[c].kind {
            ColumnKind::Categorical => rows
                .iter()
                .map(|(_, f)| f[c].to_string())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
            _ => Vec::new(),
        })
        .collect();

    let mut x = Vec::with_capacity(rows.len() * feature_cols.len());
    let mut y = Vec::with_capacity(rows.len());
    for (lineno, fields) in &rows {
        for (slot, &c) in feature_cols.iter().enumerate() {
            let raw = fields[c];
            let column = &spec.columns[c];
            if raw == "?" || raw.is_empty() {
                return Err(Error::Data(format!(
                    "{}: line {lineno}: missing value in column `{}`",
                    spec.key, column.name
                )));
            }
            let value = match &column.kind {
                ColumnKind::Numeric => raw
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        Error::Data(format!(
                            "{}: line {lineno}: `{raw}` in column `{}` is not a number",
                            spec.key, column.name
                        ))
                    })?,
                ColumnKind::Ordinal(levels) => {
                    levels.iter().position(|l| l == raw).ok_or_else(|| {
                        Error::Data(format!(
                            "{}: line {lineno}: unknown category `{raw}` in column `{}`",
                            spec.key, column.name
                        ))
                    })? as f64
                }
                ColumnKind::Categorical => lexicon[slot]
                    .iter()
                    .position(|l| l == raw)
                    .expect("lexicon built from these rows")
                    as f64,
                ColumnKind::Identifier => unreachable!("identifiers are never features"),
            };
            x.push(value);
        }
        let label = spec
            .target_mapping
            .map(fields[target])
            .map_err(|e| Error::Data(format!("{}: line {lineno}: {e}", spec.key)))?;
        y.push(label);
    }

    let feature_names = feature_cols
        .iter()
        .map(|&c| spec.columns[c].name.clone())
        .collect();
    Dataset::new(
        spec.key.clone(),
        x,
        feature_cols.len(),
        y,
        feature_names,
        spec.target_mapping.class_names(),
    )
}

/// Read `spec.file_name` from `data_dir` and parse it.
pub fn load_csv(spec: &DatasetSpec, data_dir: impl AsRef<Path>) -> Result<Dataset> {
    let path = data_dir.as_ref().join(&spec.file_name);
    if !path.exists() {
        return Err(Error::MissingDataFile {
            path,
            dataset: spec.key.clone(),
        });
    }
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    parse_dataset(spec, &text)
}

/// CSV with a header of feature names plus `label`.
pub fn dataset_to_csv(feature_names: &[String], x: &[f64], y: &[usize]) -> String {
    let d = feature_names.len();
    let mut out = feature_names.join(",");
    out.push_str(",label\n");
    for (row, label) in x.chunks_exact(d).zip(y) {
        for v in row {
            let _ = write!(out, "{v},");
        }
        let _ = writeln!(out, "{label}");
    }
    out
}

pub fn write_dataset_csv(
    path: impl AsRef<Path>,
    feature_names: &[String],
    x: &[f64],
    y: &[usize],
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, dataset_to_csv(feature_names, x, y)).map_err(|e| Error::io(path, e))
}
