//! CSV ingestion and export.
//!
//! A column is numeric when every cell parses as a finite decimal number and
//! nominal otherwise, unless a [`SchemaHints`] entry pins its kind. Missing
//! cells are rejected.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::base::{Example, ExampleBase, FeatureDescriptor, FeatureKind, FeatureSchema, Value};
use crate::error::{Error, Result};

/// Optional sidecar schema (JSON): pins column kinds, the label column and
/// the declared label set.
///
/// ```json
/// { "label": "label", "kinds": { "zone": "nominal" }, "labels": ["success", "failure"] }
/// ```
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaHints {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub kinds: BTreeMap<String, FeatureKind>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl SchemaHints {
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let file = File::open(path)?;
        Ok(serde_json::from_reader(file)?)
    }

    pub fn kind(mut self, column: impl Into<String>, kind: FeatureKind) -> Self {
        self.kinds.insert(column.into(), kind);
        self
    }
}

pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: &str,
    hints: Option<&SchemaHints>,
) -> Result<ExampleBase> {
    read_csv(File::open(path)?, label_column, hints)
}

pub fn read_csv_str(text: &str, label_column: &str) -> Result<ExampleBase> {
    read_csv(text.as_bytes(), label_column, None)
}

pub fn read_csv<R: Read>(
    reader: R,
    label_column: &str,
    hints: Option<&SchemaHints>,
) -> Result<ExampleBase> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let label_col = header
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| Error::MissingLabelColumn(label_column.to_string()))?;

    let mut rows: Vec<(u64, csv::StringRecord)> = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(rows.len() as u64 + 2);
        if record.len() != header.len() {
            return Err(Error::RaggedRow(line));
        }
        for (cell, name) in record.iter().zip(&header) {
            if cell.is_empty() {
                return Err(Error::MissingValue { row: line, column: name.clone() });
            }
        }
        rows.push((line, record));
    }
    if rows.is_empty() {
        return Err(Error::EmptyBase);
    }

    let default_hints = SchemaHints::default();
    let hints = hints.unwrap_or(&default_hints);
    for column in hints.kinds.keys() {
        if !header.contains(column) {
            return Err(Error::InvalidSchema(format!("hinted column `{column}` not in header")));
        }
    }

    // Label set: declared, or distinct observed labels in first-occurrence order.
    let observed = distinct(rows.iter().map(|(_, r)| &r[label_col]));
    if observed.len() < 2 {
        return Err(Error::SingleLabel(observed[0].clone()));
    }
    let labels = match &hints.labels {
        Some(declared) => {
            if let Some(unknown) = observed.iter().find(|l| !declared.contains(l)) {
                return Err(Error::UnknownLabel(unknown.clone()));
            }
            declared.clone()
        }
        None => observed,
    };

    let feature_cols: Vec<usize> = (0..header.len()).filter(|&c| c != label_col).collect();
    let mut descriptors = Vec::with_capacity(feature_cols.len());
    for &c in &feature_cols {
        let name = &header[c];
        let kind = match hints.kinds.get(name) {
            Some(k) => *k,
            None if rows.iter().all(|(_, r)| parse_number(&r[c]).is_some()) => FeatureKind::Numeric,
            None => FeatureKind::Nominal,
        };
        descriptors.push(match kind {
            FeatureKind::Numeric => FeatureDescriptor::numeric(name.clone()),
            FeatureKind::Nominal => {
                FeatureDescriptor::nominal(name.clone(), distinct(rows.iter().map(|(_, r)| &r[c])))?
            }
        });
    }

    let mut examples = Vec::with_capacity(rows.len());
    for (line, record) in &rows {
        let mut values = Vec::with_capacity(feature_cols.len());
        for (&c, d) in feature_cols.iter().zip(&descriptors) {
            let cell = &record[c];
            values.push(match d.kind() {
                FeatureKind::Numeric => Value::Numeric(parse_number(cell).ok_or_else(|| {
                    Error::UnparseableNumeric {
                        row: *line,
                        column: d.name().to_string(),
                        cell: cell.to_string(),
                    }
                })?),
                FeatureKind::Nominal => Value::Nominal(d.token_index(cell).expect("observed token")),
            });
        }
        let label = labels.iter().position(|l| l == &record[label_col]).expect("label in set");
        examples.push(Example::new(values, label));
    }

    let schema = FeatureSchema::new(descriptors, label_column, labels)?;
    ExampleBase::new(schema, examples)
}

/// Writes the base as CSV: features in schema order, label column last.
pub fn write_csv<W: Write>(base: &ExampleBase, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let schema = base.schema();
    let mut header: Vec<&str> = schema.feature_names().collect();
    header.push(schema.label_name());
    w.write_record(&header)?;
    for ex in base.examples() {
        let mut row: Vec<String> = ex
            .values()
            .iter()
            .zip(schema.features())
            .map(|(v, f)| f.render(v))
            .collect();
        row.push(base.label_name_of(ex).to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_csv(base: &ExampleBase, path: impl AsRef<Path>) -> Result<()> {
    write_csv(base, File::create(path)?)
}

fn parse_number(cell: &str) -> Option<f64> {
    // Rust accepts "inf"/"nan" spellings; those are not decimal numbers here.
    if !cell.bytes().any(|b| b.is_ascii_digit()) {
        return None;
    }
    cell.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn distinct<'a>(cells: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = std::collections::HashSet::new();
    cells.filter(|c| seen.insert(*c)).map(str::to_string).collect()
}
