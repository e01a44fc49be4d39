//! CSV and JSON serialisation of [`SampledField`]s.
//!
//! CSV rows are `x_1,…,x_n,value`, one per grid point in storage order.
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so a write/read round trip is exact.

use crate::error::{Error, Result};
use crate::tensor::{SampledField, TensorGrid};
use ndarray::{ArrayD, IxDyn};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format '{other}'"))),
        }
    }
}

impl Format {
    /// `json` for `.json` paths, CSV otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// JSON envelope: grid metadata plus row-major values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldEnvelope {
    pub axes: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
    pub shape: Vec<usize>,
    pub values: Vec<f64>,
}

impl From<&SampledField> for FieldEnvelope {
    fn from(field: &SampledField) -> Self {
        FieldEnvelope {
            axes: field.grid().axes().to_vec(),
            radii: field.grid().radii().to_vec(),
            shape: field.grid().shape(),
            values: field.values().iter().copied().collect(),
        }
    }
}

impl TryFrom<FieldEnvelope> for SampledField {
    type Error = Error;
    fn try_from(env: FieldEnvelope) -> Result<Self> {
        let grid = TensorGrid::new(env.axes, env.radii)?;
        if env.shape != grid.shape() {
            return Err(Error::GridMismatch(format!(
                "declared shape {:?} does not match axes {:?}",
                env.shape,
                grid.shape()
            )));
        }
        let values =
            ArrayD::from_shape_vec(IxDyn(&env.shape), env.values).map_err(|e| Error::GridMismatch(e.to_string()))?;
        SampledField::new(grid, values)
    }
}

/// Shortest round-trip decimal form, e.g. `1.0`, `2.404825557695773`.
pub fn format_number(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_csv<W: Write>(field: &SampledField, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header: Vec<String> = (1..=field.ndim()).map(|j| format!("x_{j}")).collect();
    header.push("value".into());
    w.write_record(&header).map_err(csv_error)?;
    for (point, value) in field.rows() {
        let record: Vec<String> = point.iter().chain(std::iter::once(&value)).map(|&x| format_number(x)).collect();
        w.write_record(&record).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(field: &SampledField, mut writer: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut writer, &FieldEnvelope::from(field))?;
    writeln!(writer)?;
    Ok(())
}

pub fn write_to<W: Write>(field: &SampledField, writer: W, format: Format) -> Result<()> {
    match format {
        Format::Csv => write_csv(field, writer),
        Format::Json => write_json(field, writer),
    }
}

pub fn write_field(field: &SampledField, path: &Path, format: Format) -> Result<()> {
    let file = BufWriter::new(File::create(path)?);
    write_to(field, file, format)
}

/// Parses `x_1,…,x_n,value` rows. Rows may come in any order but must
/// cover every combination of the per-axis coordinates exactly once.
pub fn read_csv<R: Read>(reader: R) -> Result<SampledField> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header = r.headers().map_err(csv_error)?.clone();
    let ncols = header.len();
    if ncols < 2 || header.get(ncols - 1) != Some("value") {
        return Err(Error::Parse { line: 1, message: "header must be x_1,...,x_n,value".into() });
    }
    for (j, name) in header.iter().take(ncols - 1).enumerate() {
        if name != format!("x_{}", j + 1) {
            return Err(Error::Parse { line: 1, message: format!("expected column x_{}, found '{name}'", j + 1) });
        }
    }
    let ndim = ncols - 1;

    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != ncols {
            return Err(Error::Parse { line, message: format!("expected {ncols} fields, found {}", record.len()) });
        }
        let nums = record
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Parse { line, message: format!("'{s}' is not a finite number") })
            })
            .collect::<Result<Vec<f64>>>()?;
        // `+ 0.0` folds -0.0 into 0.0 so coordinates compare bitwise
        rows.push((nums[..ndim].iter().map(|x| x + 0.0).collect(), nums[ndim]));
    }
    if rows.is_empty() {
        return Err(Error::Parse { line: 1, message: "no data rows".into() });
    }
    assemble(ndim, rows)
}

fn assemble(ndim: usize, rows: Vec<(Vec<f64>, f64)>) -> Result<SampledField> {
    let axes: Vec<Vec<f64>> = (0..ndim)
        .map(|j| {
            let mut a: Vec<f64> = rows.iter().map(|(p, _)| p[j]).collect();
            a.sort_by(f64::total_cmp);
            a.dedup();
            a
        })
        .collect();
    let expected: usize = axes.iter().map(Vec::len).product();
    if expected != rows.len() {
        return Err(Error::NonTensorGrid(format!(
            "{} rows but the distinct coordinates span {expected} points",
            rows.len()
        )));
    }
    let lookup: Vec<HashMap<u64, usize>> =
        axes.iter().map(|a| a.iter().enumerate().map(|(i, x)| (x.to_bits(), i)).collect()).collect();
    let shape: Vec<usize> = axes.iter().map(Vec::len).collect();
    let mut values = ArrayD::from_elem(IxDyn(&shape), f64::NAN);
    for (point, value) in rows {
        let idx: Vec<usize> = point.iter().zip(&lookup).map(|(x, l)| l[&x.to_bits()]).collect();
        let slot = &mut values[IxDyn(&idx)];
        if !slot.is_nan() {
            return Err(Error::NonTensorGrid(format!("point {point:?} appears twice")));
        }
        *slot = value;
    }
    SampledField::new(TensorGrid::from_axes(axes)?, values)
}

pub fn read_json<R: Read>(reader: R) -> Result<SampledField> {
    let env: FieldEnvelope = serde_json::from_reader(reader)?;
    SampledField::try_from(env)
}

/// Reads a field, choosing JSON or CSV by file extension.
pub fn read_profile(path: &Path) -> Result<SampledField> {
    let file = File::open(path)?;
    match Format::from_path(path) {
        Format::Json => read_json(file),
        Format::Csv => read_csv(file),
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse { line, message: format!("{other:?}") },
    }
}
