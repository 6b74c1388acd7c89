//! Text formats for matrices, curves and point sets.
//!
//! Matrix CSV: `n` rows of `n` comma-separated tokens, `inf` (any case) for
//! infinity, no header. Matrix JSON: `{"n": .., "entries": [[..]]}` with infinity
//! as the string `"inf"`. Curve CSV: header `lambda_low,lambda_high,kappa`, first
//! low is `0`, last high is `inf`. Curve JSON: `{"n":..,"breakpoints":[..],"values":[..]}`.
//! Floats are written in shortest round-trip form, so save then load is exact.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affinity::{ingest, AffinityMatrix, IngestOptions, PointSet};
use crate::curve::ConnectivityCurve;
use crate::error::IoError;

/// File format selector. The extension of a path never overrides it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (csv|json)")),
        }
    }
}

/// A parse failure inside a document, before a path is attached.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }

    fn at(self, path: &Path) -> IoError {
        IoError::Parse { path: path.to_path_buf(), line: self.line, message: self.message }
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, body: &str) -> Result<(), IoError> {
    fs::write(path, body).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

fn format_value(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        v.to_string()
    }
}

fn parse_token(token: &str, line: usize) -> Result<f64, ParseError> {
    let t = token.trim();
    if t.eq_ignore_ascii_case("inf") {
        return Ok(f64::INFINITY);
    }
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError::new(line, format!("invalid number `{t}`"))),
    }
}

/// Rows of comma-separated tokens; rows may differ in length.
fn parse_csv_rows(body: &str, has_header: bool) -> Result<Vec<(usize, Vec<String>)>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(body.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            ParseError::new(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        rows.push((line, record.iter().map(str::to_string).collect()));
    }
    Ok(rows)
}

/// Raw extended reals from matrix CSV text. Shape is not checked here.
pub fn parse_matrix_csv(body: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    parse_csv_rows(body, false)?
        .into_iter()
        .map(|(line, row)| row.iter().map(|t| parse_token(t, line)).collect())
        .collect()
}

pub fn render_matrix_csv(a: &AffinityMatrix) -> String {
    let mut out = String::new();
    for i in 0..a.n() {
        let row: Vec<String> = a.row(i).iter().map(|v| format_value(v.get())).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum JsonCell {
    Number(f64),
    Token(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDocument {
    n: usize,
    entries: Vec<Vec<JsonCell>>,
}

fn json_error(e: serde_json::Error) -> ParseError {
    ParseError::new(e.line(), e.to_string())
}

pub fn parse_matrix_json(body: &str) -> Result<Vec<Vec<f64>>, ParseError> {
    let doc: MatrixDocument = serde_json::from_str(body).map_err(json_error)?;
    if doc.n != doc.entries.len() {
        return Err(ParseError::new(
            0,
            format!("\"n\" is {} but there are {} rows", doc.n, doc.entries.len()),
        ));
    }
    doc.entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| match cell {
                    JsonCell::Number(v) => Ok(*v),
                    JsonCell::Token(t) => parse_token(t, 0),
                })
                .collect()
        })
        .collect()
}

pub fn render_matrix_json(a: &AffinityMatrix) -> String {
    let entries = (0..a.n())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|v| match v.finite() {
                    Some(x) => JsonCell::Number(x),
                    None => JsonCell::Token("inf".to_string()),
                })
                .collect()
        })
        .collect();
    let doc = MatrixDocument { n: a.n(), entries };
    serde_json::to_string(&doc).expect("matrix serializes")
}

/// Reads, symmetrizes, applies the zero policy and validates.
pub fn load_matrix(
    path: impl AsRef<Path>,
    format: Format,
    options: IngestOptions,
) -> Result<AffinityMatrix, IoError> {
    let path = path.as_ref();
    let body = read(path)?;
    let raw = match format {
        Format::Csv => parse_matrix_csv(&body),
        Format::Json => parse_matrix_json(&body),
    }
    .map_err(|e| e.at(path))?;
    ingest(&raw, options).map_err(|source| IoError::Affinity { path: path.to_path_buf(), source })
}

pub fn save_matrix(a: &AffinityMatrix, path: impl AsRef<Path>, format: Format) -> Result<(), IoError> {
    let body = match format {
        Format::Csv => render_matrix_csv(a),
        Format::Json => render_matrix_json(a),
    };
    write(path.as_ref(), &body)
}

pub const CURVE_CSV_HEADER: &str = "lambda_low,lambda_high,kappa";

pub fn render_curve_csv(curve: &ConnectivityCurve) -> String {
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for (low, high, kappa) in curve.intervals() {
        writeln!(out, "{},{},{}", format_value(low), format_value(high), kappa).unwrap();
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDocument {
    n: usize,
    breakpoints: Vec<f64>,
    values: Vec<usize>,
}

pub fn render_curve_json(curve: &ConnectivityCurve) -> String {
    let doc = CurveDocument {
        n: curve.n(),
        breakpoints: curve.breakpoints().to_vec(),
        values: curve.values().to_vec(),
    };
    serde_json::to_string(&doc).expect("curve serializes")
}

/// Curve from CSV. The CSV form has no `n`, so the final `kappa` stands in for it.
pub fn parse_curve_csv(body: &str) -> Result<ConnectivityCurve, ParseError> {
    let first = body.lines().next().unwrap_or("").trim();
    if first != CURVE_CSV_HEADER {
        return Err(ParseError::new(1, format!("expected header `{CURVE_CSV_HEADER}`")));
    }
    let rows = parse_csv_rows(body, true)?;
    if rows.is_empty() {
        return Err(ParseError::new(2, "curve has no rows"));
    }
    let mut breakpoints = Vec::new();
    let mut values = Vec::new();
    let mut expected_low = 0.0;
    for (k, (line, row)) in rows.iter().enumerate() {
        if row.len() != 3 {
            return Err(ParseError::new(*line, "expected 3 fields"));
        }
        let low = parse_token(&row[0], *line)?;
        let high = parse_token(&row[1], *line)?;
        let kappa: usize = row[2]
            .parse()
            .map_err(|_| ParseError::new(*line, format!("invalid kappa `{}`", row[2])))?;
        if low != expected_low {
            return Err(ParseError::new(*line, "intervals are not contiguous"));
        }
        if k > 0 {
            breakpoints.push(low);
        }
        let last = k + 1 == rows.len();
        if last != (high == f64::INFINITY) {
            return Err(ParseError::new(*line, "only the last interval is unbounded"));
        }
        expected_low = high;
        values.push(kappa);
    }
    let n = *values.last().unwrap();
    ConnectivityCurve::new(n, breakpoints, values).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn parse_curve_json(body: &str) -> Result<ConnectivityCurve, ParseError> {
    let doc: CurveDocument = serde_json::from_str(body).map_err(json_error)?;
    ConnectivityCurve::new(doc.n, doc.breakpoints, doc.values)
        .map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn load_curve(path: impl AsRef<Path>, format: Format) -> Result<ConnectivityCurve, IoError> {
    let path = path.as_ref();
    let body = read(path)?;
    match format {
        Format::Csv => parse_curve_csv(&body),
        Format::Json => parse_curve_json(&body),
    }
    .map_err(|e| e.at(path))
}

pub fn save_curve(curve: &ConnectivityCurve, path: impl AsRef<Path>, format: Format) -> Result<(), IoError> {
    let body = match format {
        Format::Csv => render_curve_csv(curve),
        Format::Json => render_curve_json(curve),
    };
    write(path.as_ref(), &body)
}

/// Point set CSV: one point per row, one or two coordinates.
pub fn parse_points_csv(body: &str) -> Result<PointSet, ParseError> {
    let rows = parse_csv_rows(body, false)?;
    let dim = rows.first().map_or(1, |(_, r)| r.len());
    let points = rows
        .iter()
        .map(|(line, row)| row.iter().map(|t| parse_token(t, *line)).collect())
        .collect::<Result<Vec<Vec<f64>>, _>>()?;
    if points.iter().flatten().any(|v| v.is_infinite()) {
        return Err(ParseError::new(0, "coordinates must be finite"));
    }
    PointSet::new(dim, &points).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn render_points_csv(points: &PointSet) -> String {
    let mut out = String::new();
    for p in points.iter() {
        let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn load_points(path: impl AsRef<Path>) -> Result<PointSet, IoError> {
    let path = path.as_ref();
    parse_points_csv(&read(path)?).map_err(|e| e.at(path))
}

pub fn save_points(points: &PointSet, path: impl AsRef<Path>) -> Result<(), IoError> {
    write(path.as_ref(), &render_points_csv(points))
}

/// Raw square array from CSV, for builders that take non-affinity input such as
/// shared boundary lengths.
pub fn load_raw_csv(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>, IoError> {
    let path = path.as_ref();
    parse_matrix_csv(&read(path)?).map_err(|e| e.at(path))
}
