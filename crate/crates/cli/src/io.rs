//! Matrix and tuple input, tabular output and run manifests.

use std::path::Path;

use matstat_core::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};

use matstat_core::linalg::Matrix;
use matstat_core::multdep::MatrixTuple;

use crate::CliError;

/// Version of the CSV/JSON output layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

fn parse_entry(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(x) => match x.as_i64() {
            Some(i) => Ok(BigInt::from(i)),
            None => x.to_string().parse().map_err(|_| CliError::Usage(format!("entry {x} is not an integer"))),
        },
        Value::String(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("entry \"{s}\" is not an integer"))),
        other => Err(CliError::Usage(format!("entry {other} is not an integer"))),
    }
}

fn matrix_from_value(v: &Value) -> Result<Matrix<BigInt>, CliError> {
    let rows = v.as_array().ok_or_else(|| CliError::Usage("a matrix is an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| CliError::Usage("each matrix row must be an array".into()))?
                .iter()
                .map(parse_entry)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn unwrap_key<'a>(v: &'a Value, key: &str) -> &'a Value {
    match v {
        Value::Object(m) => m.get(key).unwrap_or(&Value::Null),
        _ => v,
    }
}

/// Parses `[[1,2],[3,4]]` or `{"matrix": [[1,2],[3,4]]}`.
/// Entries may be JSON integers or decimal strings.
pub fn parse_matrix(text: &str) -> Result<Matrix<BigInt>, CliError> {
    let v: Value = serde_json::from_str(text)?;
    matrix_from_value(unwrap_key(&v, "matrix"))
}

/// Parses `[[[..]], [[..]], ...]` or `{"tuple": [...]}`.
pub fn parse_tuple(text: &str) -> Result<MatrixTuple, CliError> {
    let v: Value = serde_json::from_str(text)?;
    let items = unwrap_key(&v, "tuple")
        .as_array()
        .ok_or_else(|| CliError::Usage("a tuple is an array of matrices".into()))?;
    let ms = items.iter().map(matrix_from_value).collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixTuple::new(ms)?)
}

pub fn read_matrix(path: &Path) -> Result<Matrix<BigInt>, CliError> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn read_tuple(path: &Path) -> Result<MatrixTuple, CliError> {
    parse_tuple(&std::fs::read_to_string(path)?)
}

pub fn matrix_to_json(m: &Matrix<BigInt>) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

/// Parses `"1,-2,3"`.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| CliError::Usage(format!("cannot parse '{x}' in list '{s}'"))))
        .collect()
}

/// A result table. Cells are strings so that counts keep full precision.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: ToString>(header: &[S]) -> Self {
        Table { header: header.iter().map(ToString::to_string).collect(), rows: Vec::new() }
    }

    pub fn push<S: ToString>(&mut self, row: &[S]) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row.iter().map(ToString::to_string).collect());
    }

    /// Removes a column by name, if present.
    pub fn drop_column(&mut self, name: &str) {
        if let Some(i) = self.header.iter().position(|h| h == name) {
            self.header.remove(i);
            for r in &mut self.rows {
                r.remove(i);
            }
        }
    }

    pub fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Array of objects keyed by column name.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.header.iter().cloned().zip(r.iter().cloned().map(Value::String)).collect()))
                .collect(),
        )
    }
}

/// One or more named tables. CSV output separates tables with a blank line
/// and a `# name` line; JSON output nests them under their names.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub tables: Vec<(String, Table)>,
}

impl Report {
    pub fn single(t: Table) -> Self {
        Report { tables: vec![("rows".into(), t)] }
    }

    pub fn push(&mut self, name: &str, t: Table) {
        self.tables.push((name.into(), t));
    }

    pub fn drop_column(&mut self, name: &str) {
        for (_, t) in &mut self.tables {
            t.drop_column(name);
        }
    }

    pub fn rows(&self) -> usize {
        self.tables.iter().map(|(_, t)| t.rows.len()).sum()
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => {
                let mut out = String::new();
                for (i, (name, t)) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push_str(&format!("\n# {name}\n"));
                    }
                    out.push_str(&t.render_csv()?);
                }
                Ok(out)
            }
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
                for (name, t) in &self.tables {
                    doc.insert(name.clone(), t.to_json());
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(doc))?;
                s.push('\n');
                Ok(s)
            }
        }
    }
}

/// Sidecar record of a run: what was asked, with which limits, by which build.
#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub command: Vec<String>,
    pub threads: usize,
    /// `None` when the command default was used.
    pub budget: Option<u64>,
    pub seed: u64,
    pub format: Format,
    pub spec: Value,
    pub rows: usize,
}

impl Manifest {
    pub fn new(command: Vec<String>, threads: usize, budget: Option<u64>, seed: u64, format: Format) -> Self {
        Manifest {
            schema_version: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            core_version: matstat_core::VERSION,
            command,
            threads,
            budget,
            seed,
            format,
            spec: Value::Null,
            rows: 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_forms() {
        let a = parse_matrix("[[1, 2], [3, -4]]").unwrap();
        let b = parse_matrix(r#"{"matrix": [["1", 2], [3, "-4"]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.det(), BigInt::from(-10));
        let big = parse_matrix(r#"[["123456789012345678901234567890"]]"#).unwrap();
        assert_eq!(big.get(0, 0).to_string(), "123456789012345678901234567890");
        assert!(parse_matrix("[[1, 2], [3]]").is_err());
        assert!(parse_matrix("[[1.5]]").is_err());
        assert!(parse_matrix("[[1, 2]").is_err());
    }

    #[test]
    fn tuple_forms() {
        let t = parse_tuple("[[[1,1],[0,1]], [[2,0],[0,1]]]").unwrap();
        assert_eq!((t.len(), t.dim()), (2, 2));
        let u = parse_tuple(r#"{"tuple": [[[1,1],[0,1]], [[2,0],[0,1]]]}"#).unwrap();
        assert_eq!(t.matrices(), u.matrices());
        assert!(parse_tuple("[[[1,1],[0,1]], [[2]]]").is_err());
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<i64>("1, -2,3").unwrap(), vec![1, -2, 3]);
        assert!(parse_list::<u64>("1,x").is_err());
    }

    #[test]
    fn rendering() {
        let mut t = Table::new(&["n", "count", "elapsed_ms"]);
        t.push(&["2", "340282366920938463463374607431768211456", "5"]);
        t.drop_column("elapsed_ms");
        assert_eq!(t.render_csv().unwrap(), "n,count\n2,340282366920938463463374607431768211456\n");
        let mut r = Report::single(t.clone());
        r.push("fit", Table::new(&["slope"]));
        assert_eq!(r.render(Format::Csv).unwrap(), "n,count\n2,340282366920938463463374607431768211456\n\n# fit\nslope\n");
        let j: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(j["rows"][0]["count"], "340282366920938463463374607431768211456");
        assert_eq!(j["schema_version"], 1);
    }
}
