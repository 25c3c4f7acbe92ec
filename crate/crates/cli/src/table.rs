//! Tabular output in CSV (with `#` header comments) or JSON.

use std::io::Write;

use serde::Serialize;

use crate::config::{Format, ScenarioConfig};
use crate::CliError;

/// Bumped whenever a command's columns change.
pub const COLUMNS_VERSION: u32 = 1;

pub const UNITS: &str = "hbar = c = eps0 = mu0 = 1; lengths in c/omega_ref, \
                         energies in hbar*omega_ref, forces in hbar*omega_ref^2/c";

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // drop the sign of zero
            Cell::Num(v) => format!("{:e}", v + 0.0),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Rows whose evaluation failed; they carry a message in the `error` column.
    #[serde(skip)]
    pub failed_rows: usize,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Table {
            command,
            columns,
            rows: Vec::new(),
            failed_rows: 0,
        }
    }

    /// Appends a row of values, or a row of blanks with an error marker.
    pub fn push_result(&mut self, lead: Vec<Cell>, result: Result<Vec<Cell>, String>) {
        let width = self.columns.len();
        let mut row = lead;
        match result {
            Ok(values) => {
                row.extend(values);
                row.resize(width - 1, Cell::Empty);
                row.push(Cell::Empty);
            }
            Err(msg) => {
                row.resize(width - 1, Cell::Empty);
                row.push(Cell::Text(msg));
                self.failed_rows += 1;
            }
        }
        self.rows.push(row);
    }

    /// Appends a row with a note in the `error` column that does not count
    /// as a failure.
    pub fn push_note(&mut self, lead: Vec<Cell>, note: String) {
        let mut row = lead;
        row.resize(self.columns.len() - 1, Cell::Empty);
        row.push(Cell::Text(note));
        self.rows.push(row);
    }
}

#[derive(Serialize)]
struct JsonDocument<'a> {
    command: &'a str,
    columns_version: u32,
    units: &'a str,
    config: &'a ScenarioConfig,
    columns: &'a [&'static str],
    rows: &'a [Vec<Cell>],
}

pub fn write(table: &Table, config: &ScenarioConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Config(format!("cannot write output: {e}"));
    match config.output.format {
        Format::Csv => {
            writeln!(out, "# vdw {} (columns v{COLUMNS_VERSION})", table.command).map_err(io)?;
            writeln!(out, "# units: {UNITS}").map_err(io)?;
            let q = config.spec();
            writeln!(
                out,
                "# tolerance: rel_tol = {:e}, abs_tol = {:e}, max_subdivisions = {}",
                q.rel_tol, q.abs_tol, q.max_subdivisions
            )
            .map_err(io)?;
            writeln!(out, "# config: {}", config.to_json()).map_err(io)?;
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| CliError::Config(format!("cannot write output: {e}"));
            w.write_record(&table.columns).map_err(csv_err)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::csv)).map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Json => {
            let doc = JsonDocument {
                command: table.command,
                columns_version: COLUMNS_VERSION,
                units: UNITS,
                config,
                columns: &table.columns,
                rows: &table.rows,
            };
            serde_json::to_writer_pretty(&mut *out, &doc)
                .map_err(|e| CliError::Config(format!("cannot write output: {e}")))?;
            writeln!(out).map_err(io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_rows_are_padded_and_counted() {
        let mut t = Table::new("test", vec!["l", "U", "F", "error"]);
        t.push_result(vec![1.0.into()], Ok(vec![2.0.into()]));
        t.push_result(vec![3.0.into()], Err("no convergence".into()));
        assert_eq!(t.failed_rows, 1);
        assert_eq!(
            t.rows[0],
            vec![1.0.into(), 2.0.into(), Cell::Empty, Cell::Empty]
        );
        assert_eq!(t.rows[1][3], Cell::Text("no convergence".into()));
        t.push_result(vec![4.0.into()], Ok(vec![Cell::Num(-0.0)]));
        assert_eq!(t.rows[2][1].csv(), "0e0");
        t.push_note(vec![5.0.into()], "outside regime".into());
        assert_eq!(t.failed_rows, 1);
        assert_eq!(t.rows[3].len(), 4);
    }

    #[test]
    fn csv_has_header_comments() {
        let mut t = Table::new("test", vec!["l", "error"]);
        t.push_result(vec![0.5.into()], Ok(vec![]));
        let mut buf = Vec::new();
        write(&t, &ScenarioConfig::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# vdw test"));
        assert!(lines[3].starts_with("# config: {"));
        assert_eq!(lines[4], "l,error");
        assert_eq!(lines[5], "5e-1,");
    }
}
