//! Report rendering. Numbers are written with 15 significant digits in
//! scientific notation, independent of locale.

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// `#` comment lines, one header row, then data rows.
    Csv,
    /// One JSON object per line.
    Records,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json_value(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => fmt_num(*v),
            Cell::Num(_) => "null".to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => json_string(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
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

pub fn fmt_num(v: f64) -> String {
    format!("{v:.14e}")
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// A named summary line printed after the table rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub kind: &'static str,
    pub fields: Vec<(&'static str, Cell)>,
}

/// Tabular report with a fixed column contract.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    pub summaries: Vec<Summary>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            summaries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format, echo: &[(String, String)]) -> Result<String, CliError> {
        match format {
            Format::Csv => self.render_csv(echo),
            Format::Records => Ok(self.render_records(echo)),
        }
    }

    fn render_csv(&self, echo: &[(String, String)]) -> Result<String, CliError> {
        let mut out = String::new();
        for (k, v) in echo {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_field))?;
        }
        let body = w
            .into_inner()
            .map_err(|e| CliError::Io(e.into_error()))?;
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        for s in &self.summaries {
            let fields: Vec<String> = s
                .fields
                .iter()
                .map(|(k, v)| format!("{k}={}", v.csv_field()))
                .collect();
            out.push_str(&format!("# {} {}\n", s.kind, fields.join(" ")));
        }
        Ok(out)
    }

    fn render_records(&self, echo: &[(String, String)]) -> String {
        let mut out = String::new();
        let config: Vec<String> = echo
            .iter()
            .map(|(k, v)| format!("{}:{}", json_string(k), json_string(v)))
            .collect();
        out.push_str(&format!("{{\"config\":{{{}}}}}\n", config.join(",")));
        for row in &self.rows {
            let fields: Vec<String> = self
                .columns
                .iter()
                .zip(row)
                .map(|(k, v)| format!("{}:{}", json_string(k), v.json_value()))
                .collect();
            out.push_str(&format!("{{{}}}\n", fields.join(",")));
        }
        for s in &self.summaries {
            let fields: Vec<String> = std::iter::once(format!("\"summary\":{}", json_string(s.kind)))
                .chain(
                    s.fields
                        .iter()
                        .map(|(k, v)| format!("{}:{}", json_string(k), v.json_value())),
                )
                .collect();
            out.push_str(&format!("{{{}}}\n", fields.join(",")));
        }
        out
    }
}
