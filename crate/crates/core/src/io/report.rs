use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};

use super::content_lines;

/// Placeholder id of aggregate rows.
pub const ALL: &str = "all";

const HEADER: &str = "measure\tquery\tassessor\tvalue";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub measure: String,
    pub query: String,
    pub assessor: String,
    pub value: f64,
}

impl ReportRow {
    pub fn new(
        measure: impl Into<String>,
        query: impl Into<String>,
        assessor: impl Into<String>,
        value: f64,
    ) -> Self {
        ReportRow {
            measure: measure.into(),
            query: query.into(),
            assessor: assessor.into(),
            value,
        }
    }

    pub fn is_overall(&self) -> bool {
        self.query == ALL && self.assessor == ALL
    }

    fn key(&self) -> (&str, &str, &str) {
        (&self.measure, &self.query, &self.assessor)
    }
}

/// Per-unit and aggregate measure values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport {
    pub rows: Vec<ReportRow>,
    /// Diagnostics gathered during evaluation; never serialised.
    pub warnings: Vec<String>,
}

impl EvalReport {
    pub fn sorted_rows(&self) -> Vec<&ReportRow> {
        let mut rows: Vec<&ReportRow> = self.rows.iter().collect();
        rows.sort_by(|a, b| a.key().cmp(&b.key()));
        rows
    }

    pub fn value(&self, measure: &str, query: &str, assessor: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.measure == measure && r.query == query && r.assessor == assessor)
            .map(|r| r.value)
    }

    pub fn measures(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.rows.iter().map(|r| r.measure.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        names
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Tsv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tsv" => Ok(ReportFormat::Tsv),
            "json" => Ok(ReportFormat::Json),
            other => Err(EvalError::Config(format!(
                "unknown output format `{other}`"
            ))),
        }
    }
}

/// Four decimals; exact binary ties round half to even.
fn format_value(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

pub fn write_report(report: &EvalReport, format: ReportFormat) -> String {
    let rows = report.sorted_rows();
    match format {
        ReportFormat::Tsv => {
            let mut out = String::from(HEADER);
            out.push('\n');
            for r in rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    r.measure,
                    r.query,
                    r.assessor,
                    format_value(r.value)
                ));
            }
            out
        }
        ReportFormat::Json => {
            let quantised: Vec<ReportRow> = rows
                .into_iter()
                .map(|r| ReportRow {
                    value: format_value(r.value)
                        .parse()
                        .expect("formatted float parses"),
                    ..r.clone()
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&quantised).expect("report rows serialise");
            out.push('\n');
            out
        }
    }
}

/// Reads a TSV or JSON report produced by [`write_report`].
pub fn parse_report(text: &str) -> Result<EvalReport> {
    if text.trim_start().starts_with('[') {
        let rows: Vec<ReportRow> = serde_json::from_str(text)
            .map_err(|e| EvalError::parse(e.line(), format!("report: {e}")))?;
        return Ok(EvalReport {
            rows,
            warnings: Vec::new(),
        });
    }
    let mut rows = Vec::new();
    for (line, fields) in content_lines(text) {
        if fields == ["measure", "query", "assessor", "value"] {
            continue;
        }
        if fields.len() != 4 {
            return Err(EvalError::parse(
                line,
                format!("report: expected 4 fields, found {}", fields.len()),
            ));
        }
        let value: f64 = fields[3].parse().map_err(|_| {
            EvalError::parse(
                line,
                format!("report: value `{}` is not a number", fields[3]),
            )
        })?;
        rows.push(ReportRow::new(fields[0], fields[1], fields[2], value));
    }
    Ok(EvalReport {
        rows,
        warnings: Vec::new(),
    })
}
