use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{EvalError, Result};
use crate::model::Grade;

/// A CSV column addressed by 0-based index or by header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl FromStr for ColumnRef {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(EvalError::Config("empty column reference".into()));
        }
        Ok(s.parse::<usize>()
            .map(ColumnRef::Index)
            .unwrap_or_else(|_| ColumnRef::Name(s.to_string())))
    }
}

/// Column mapping from a judged-ranking CSV export to the assessed-ranking format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvLayout {
    pub delimiter: u8,
    pub has_header: bool,
    pub query: ColumnRef,
    pub assessor: ColumnRef,
    /// When absent, rows are ranked in file order within each group.
    pub rank: Option<ColumnRef>,
    pub doc: ColumnRef,
    pub relevance: ColumnRef,
    pub credibility: ColumnRef,
}

fn resolve(col: &ColumnRef, headers: Option<&csv::StringRecord>) -> Result<usize> {
    match col {
        ColumnRef::Index(i) => Ok(*i),
        ColumnRef::Name(name) => headers
            .and_then(|h| h.iter().position(|f| f.trim() == name))
            .ok_or_else(|| EvalError::Config(format!("no CSV column named `{name}`"))),
    }
}

/// Identifiers must survive whitespace splitting.
fn sanitize(id: &str) -> String {
    id.split_whitespace().collect::<Vec<_>>().join("_")
}

/// (rank, source line, doc, relevance, credibility)
type Row = (usize, usize, String, Grade, Grade);

/// Converts a CSV export into assessed-ranking text, ordered by query,
/// assessor and rank.
pub fn convert_csv(text: &str, layout: &CsvLayout) -> Result<String> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(layout.delimiter)
        .has_headers(layout.has_header)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = if layout.has_header {
        Some(
            reader
                .headers()
                .map_err(|e| EvalError::parse(1, format!("csv header: {e}")))?
                .clone(),
        )
    } else {
        None
    };
    let h = headers.as_ref();
    let q = resolve(&layout.query, h)?;
    let a = resolve(&layout.assessor, h)?;
    let rank = layout.rank.as_ref().map(|c| resolve(c, h)).transpose()?;
    let d = resolve(&layout.doc, h)?;
    let r = resolve(&layout.relevance, h)?;
    let c = resolve(&layout.credibility, h)?;

    let mut groups: BTreeMap<(String, String), Vec<Row>> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 1 + usize::from(layout.has_header);
        let record = record.map_err(|e| EvalError::parse(line, format!("csv: {e}")))?;
        let field = |idx: usize| -> Result<&str> {
            record
                .get(idx)
                .map(str::trim)
                .ok_or_else(|| EvalError::parse(line, format!("csv: missing column {idx}")))
        };
        let key = (sanitize(field(q)?), sanitize(field(a)?));
        let group = groups.entry(key).or_default();
        let position = match rank {
            Some(idx) => field(idx)?.parse::<usize>().map_err(|_| {
                EvalError::parse(
                    line,
                    format!("csv: rank `{}` is not an integer", field(idx).unwrap_or("")),
                )
            })?,
            None => group.len() + 1,
        };
        let grade = |idx: usize, what: &str| -> Result<Grade> {
            field(idx)?
                .parse::<Grade>()
                .map_err(|e| EvalError::parse(line, format!("csv: {what}: {e}")))
        };
        group.push((
            position,
            line,
            sanitize(field(d)?),
            grade(r, "relevance")?,
            grade(c, "credibility")?,
        ));
    }

    let mut out = String::from("# query assessor rank doc relevance credibility\n");
    for ((query, assessor), mut rows) in groups {
        rows.sort_by_key(|row| (row.0, row.1));
        for (position, _, doc, rel, cred) in rows {
            out.push_str(&format!(
                "{query} {assessor} {position} {doc} {rel} {cred}\n"
            ));
        }
    }
    Ok(out)
}
