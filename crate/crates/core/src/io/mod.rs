//! Judgment/ranking file parsers and report serialisation.
//!
//! Two input layouts are supported:
//!
//! - the assessed-ranking format, one ranked and judged document per line:
//!   `query assessor rank doc relevance credibility`;
//! - a standard run file (`query Q0 doc rank score tag`) paired with a
//!   two-dimensional qrels file (`query assessor doc relevance credibility`).
//!
//! Fields are separated by any run of spaces or tabs, lines starting with `#`
//! are comments, and CRLF line endings are accepted.

mod assessed;
mod convert;
mod report;
mod trec;

pub use assessed::parse_assessed_rankings;
pub use convert::{convert_csv, ColumnRef, CsvLayout};
pub use report::{parse_report, write_report, EvalReport, ReportFormat, ReportRow, ALL};
pub use trec::{parse_run_and_qrels, RunInput};

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}
