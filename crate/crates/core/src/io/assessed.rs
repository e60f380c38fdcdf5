use std::collections::{BTreeMap, HashMap};

use crate::error::{EvalError, Result};
use crate::model::{
    validate_unit, EvalUnit, Grade, Judgment, JudgmentSet, RankedList, UnjudgedPolicy,
};

use super::content_lines;

struct Entry {
    line: usize,
    doc_id: String,
    relevance: Grade,
    credibility: Grade,
}

pub(crate) fn parse_grade(line: usize, field: &str, what: &str) -> Result<Grade> {
    field
        .parse::<Grade>()
        .map_err(|e| EvalError::parse(line, format!("{what} grade: {e}")))
}

/// Parses an assessed-ranking file into one validated unit per
/// `(query, assessor)` group, ordered by query then assessor.
pub fn parse_assessed_rankings(text: &str) -> Result<Vec<EvalUnit>> {
    let mut groups: BTreeMap<(String, String), BTreeMap<usize, Entry>> = BTreeMap::new();

    for (line, fields) in content_lines(text) {
        if fields.len() != 6 {
            return Err(EvalError::parse(
                line,
                format!(
                    "expected 6 fields (query assessor rank doc relevance credibility), found {}",
                    fields.len()
                ),
            ));
        }
        let rank: usize = fields[2].parse().ok().filter(|&r| r >= 1).ok_or_else(|| {
            EvalError::parse(
                line,
                format!("rank `{}` is not a positive integer", fields[2]),
            )
        })?;
        let entry = Entry {
            line,
            doc_id: fields[3].to_string(),
            relevance: parse_grade(line, fields[4], "relevance")?,
            credibility: parse_grade(line, fields[5], "credibility")?,
        };
        let group = groups
            .entry((fields[0].to_string(), fields[1].to_string()))
            .or_default();
        if let Some(prev) = group.get(&rank) {
            return Err(EvalError::parse(
                line.max(prev.line),
                format!(
                    "rank {rank} repeated for query `{}`, assessor `{}` (also on line {})",
                    fields[0],
                    fields[1],
                    line.min(prev.line)
                ),
            ));
        }
        group.insert(rank, entry);
    }

    let mut units = Vec::with_capacity(groups.len());
    for ((query_id, assessor_id), entries) in groups {
        let mut judgments = JudgmentSet::new();
        let mut seen: HashMap<&str, usize> = HashMap::new();
        for (expected, (&rank, entry)) in (1..).zip(&entries) {
            if rank != expected {
                return Err(EvalError::parse(
                    entry.line,
                    format!(
                        "ranks for query `{query_id}`, assessor `{assessor_id}` are not contiguous: \
                         expected rank {expected}, found {rank}"
                    ),
                ));
            }
            if let Some(first) = seen.insert(&entry.doc_id, entry.line) {
                return Err(EvalError::parse(
                    entry.line.max(first),
                    format!(
                        "doc `{}` ranked twice for query `{query_id}`, assessor `{assessor_id}`",
                        entry.doc_id
                    ),
                ));
            }
            judgments.insert(Judgment {
                query_id: query_id.clone(),
                assessor_id: assessor_id.clone(),
                doc_id: entry.doc_id.clone(),
                relevance: entry.relevance,
                credibility: entry.credibility,
            })?;
        }
        let list = RankedList::new(
            query_id.clone(),
            assessor_id.clone(),
            entries.values().map(|e| e.doc_id.clone()),
        );
        units.push(validate_unit(&list, &judgments, UnjudgedPolicy::Zero)?);
    }
    Ok(units)
}
