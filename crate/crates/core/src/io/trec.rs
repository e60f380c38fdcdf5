use std::collections::{BTreeMap, HashMap};

use crate::error::{EvalError, Result};
use crate::model::{validate_unit, EvalUnit, Judgment, JudgmentSet, RankedList, UnjudgedPolicy};

use super::assessed::parse_grade;
use super::content_lines;

/// Units built from a run file and a qrels file, plus non-fatal diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RunInput {
    pub units: Vec<EvalUnit>,
    pub warnings: Vec<String>,
}

struct RunEntry {
    line: usize,
    doc_id: String,
    rank: usize,
    score: f64,
}

fn parse_qrels(text: &str) -> Result<JudgmentSet> {
    let mut set = JudgmentSet::new();
    for (line, fields) in content_lines(text) {
        if fields.len() != 5 {
            return Err(EvalError::parse(
                line,
                format!(
                    "qrels: expected 5 fields (query assessor doc relevance credibility), found {}",
                    fields.len()
                ),
            ));
        }
        let judgment = Judgment {
            query_id: fields[0].to_string(),
            assessor_id: fields[1].to_string(),
            doc_id: fields[2].to_string(),
            relevance: parse_grade(line, fields[3], "qrels: relevance")?,
            credibility: parse_grade(line, fields[4], "qrels: credibility")?,
        };
        set.insert(judgment)
            .map_err(|e| EvalError::parse(line, format!("qrels: {e}")))?;
    }
    Ok(set)
}

fn parse_run(text: &str) -> Result<BTreeMap<String, Vec<RunEntry>>> {
    let mut runs: BTreeMap<String, Vec<RunEntry>> = BTreeMap::new();
    for (line, fields) in content_lines(text) {
        if fields.len() != 6 {
            return Err(EvalError::parse(
                line,
                format!(
                    "run: expected 6 fields (query Q0 doc rank score tag), found {}",
                    fields.len()
                ),
            ));
        }
        let rank: usize = fields[3].parse().map_err(|_| {
            EvalError::parse(line, format!("run: rank `{}` is not an integer", fields[3]))
        })?;
        let score: f64 = fields[4]
            .parse()
            .ok()
            .filter(|s: &f64| s.is_finite())
            .ok_or_else(|| {
                EvalError::parse(line, format!("run: score `{}` is not a number", fields[4]))
            })?;
        runs.entry(fields[0].to_string())
            .or_default()
            .push(RunEntry {
                line,
                doc_id: fields[2].to_string(),
                rank,
                score,
            });
    }
    for entries in runs.values_mut() {
        entries.sort_by(|a, b| {
            a.rank
                .cmp(&b.rank)
                .then(b.score.total_cmp(&a.score))
                .then_with(|| a.doc_id.cmp(&b.doc_id))
        });
        let mut seen: HashMap<&str, usize> = HashMap::new();
        for e in entries.iter() {
            if let Some(first) = seen.insert(&e.doc_id, e.line) {
                return Err(EvalError::parse(
                    e.line.max(first),
                    format!("run: doc `{}` retrieved twice for one query", e.doc_id),
                ));
            }
        }
    }
    Ok(runs)
}

/// Joins a run with per-assessor judgments: one unit per `(query, assessor)`
/// where the assessor judged the query. Ranked documents missing from the
/// assessor's judgments take the `unjudged` grade and produce a warning.
pub fn parse_run_and_qrels(
    run_text: &str,
    qrels_text: &str,
    unjudged: UnjudgedPolicy,
) -> Result<RunInput> {
    let judgments = parse_qrels(qrels_text)?;
    let runs = parse_run(run_text)?;
    let mut units = Vec::new();
    let mut warnings = Vec::new();

    for (query_id, entries) in &runs {
        let assessors = judgments.assessors(query_id);
        if assessors.is_empty() {
            warnings.push(format!("query `{query_id}` has no judgments; skipped"));
            continue;
        }
        for assessor_id in assessors {
            let list = RankedList::new(
                query_id.clone(),
                assessor_id,
                entries.iter().map(|e| e.doc_id.clone()),
            );
            let unit = validate_unit(&list, &judgments, unjudged)?;
            let missing: Vec<&str> = unit
                .docs()
                .iter()
                .filter(|d| !d.judged)
                .map(|d| d.doc_id.as_str())
                .collect();
            if !missing.is_empty() {
                warnings.push(format!(
                    "query `{query_id}`, assessor `{assessor_id}`: {} unjudged doc(s) ({}) use grade {}",
                    missing.len(),
                    missing.join(", "),
                    unjudged.value()
                ));
            }
            units.push(unit);
        }
    }
    for query_id in judgments.queries() {
        if !runs.contains_key(query_id) {
            warnings.push(format!(
                "query `{query_id}` is judged but absent from the run"
            ));
        }
    }
    Ok(RunInput { units, warnings })
}
