use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{EvalError, Result};
use crate::io::{EvalReport, ReportRow, ALL};
use crate::model::{EvalUnit, MeasureConfig};

use super::measures::{MeasureSpec, UnitValue};

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Evaluates every measure on every unit and appends one `(all, all)` mean
/// row per measure. Units are scored independently; row order is fixed by
/// [`EvalReport::sorted_rows`], so input order never affects the output.
pub fn evaluate(
    units: &[EvalUnit],
    specs: &[MeasureSpec],
    config: &MeasureConfig,
) -> Result<EvalReport> {
    config.validate()?;
    let mut keys = HashSet::new();
    for u in units {
        if !keys.insert((u.query_id.as_str(), u.assessor_id.as_str())) {
            return Err(EvalError::Structural(format!(
                "more than one unit for query `{}`, assessor `{}`",
                u.query_id, u.assessor_id
            )));
        }
    }

    let per_unit: Vec<Vec<UnitValue>> = units
        .par_iter()
        .map(|unit| specs.iter().map(|s| s.compute(unit, config)).collect())
        .collect();

    let mut report = EvalReport::default();
    for (j, spec) in specs.iter().enumerate() {
        let name = spec.to_string();
        let mut values = Vec::with_capacity(units.len());
        for (unit, results) in units.iter().zip(&per_unit) {
            let r = &results[j];
            if let Some(note) = &r.note {
                report.warnings.push(format!(
                    "{name}: query `{}`, assessor `{}`: {note}",
                    unit.query_id, unit.assessor_id
                ));
            }
            values.push(r.value);
            report.rows.push(ReportRow::new(
                name.clone(),
                unit.query_id.clone(),
                unit.assessor_id.clone(),
                r.value,
            ));
        }
        if !values.is_empty() {
            report
                .rows
                .push(ReportRow::new(name, ALL, ALL, mean(&values)));
        }
    }
    report.warnings.sort();
    Ok(report)
}

/// Adds a `(query, all)` row per measure and query holding the mean over that
/// query's assessors.
pub fn add_query_means(report: &mut EvalReport) {
    let mut groups: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for row in &report.rows {
        if row.query != ALL && row.assessor != ALL {
            groups
                .entry((row.measure.clone(), row.query.clone()))
                .or_default()
                .push(row.value);
        }
    }
    for ((measure, query), values) in groups {
        report
            .rows
            .push(ReportRow::new(measure, query, ALL, mean(&values)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::parse_measure_list;
    use crate::io::parse_assessed_rankings;

    #[test]
    fn singleton_mean_row() {
        let units = parse_assessed_rankings("q1 a1 1 d1 1 2\nq1 a1 2 d2 4 2").unwrap();
        let specs = parse_measure_list("nlre").unwrap();
        let report = evaluate(&units, &specs, &MeasureConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.value("nlre", "q1", "a1"), Some(0.75));
        assert_eq!(report.value("nlre", ALL, ALL), Some(0.75));
    }

    #[test]
    fn mean_of_two_units() {
        // q1 is ideal in both dimensions; q2 reverses relevance only
        let text = "q1 a1 1 d1 4 2\nq1 a1 2 d2 1 2\nq2 a1 1 d1 1 4\nq2 a1 2 d2 4 1\n";
        let units = parse_assessed_rankings(text).unwrap();
        let report = evaluate(
            &units,
            &parse_measure_list("nlre").unwrap(),
            &MeasureConfig::default(),
        )
        .unwrap();
        let second = report.value("nlre", "q2", "a1").unwrap();
        assert!((second - 0.75).abs() < 1e-12);
        let all = report.value("nlre", ALL, ALL).unwrap();
        assert!((all - 0.875).abs() < 1e-12);
    }

    #[test]
    fn cam_of_constituents() {
        let text = "q1 a1 1 d1 2 4\nq1 a1 2 d2 4 1\nq1 a1 3 d3 3 3\n";
        let units = parse_assessed_rankings(text).unwrap();
        let cfg = MeasureConfig::default();
        let report = evaluate(
            &units,
            &parse_measure_list("ndcg,f1,cam:ndcg+f1").unwrap(),
            &cfg,
        )
        .unwrap();
        let ndcg = report.value("ndcg", "q1", "a1").unwrap();
        let f1 = report.value("f1", "q1", "a1").unwrap();
        let cam = report.value("cam:ndcg+f1", "q1", "a1").unwrap();
        assert!((cam - (0.5 * ndcg + 0.5 * f1)).abs() < 1e-12);
    }

    #[test]
    fn query_means() {
        let text = "q1 a1 1 d1 4 4\nq1 a2 1 d1 4 4\nq1 a2 2 d2 1 1\n";
        let units = parse_assessed_rankings(text).unwrap();
        let mut report = evaluate(
            &units,
            &parse_measure_list("ndcg").unwrap(),
            &MeasureConfig::default(),
        )
        .unwrap();
        add_query_means(&mut report);
        assert_eq!(report.value("ndcg", "q1", ALL), Some(1.0));
    }

    #[test]
    fn duplicate_units_rejected() {
        let units = parse_assessed_rankings("q1 a1 1 d1 4 4").unwrap();
        let doubled = vec![units[0].clone(), units[0].clone()];
        assert!(evaluate(
            &doubled,
            &parse_measure_list("ndcg").unwrap(),
            &MeasureConfig::default()
        )
        .is_err());
    }

    #[test]
    fn invalid_config_rejected_before_computation() {
        let units = parse_assessed_rankings("q1 a1 1 d1 4 4").unwrap();
        let cfg = MeasureConfig {
            lambda: 2.0,
            ..Default::default()
        };
        assert!(matches!(
            evaluate(&units, &parse_measure_list("nwcs").unwrap(), &cfg),
            Err(EvalError::Config(_))
        ));
    }
}
