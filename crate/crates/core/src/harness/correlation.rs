use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{EvalError, Result};
use crate::io::{EvalReport, ALL};

/// 1-based ranks; tied values share the mean of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // ranks start+1 ..= end
        let shared = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = shared;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's rho: Pearson correlation of average ranks.
///
/// `None` when the lengths differ, fewer than two pairs are given, or either
/// side has no variance.
pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Pairing level for report correlations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Granularity {
    /// One pair per `(query, assessor)` unit.
    Unit,
    /// One pair per query, averaging over its assessors.
    #[default]
    QueryMean,
}

impl FromStr for Granularity {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "unit" => Ok(Granularity::Unit),
            "query-mean" | "query" => Ok(Granularity::QueryMean),
            other => Err(EvalError::Config(format!("unknown granularity `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Correlation {
    /// `None` when undefined (no variance or fewer than two pairs).
    pub rho: Option<f64>,
    pub pairs: usize,
}

fn series(report: &EvalReport, measure: &str, granularity: Granularity) -> BTreeMap<String, f64> {
    let unit_rows = report
        .rows
        .iter()
        .filter(|r| r.measure == measure && r.query != ALL && r.assessor != ALL);
    match granularity {
        Granularity::Unit => unit_rows
            .map(|r| (format!("{}\t{}", r.query, r.assessor), r.value))
            .collect(),
        Granularity::QueryMean => {
            let mut sums: BTreeMap<String, (f64, usize)> = BTreeMap::new();
            for r in unit_rows {
                let e = sums.entry(r.query.clone()).or_default();
                e.0 += r.value;
                e.1 += 1;
            }
            if sums.is_empty() {
                // report holds query means only
                return report
                    .rows
                    .iter()
                    .filter(|r| r.measure == measure && r.query != ALL && r.assessor == ALL)
                    .map(|r| (r.query.clone(), r.value))
                    .collect();
            }
            sums.into_iter()
                .map(|(q, (s, n))| (q, s / n as f64))
                .collect()
        }
    }
}

/// Spearman correlation between two measures of a report, paired by unit or by query.
pub fn correlate_report(
    report: &EvalReport,
    x: &str,
    y: &str,
    granularity: Granularity,
) -> Result<Correlation> {
    let xs = series(report, x, granularity);
    let ys = series(report, y, granularity);
    for (name, s) in [(x, &xs), (y, &ys)] {
        if s.is_empty() {
            return Err(EvalError::Config(format!(
                "measure `{name}` not found in report"
            )));
        }
    }
    if xs.len() != ys.len() || xs.keys().zip(ys.keys()).any(|(a, b)| a != b) {
        return Err(EvalError::Structural(format!(
            "measures `{x}` and `{y}` cover different units"
        )));
    }
    let xv: Vec<f64> = xs.values().copied().collect();
    let yv: Vec<f64> = ys.values().copied().collect();
    Ok(Correlation {
        rho: spearman(&xv, &yv),
        pairs: xv.len(),
    })
}
