//! Score-based measures: Weighted Cumulative Score (WCS / NWCS) and the two
//! aggregators that merge a relevance-only with a credibility-only measure
//! (CAM, convex combination; WHAM, weighted harmonic mean).

use crate::error::{EvalError, Result};
use crate::model::{Dimension, EvalUnit};
use crate::type_one::discount;

/// Per-position `(relevance score, credibility score)`; index 0 is rank 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoredRanking(Vec<(f64, f64)>);

impl ScoredRanking {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.iter().any(|(r, c)| !r.is_finite() || !c.is_finite()) {
            return Err(EvalError::Argument("scores must be finite".into()));
        }
        Ok(ScoredRanking(pairs))
    }

    /// Scores taken directly from the unit's grades.
    pub fn from_unit(unit: &EvalUnit) -> Self {
        let rel = unit.scores(Dimension::Relevance);
        let cred = unit.scores(Dimension::Credibility);
        ScoredRanking(rel.into_iter().zip(cred).collect())
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn combined(pair: (f64, f64), lambda: f64) -> f64 {
    lambda * pair.0 + (1.0 - lambda) * pair.1
}

fn discounted_sum(values: impl Iterator<Item = f64>) -> f64 {
    values.enumerate().map(|(i, v)| v * discount(i + 1)).sum()
}

pub fn wcs(ranking: &ScoredRanking, lambda: f64) -> f64 {
    discounted_sum(ranking.0.iter().map(|&p| combined(p, lambda)))
}

/// WCS of the same documents reordered by combined score, descending.
///
/// The discount is strictly decreasing, so this ordering maximises WCS.
pub fn iwcs(ranking: &ScoredRanking, lambda: f64) -> f64 {
    let mut values: Vec<f64> = ranking.0.iter().map(|&p| combined(p, lambda)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    discounted_sum(values.into_iter())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NwcsResult {
    pub wcs: f64,
    pub iwcs: f64,
    pub score: f64,
    /// Set when IWCS is zero; the score is then 1 by convention.
    pub degenerate: bool,
}

pub fn nwcs(ranking: &ScoredRanking, lambda: f64) -> NwcsResult {
    let w = wcs(ranking, lambda);
    let ideal = iwcs(ranking, lambda);
    if ideal == 0.0 {
        return NwcsResult {
            wcs: w,
            iwcs: ideal,
            score: 1.0,
            degenerate: true,
        };
    }
    NwcsResult {
        wcs: w,
        iwcs: ideal,
        score: w / ideal,
        degenerate: false,
    }
}

/// A relevance-only measure value paired with a credibility-only one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregationInput {
    pub m_r: f64,
    pub m_c: f64,
}

impl AggregationInput {
    pub fn new(m_r: f64, m_c: f64) -> Self {
        AggregationInput { m_r, m_c }
    }
}

/// Convex aggregating measure: `λ M_r + (1 - λ) M_c`.
pub fn cam(input: AggregationInput, lambda: f64) -> f64 {
    lambda * input.m_r + (1.0 - lambda) * input.m_c
}

/// Weighted harmonic mean aggregating measure; zero if either input is zero.
pub fn wham(input: AggregationInput, lambda: f64) -> f64 {
    if input.m_r == 0.0 || input.m_c == 0.0 {
        return 0.0;
    }
    1.0 / (lambda / input.m_r + (1.0 - lambda) / input.m_c)
}
