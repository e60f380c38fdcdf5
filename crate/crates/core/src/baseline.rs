//! Relevance-only and credibility-only reference measures: binary measures over
//! thresholded grades (P@k, recall, AP, MRR, bPref, F-1, G) and graded NDCG.

use crate::error::{EvalError, Result};
use crate::model::{Dimension, EvalUnit, Gain};
use crate::type_one::discount;

/// A measure value together with a flag marking a degenerate denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged {
    pub value: f64,
    pub degenerate: bool,
}

impl Flagged {
    fn ok(value: f64) -> Self {
        Flagged {
            value,
            degenerate: false,
        }
    }

    fn degenerate(value: f64) -> Self {
        Flagged {
            value,
            degenerate: true,
        }
    }
}

/// 1 if `grade >= threshold`, else 0.
pub fn binarize(grade: u8, threshold: u8) -> u8 {
    u8::from(grade >= threshold)
}

/// Binary labels of a ranking plus the size of the judged pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryJudgedList {
    labels: Vec<bool>,
    judged: Vec<bool>,
    positives_total: usize,
    negatives_total: usize,
}

impl BinaryJudgedList {
    /// Every ranked document is judged.
    pub fn new(labels: Vec<bool>, positives_total: usize, negatives_total: usize) -> Result<Self> {
        let judged = vec![true; labels.len()];
        Self::with_judged(labels, judged, positives_total, negatives_total)
    }

    /// `judged[i] == false` marks an unassessed document; its label still
    /// counts for AP, P@k, recall and MRR but bPref skips it.
    pub fn with_judged(
        labels: Vec<bool>,
        judged: Vec<bool>,
        positives_total: usize,
        negatives_total: usize,
    ) -> Result<Self> {
        if labels.len() != judged.len() {
            return Err(EvalError::Structural(
                "labels and judged flags differ in length".into(),
            ));
        }
        let retrieved_pos = labels.iter().filter(|&&l| l).count();
        if positives_total < retrieved_pos {
            return Err(EvalError::Structural(format!(
                "{retrieved_pos} positives ranked but only {positives_total} in the pool"
            )));
        }
        let judged_neg = labels
            .iter()
            .zip(&judged)
            .filter(|(&l, &j)| j && !l)
            .count();
        if negatives_total < judged_neg {
            return Err(EvalError::Structural(format!(
                "{judged_neg} judged negatives ranked but only {negatives_total} in the pool"
            )));
        }
        Ok(BinaryJudgedList {
            labels,
            judged,
            positives_total,
            negatives_total,
        })
    }

    /// Thresholded grades of one dimension; the pool is the unit's judged pool
    /// plus any unjudged ranked documents the policy made positive.
    pub fn from_unit(unit: &EvalUnit, dimension: Dimension, threshold: u8) -> Self {
        let labels: Vec<bool> = unit
            .docs()
            .iter()
            .map(|d| binarize(d.grade(dimension), threshold) == 1)
            .collect();
        let judged: Vec<bool> = unit.docs().iter().map(|d| d.judged).collect();
        let pool_grade = |j: &crate::model::Judgment| match dimension {
            Dimension::Relevance => j.relevance.value(),
            Dimension::Credibility => j.credibility.value(),
        };
        let pool_pos = unit
            .pool()
            .iter()
            .filter(|j| binarize(pool_grade(j), threshold) == 1)
            .count();
        let pool_neg = unit.pool().len() - pool_pos;
        let unjudged_pos = labels
            .iter()
            .zip(&judged)
            .filter(|(&l, &j)| l && !j)
            .count();
        Self::with_judged(labels, judged, pool_pos + unjudged_pos, pool_neg)
            .expect("unit pool covers its judged ranked documents")
    }

    pub fn labels(&self) -> &[bool] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn positives_total(&self) -> usize {
        self.positives_total
    }

    pub fn negatives_total(&self) -> usize {
        self.negatives_total
    }

    fn hits_at(&self, k: usize) -> usize {
        self.labels[..k].iter().filter(|&&l| l).count()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.labels.len() {
            return Err(EvalError::Argument(format!(
                "cutoff {k} outside 1..={}",
                self.labels.len()
            )));
        }
        Ok(())
    }
}

pub fn precision_at_k(list: &BinaryJudgedList, k: usize) -> Result<f64> {
    list.check_k(k)?;
    Ok(list.hits_at(k) as f64 / k as f64)
}

pub fn recall_at_k(list: &BinaryJudgedList, k: usize) -> Result<Flagged> {
    list.check_k(k)?;
    if list.positives_total == 0 {
        return Ok(Flagged::degenerate(0.0));
    }
    Ok(Flagged::ok(
        list.hits_at(k) as f64 / list.positives_total as f64,
    ))
}

/// Sum of precision at each positive rank, over the pool's positive count.
pub fn average_precision(list: &BinaryJudgedList) -> Flagged {
    if list.positives_total == 0 {
        return Flagged::degenerate(0.0);
    }
    let mut hits = 0usize;
    let mut sum = 0.0;
    for (i, &label) in list.labels.iter().enumerate() {
        if label {
            hits += 1;
            sum += hits as f64 / (i + 1) as f64;
        }
    }
    Flagged::ok(sum / list.positives_total as f64)
}

pub fn mrr(list: &BinaryJudgedList) -> f64 {
    list.labels
        .iter()
        .position(|&l| l)
        .map_or(0.0, |i| 1.0 / (i + 1) as f64)
}

/// Binary preference over judged documents only.
///
/// Each retrieved judged positive scores `1 - min(m, R) / min(R, N)`, where `m`
/// is the number of judged negatives ranked above it, `R` and `N` the pool's
/// positive and negative counts.
pub fn bpref(list: &BinaryJudgedList) -> Flagged {
    let r = list.positives_total;
    if r == 0 {
        return Flagged::degenerate(0.0);
    }
    let denom = r.min(list.negatives_total);
    let mut negatives_above = 0usize;
    let mut sum = 0.0;
    for (&label, &judged) in list.labels.iter().zip(&list.judged) {
        if !judged {
            continue;
        }
        if label {
            sum += if denom == 0 {
                1.0
            } else {
                1.0 - negatives_above.min(r) as f64 / denom as f64
            };
        } else {
            negatives_above += 1;
        }
    }
    Flagged::ok(sum / r as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
}

impl ConfusionCounts {
    /// Retrieved = the top `k` ranked documents; actual positive = binarized
    /// grade. Unretrieved pool documents supply the false and true negatives.
    pub fn from_unit(unit: &EvalUnit, dimension: Dimension, threshold: u8, k: usize) -> Self {
        let k = k.min(unit.len());
        let mut counts = ConfusionCounts::default();
        let mut retrieved = std::collections::HashSet::new();
        for doc in &unit.docs()[..k] {
            retrieved.insert(doc.doc_id.as_str());
            if binarize(doc.grade(dimension), threshold) == 1 {
                counts.true_positives += 1;
            } else {
                counts.false_positives += 1;
            }
        }
        for j in unit.pool() {
            if retrieved.contains(j.doc_id.as_str()) {
                continue;
            }
            let grade = match dimension {
                Dimension::Relevance => j.relevance.value(),
                Dimension::Credibility => j.credibility.value(),
            };
            if binarize(grade, threshold) == 1 {
                counts.false_negatives += 1;
            } else {
                counts.true_negatives += 1;
            }
        }
        counts
    }

    /// `None` when `tp + fp == 0`.
    pub fn precision(&self) -> Option<f64> {
        ratio(
            self.true_positives,
            self.true_positives + self.false_positives,
        )
    }

    /// `None` when `tp + fn == 0`.
    pub fn recall(&self) -> Option<f64> {
        ratio(
            self.true_positives,
            self.true_positives + self.false_negatives,
        )
    }
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn f1(counts: &ConfusionCounts) -> Flagged {
    match (counts.precision(), counts.recall()) {
        (Some(p), Some(r)) if p + r > 0.0 => Flagged::ok(2.0 * p * r / (p + r)),
        _ => Flagged::degenerate(0.0),
    }
}

/// Geometric mean of precision and recall.
pub fn g_measure(counts: &ConfusionCounts) -> Flagged {
    match (counts.precision(), counts.recall()) {
        (Some(p), Some(r)) if p + r > 0.0 => Flagged::ok((p * r).sqrt()),
        _ => Flagged::degenerate(0.0),
    }
}

fn dcg(grades: impl Iterator<Item = f64>, gain: Gain) -> f64 {
    grades
        .enumerate()
        .map(|(i, g)| gain.apply(g) * discount(i + 1))
        .sum()
}

/// NDCG at cutoff `k` (clamped to the list length), normalised by the same
/// grades sorted descending. All-zero gain yields 1 with the degeneracy flag.
pub fn ndcg(grades: &[f64], gain: Gain, k: usize) -> Result<Flagged> {
    if k == 0 {
        return Err(EvalError::Argument("NDCG cutoff must be at least 1".into()));
    }
    let k = k.min(grades.len());
    let actual = dcg(grades[..k].iter().copied(), gain);
    let mut ideal = grades.to_vec();
    ideal.sort_by(|a, b| b.total_cmp(a));
    let best = dcg(ideal[..k].iter().copied(), gain);
    if best == 0.0 {
        return Ok(Flagged::degenerate(1.0));
    }
    Ok(Flagged::ok(actual / best))
}
