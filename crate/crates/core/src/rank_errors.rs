//! Ideal rank positions and the adjacent-pair rank errors derived from them.
//!
//! For an input ranking `D_1..D_n`, each document has a position in the ideal
//! ordering of one dimension. The error at pair `(i, i+1)` is the truncated
//! difference `pos(D_i) ∸ pos(D_{i+1})`: non-zero only when the document ranked
//! higher in the input sits lower in the ideal ordering.

use std::collections::HashMap;

use crate::error::{EvalError, Result};
use crate::model::{Dimension, EvalUnit, RankedList};

/// Truncated subtraction on non-negative reals: `a - b` if `a > b`, else `0`.
pub fn monus(a: f64, b: f64) -> f64 {
    if a > b {
        a - b
    } else {
        0.0
    }
}

fn monus_usize(a: usize, b: usize) -> usize {
    a.saturating_sub(b)
}

/// 1-based position of every input document in the ideal ordering of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPositions {
    pub dimension: Dimension,
    doc_ids: Vec<String>,
    /// `positions[i]` is the ideal position of the document at input rank `i + 1`.
    positions: Vec<usize>,
}

impl IdealPositions {
    /// Sorts by score descending; ties keep input order.
    pub fn from_scores<S: AsRef<str>>(
        dimension: Dimension,
        doc_ids: &[S],
        scores: &[f64],
    ) -> Result<Self> {
        if doc_ids.len() != scores.len() {
            return Err(EvalError::Structural(format!(
                "{} doc ids but {} scores",
                doc_ids.len(),
                scores.len()
            )));
        }
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
        let mut positions = vec![0; scores.len()];
        for (rank, &input_idx) in order.iter().enumerate() {
            positions[input_idx] = rank + 1;
        }
        Ok(IdealPositions {
            dimension,
            doc_ids: doc_ids.iter().map(|d| d.as_ref().to_string()).collect(),
            positions,
        })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn position_of(&self, doc_id: &str) -> Option<usize> {
        self.doc_ids
            .iter()
            .position(|d| d == doc_id)
            .map(|i| self.positions[i])
    }

    /// Ideal positions listed in input-rank order.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }
}

/// Ideal positions of a unit's documents in one dimension.
pub fn ideal_positions(unit: &EvalUnit, dimension: Dimension) -> IdealPositions {
    IdealPositions::from_scores(dimension, &unit.doc_ids(), &unit.scores(dimension))
        .expect("unit doc ids and grades have equal length")
}

/// Per adjacent pair rank errors; empty for a single-document ranking.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ErrorVector(Vec<usize>);

impl ErrorVector {
    pub fn new(values: Vec<usize>) -> Self {
        ErrorVector(values)
    }

    /// Errors of an input ranking whose documents sit at `positions` in the ideal ordering.
    pub fn from_positions(positions: &[usize]) -> Self {
        ErrorVector(
            positions
                .windows(2)
                .map(|w| monus_usize(w[0], w[1]))
                .collect(),
        )
    }

    pub fn zeros(len: usize) -> Self {
        ErrorVector(vec![0; len])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Errors of `list` against an ideal ordering built over exactly the same documents.
pub fn pairwise_errors(ideal: &IdealPositions, list: &RankedList) -> Result<ErrorVector> {
    if ideal.len() != list.docs.len() {
        return Err(EvalError::Structural(format!(
            "ideal ordering covers {} docs but the ranking has {}",
            ideal.len(),
            list.docs.len()
        )));
    }
    let lookup: HashMap<&str, usize> = ideal
        .doc_ids
        .iter()
        .map(String::as_str)
        .zip(ideal.positions.iter().copied())
        .collect();
    let positions = list
        .docs
        .iter()
        .map(|d| {
            lookup.get(d.as_str()).copied().ok_or_else(|| {
                EvalError::Structural(format!("doc `{d}` is missing from the ideal ordering"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorVector::from_positions(&positions))
}

/// Error vector of a unit's own ranking in one dimension.
pub fn unit_errors(unit: &EvalUnit, dimension: Dimension) -> ErrorVector {
    ErrorVector::from_positions(ideal_positions(unit, dimension).positions())
}
