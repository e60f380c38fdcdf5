//! Rank-position measures: Local Rank Error (LRE / NLRE) and Global Rank Error
//! (GRE / NGRE).
//!
//! Both consume the relevance and credibility [`ErrorVector`]s of a ranking.
//! LRE couples the two errors at every adjacent pair; GRE accumulates each
//! dimension separately and multiplies once. The normalisers `C_LRE` and
//! `C_GRE` are the largest raw errors attainable for a ranking of length `n`,
//! so `1 - raw / C` lies in `[0, 1]`.

use crate::error::{EvalError, Result};
use crate::model::{Dimension, EvalUnit, MeasureConfig};
use crate::rank_errors::{unit_errors, ErrorVector};

/// Rank discount `1 / log2(1 + i)` for 1-based rank `i`.
pub fn discount(rank: usize) -> f64 {
    1.0 / ((1 + rank) as f64).log2()
}

/// Penalty of one adjacent pair: `(μ + ε_r)(ν + ε_c) - μν`.
pub fn pair_penalty(err_r: f64, err_c: f64, mu: f64, nu: f64) -> f64 {
    (mu + err_r) * (nu + err_c) - mu * nu
}

fn check_lengths(err_r: &ErrorVector, err_c: &ErrorVector) -> Result<()> {
    if err_r.len() != err_c.len() {
        return Err(EvalError::Structural(format!(
            "relevance errors cover {} pairs, credibility errors {}",
            err_r.len(),
            err_c.len()
        )));
    }
    Ok(())
}

/// Local Rank Error. Zero for single-document rankings (empty error vectors).
pub fn lre(err_r: &ErrorVector, err_c: &ErrorVector, mu: f64, nu: f64) -> Result<f64> {
    check_lengths(err_r, err_c)?;
    Ok(err_r
        .values()
        .iter()
        .zip(err_c.values())
        .enumerate()
        .map(|(i, (&r, &c))| discount(i + 1) * pair_penalty(r as f64, c as f64, mu, nu))
        .sum())
}

/// Global Rank Error: `(1 + μ Σ ε_r d_i)(1 + ν Σ ε_c d_i) - 1`.
pub fn gre(err_r: &ErrorVector, err_c: &ErrorVector, mu: f64, nu: f64) -> Result<f64> {
    check_lengths(err_r, err_c)?;
    if err_r.is_empty() {
        return Ok(0.0);
    }
    let discounted = |e: &ErrorVector| -> f64 {
        e.values()
            .iter()
            .enumerate()
            .map(|(i, &v)| discount(i + 1) * v as f64)
            .sum()
    };
    Ok((1.0 + mu * discounted(err_r)) * (1.0 + nu * discounted(err_c)) - 1.0)
}

/// Terms `(j, n - 2j - 1, 1 + log2(1 + j))` for `j = 0..=floor(n/2 - 1)`.
///
/// Empty for `n < 2`.
fn bound_terms(n: usize) -> impl Iterator<Item = (f64, f64)> {
    (0..n / 2).map(move |j| {
        let span = (n - 2 * j - 1) as f64;
        let denom = 1.0 + ((1 + j) as f64).log2();
        (span, denom)
    })
}

/// Normalisation constant for LRE. Returns 0 for `n < 2`.
pub fn c_lre(n: usize, mu: f64, nu: f64) -> f64 {
    bound_terms(n)
        .map(|(span, denom)| (span * span + (mu + nu) * span) / denom)
        .sum()
}

/// Normalisation constant for GRE: `μν S² + (μ + ν) S`. Returns 0 for `n < 2`.
pub fn c_gre(n: usize, mu: f64, nu: f64) -> f64 {
    let s: f64 = bound_terms(n).map(|(span, denom)| span / denom).sum();
    mu * nu * s * s + (mu + nu) * s
}

/// Relative excess over the normaliser still treated as attaining it exactly.
pub const ROUNDING_SLACK: f64 = 1e-12;

/// Outcome of a normalised rank-error measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeIResult {
    /// LRE or GRE.
    pub raw_error: f64,
    /// `C_LRE` or `C_GRE`; `None` for single-document rankings, where the score is 1.
    pub normalizer: Option<f64>,
    /// `1 - raw_error / normalizer`, clamped into `[0, 1]`.
    pub score: f64,
    /// Set iff clamping changed the score, i.e. the raw error exceeded the
    /// normaliser by more than [`ROUNDING_SLACK`].
    pub clamped: bool,
}

impl TypeIResult {
    fn normalise(raw_error: f64, n_pairs: usize, normalizer: f64) -> Self {
        if n_pairs == 0 {
            return TypeIResult {
                raw_error: 0.0,
                normalizer: None,
                score: 1.0,
                clamped: false,
            };
        }
        let ratio = raw_error / normalizer;
        // maximal-error rankings can overshoot the bound by a few ulps
        let ratio = if ratio > 1.0 && ratio - 1.0 <= ROUNDING_SLACK {
            1.0
        } else {
            ratio
        };
        let unclamped = 1.0 - ratio;
        let score = unclamped.clamp(0.0, 1.0);
        TypeIResult {
            raw_error,
            normalizer: Some(normalizer),
            score,
            clamped: score != unclamped,
        }
    }
}

/// NLRE from precomputed error vectors.
pub fn nlre_from_errors(
    err_r: &ErrorVector,
    err_c: &ErrorVector,
    mu: f64,
    nu: f64,
) -> Result<TypeIResult> {
    let raw = lre(err_r, err_c, mu, nu)?;
    let n = err_r.len() + 1;
    Ok(TypeIResult::normalise(raw, err_r.len(), c_lre(n, mu, nu)))
}

/// NGRE from precomputed error vectors.
pub fn ngre_from_errors(
    err_r: &ErrorVector,
    err_c: &ErrorVector,
    mu: f64,
    nu: f64,
) -> Result<TypeIResult> {
    let raw = gre(err_r, err_c, mu, nu)?;
    let n = err_r.len() + 1;
    Ok(TypeIResult::normalise(raw, err_r.len(), c_gre(n, mu, nu)))
}

pub fn nlre(unit: &EvalUnit, config: &MeasureConfig) -> TypeIResult {
    let err_r = unit_errors(unit, Dimension::Relevance);
    let err_c = unit_errors(unit, Dimension::Credibility);
    nlre_from_errors(&err_r, &err_c, config.mu, config.nu).expect("vectors share the unit length")
}

pub fn ngre(unit: &EvalUnit, config: &MeasureConfig) -> TypeIResult {
    let err_r = unit_errors(unit, Dimension::Relevance);
    let err_c = unit_errors(unit, Dimension::Credibility);
    ngre_from_errors(&err_r, &err_c, config.mu, config.nu).expect("vectors share the unit length")
}
