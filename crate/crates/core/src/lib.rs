//! Evaluation of ranked document lists against graded relevance and graded
//! credibility judgments.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: grades, judgments, ranked lists and validated evaluation units.
//! - [`rank_errors`]: ideal rank positions and adjacent-pair rank errors.
//! - [`type_one`]: rank-position measures (NLRE, NGRE) and their normalisers.
//! - [`type_two`]: score-based measures (NWCS) and measure aggregators (CAM, WHAM).
//! - [`baseline`]: relevance-only and credibility-only reference measures.
//! - [`io`]: judgment/ranking file parsers and report serialisation.
//! - [`harness`]: batch evaluation, rank correlation and the bound oracle.

pub mod baseline;
pub mod error;
pub mod harness;
pub mod io;
pub mod model;
pub mod rank_errors;
pub mod type_one;
pub mod type_two;

pub use error::{EvalError, Result};
pub use model::{
    Dimension, EvalUnit, Gain, Grade, Judgment, JudgmentSet, MeasureConfig, RankedList,
    UnjudgedPolicy,
};
