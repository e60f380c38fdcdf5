use std::fmt;
use std::str::FromStr;

use crate::baseline::{
    average_precision, bpref, f1, g_measure, mrr, ndcg, precision_at_k, recall_at_k,
    BinaryJudgedList, ConfusionCounts,
};
use crate::error::{EvalError, Result};
use crate::model::{Dimension, EvalUnit, MeasureConfig};
use crate::type_one::{ngre, nlre};
use crate::type_two::{cam, nwcs, wham, AggregationInput, ScoredRanking};

/// Which judgments a measure looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    /// Relevance and credibility together.
    Joint,
    RelevanceOnly,
    CredibilityOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseMeasure {
    Nlre,
    Ngre,
    Nwcs,
    Ndcg,
    Ap,
    /// Explicit cutoff, or the configured one when `None`.
    PrecisionAt(Option<usize>),
    Mrr,
    Bpref,
    Recall,
    F1,
    G,
}

impl BaseMeasure {
    pub fn kind(self) -> MeasureKind {
        use BaseMeasure::*;
        match self {
            Nlre | Ngre | Nwcs => MeasureKind::Joint,
            Ndcg | Ap | PrecisionAt(_) | Mrr | Bpref | Recall => MeasureKind::RelevanceOnly,
            F1 | G => MeasureKind::CredibilityOnly,
        }
    }

    fn compute(self, unit: &EvalUnit, config: &MeasureConfig) -> UnitValue {
        let n = unit.len();
        let k = config.cutoff_k.min(n);
        let relevance =
            || BinaryJudgedList::from_unit(unit, Dimension::Relevance, config.binary_threshold);
        let credibility = || {
            ConfusionCounts::from_unit(
                unit,
                Dimension::Credibility,
                config.binary_threshold,
                config.cutoff_k,
            )
        };
        let flagged = |f: crate::baseline::Flagged, why: &str| UnitValue {
            value: f.value,
            note: f.degenerate.then(|| why.to_string()),
        };
        match self {
            BaseMeasure::Nlre | BaseMeasure::Ngre => {
                let r = if self == BaseMeasure::Nlre {
                    nlre(unit, config)
                } else {
                    ngre(unit, config)
                };
                UnitValue {
                    value: r.score,
                    note: r.clamped.then(|| {
                        format!(
                            "raw error {} exceeded its bound and was clamped",
                            r.raw_error
                        )
                    }),
                }
            }
            BaseMeasure::Nwcs => {
                let r = nwcs(&ScoredRanking::from_unit(unit), config.lambda);
                UnitValue {
                    value: r.score,
                    note: r
                        .degenerate
                        .then(|| "ideal score is zero; scored 1".to_string()),
                }
            }
            BaseMeasure::Ndcg => {
                let r = ndcg(&unit.scores(Dimension::Relevance), config.gain, k)
                    .expect("cutoff is at least 1");
                flagged(r, "all gains are zero; scored 1")
            }
            BaseMeasure::Ap => flagged(
                average_precision(&relevance()),
                "no relevant documents; scored 0",
            ),
            BaseMeasure::PrecisionAt(explicit) => {
                let wanted = explicit.unwrap_or(config.cutoff_k);
                let used = wanted.min(n);
                UnitValue {
                    value: precision_at_k(&relevance(), used).expect("cutoff within list"),
                    note: (used != wanted)
                        .then(|| format!("cutoff {wanted} exceeds list length; used {used}")),
                }
            }
            BaseMeasure::Mrr => UnitValue {
                value: mrr(&relevance()),
                note: None,
            },
            BaseMeasure::Bpref => flagged(bpref(&relevance()), "no relevant documents; scored 0"),
            BaseMeasure::Recall => flagged(
                recall_at_k(&relevance(), k).expect("cutoff within list"),
                "no relevant documents; scored 0",
            ),
            BaseMeasure::F1 => flagged(
                f1(&credibility()),
                "precision or recall undefined; scored 0",
            ),
            BaseMeasure::G => flagged(
                g_measure(&credibility()),
                "precision or recall undefined; scored 0",
            ),
        }
    }
}

impl fmt::Display for BaseMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseMeasure::Nlre => f.write_str("nlre"),
            BaseMeasure::Ngre => f.write_str("ngre"),
            BaseMeasure::Nwcs => f.write_str("nwcs"),
            BaseMeasure::Ndcg => f.write_str("ndcg"),
            BaseMeasure::Ap => f.write_str("ap"),
            BaseMeasure::PrecisionAt(None) => f.write_str("p@k"),
            BaseMeasure::PrecisionAt(Some(k)) => write!(f, "p@{k}"),
            BaseMeasure::Mrr => f.write_str("mrr"),
            BaseMeasure::Bpref => f.write_str("bpref"),
            BaseMeasure::Recall => f.write_str("recall"),
            BaseMeasure::F1 => f.write_str("f1"),
            BaseMeasure::G => f.write_str("g"),
        }
    }
}

impl FromStr for BaseMeasure {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        let name = s.trim().to_ascii_lowercase();
        let m = match name.as_str() {
            "nlre" => BaseMeasure::Nlre,
            "ngre" => BaseMeasure::Ngre,
            "nwcs" => BaseMeasure::Nwcs,
            "ndcg" => BaseMeasure::Ndcg,
            "ap" | "map" => BaseMeasure::Ap,
            "p@k" => BaseMeasure::PrecisionAt(None),
            "mrr" => BaseMeasure::Mrr,
            "bpref" => BaseMeasure::Bpref,
            "recall" => BaseMeasure::Recall,
            "f1" | "f-1" => BaseMeasure::F1,
            "g" => BaseMeasure::G,
            other => match other.strip_prefix("p@").map(str::parse::<usize>) {
                Some(Ok(k)) if k >= 1 => BaseMeasure::PrecisionAt(Some(k)),
                _ => return Err(EvalError::Config(format!("unknown measure `{}`", s.trim()))),
            },
        };
        Ok(m)
    }
}

/// A requested measure: a single measure or an aggregation of a
/// relevance-only and a credibility-only one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureSpec {
    Single(BaseMeasure),
    Cam {
        relevance: BaseMeasure,
        credibility: BaseMeasure,
    },
    Wham {
        relevance: BaseMeasure,
        credibility: BaseMeasure,
    },
}

/// One measure value for one unit, with an optional degeneracy note.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitValue {
    pub value: f64,
    pub note: Option<String>,
}

impl MeasureSpec {
    pub fn compute(&self, unit: &EvalUnit, config: &MeasureConfig) -> UnitValue {
        match *self {
            MeasureSpec::Single(m) => m.compute(unit, config),
            MeasureSpec::Cam {
                relevance,
                credibility,
            }
            | MeasureSpec::Wham {
                relevance,
                credibility,
            } => {
                let r = relevance.compute(unit, config);
                let c = credibility.compute(unit, config);
                let input = AggregationInput::new(r.value, c.value);
                let value = if matches!(self, MeasureSpec::Cam { .. }) {
                    cam(input, config.lambda)
                } else {
                    wham(input, config.lambda)
                };
                let note = match (r.note, c.note) {
                    (None, None) => None,
                    (a, b) => Some(a.into_iter().chain(b).collect::<Vec<_>>().join("; ")),
                };
                UnitValue { value, note }
            }
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::Single(m) => write!(f, "{m}"),
            MeasureSpec::Cam {
                relevance,
                credibility,
            } => write!(f, "cam:{relevance}+{credibility}"),
            MeasureSpec::Wham {
                relevance,
                credibility,
            } => write!(f, "wham:{relevance}+{credibility}"),
        }
    }
}

impl FromStr for MeasureSpec {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let lower = trimmed.to_ascii_lowercase();
        let aggregate = |body: &str| -> Result<(BaseMeasure, BaseMeasure)> {
            let (r, c) = body.split_once('+').ok_or_else(|| {
                EvalError::Config(format!(
                    "`{trimmed}` must have the form name:<relevance>+<credibility>"
                ))
            })?;
            let (r, c): (BaseMeasure, BaseMeasure) = (r.parse()?, c.parse()?);
            if r.kind() != MeasureKind::RelevanceOnly {
                return Err(EvalError::Config(format!(
                    "`{trimmed}`: `{r}` is not a relevance-only measure"
                )));
            }
            if c.kind() != MeasureKind::CredibilityOnly {
                return Err(EvalError::Config(format!(
                    "`{trimmed}`: `{c}` is not a credibility-only measure"
                )));
            }
            Ok((r, c))
        };
        if let Some(body) = lower.strip_prefix("cam:") {
            let (relevance, credibility) = aggregate(body)?;
            Ok(MeasureSpec::Cam {
                relevance,
                credibility,
            })
        } else if let Some(body) = lower.strip_prefix("wham:") {
            let (relevance, credibility) = aggregate(body)?;
            Ok(MeasureSpec::Wham {
                relevance,
                credibility,
            })
        } else {
            Ok(MeasureSpec::Single(trimmed.parse()?))
        }
    }
}

/// Parses a comma-separated measure list, dropping repeats.
pub fn parse_measure_list(list: &str) -> Result<Vec<MeasureSpec>> {
    let mut specs: Vec<MeasureSpec> = Vec::new();
    for item in list.split(',').filter(|s| !s.trim().is_empty()) {
        let spec: MeasureSpec = item.parse()?;
        if !specs.contains(&spec) {
            specs.push(spec);
        }
    }
    if specs.is_empty() {
        return Err(EvalError::Config("no measures requested".into()));
    }
    Ok(specs)
}
