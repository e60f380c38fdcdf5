//! Judged-ranking data model shared by every measure.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};

/// A graded assessment on the 1 to 4 scale (1 = not at all, 4 = completely).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u8")]
pub struct Grade(u8);

impl Grade {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 4;

    pub fn new(value: i64) -> Result<Self> {
        if (Self::MIN as i64..=Self::MAX as i64).contains(&value) {
            Ok(Grade(value as u8))
        } else {
            Err(EvalError::Argument(format!(
                "grade {value} is outside the {}..={} scale",
                Self::MIN,
                Self::MAX
            )))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl TryFrom<i64> for Grade {
    type Error = EvalError;

    fn try_from(value: i64) -> Result<Self> {
        Grade::new(value)
    }
}

impl From<Grade> for u8 {
    fn from(g: Grade) -> u8 {
        g.0
    }
}

impl FromStr for Grade {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| EvalError::Argument(format!("grade `{s}` is not an integer")))?;
        Grade::new(v)
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Relevance,
    Credibility,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Relevance => f.write_str("relevance"),
            Dimension::Credibility => f.write_str("credibility"),
        }
    }
}

/// Grade given to a ranked document that has no judgment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnjudgedPolicy {
    /// Treated as grade 0: non-relevant, non-credible, ranked last in ideal orderings.
    #[default]
    Zero,
    Grade(Grade),
}

impl UnjudgedPolicy {
    pub fn value(self) -> u8 {
        match self {
            UnjudgedPolicy::Zero => 0,
            UnjudgedPolicy::Grade(g) => g.value(),
        }
    }
}

impl FromStr for UnjudgedPolicy {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" | "zero" => Ok(UnjudgedPolicy::Zero),
            other => Ok(UnjudgedPolicy::Grade(other.parse()?)),
        }
    }
}

/// Gain function applied to graded labels by NDCG.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gain {
    #[default]
    Linear,
    /// `2^g - 1`
    Exponential,
}

impl Gain {
    pub fn apply(self, grade: f64) -> f64 {
        match self {
            Gain::Linear => grade,
            Gain::Exponential => grade.exp2() - 1.0,
        }
    }
}

impl FromStr for Gain {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(Gain::Linear),
            "exponential" | "exp" => Ok(Gain::Exponential),
            other => Err(EvalError::Config(format!("unknown gain `{other}`"))),
        }
    }
}

/// Parameters shared by all measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureConfig {
    /// Relevance weight of the rank-error measures.
    pub mu: f64,
    /// Credibility weight of the rank-error measures.
    pub nu: f64,
    /// Relevance share in NWCS, CAM and WHAM.
    pub lambda: f64,
    pub cutoff_k: usize,
    /// Grades at or above this value binarize to 1.
    pub binary_threshold: u8,
    pub unjudged: UnjudgedPolicy,
    pub gain: Gain,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            mu: 0.5,
            nu: 0.5,
            lambda: 0.5,
            cutoff_k: 5,
            binary_threshold: 3,
            unjudged: UnjudgedPolicy::Zero,
            gain: Gain::Linear,
        }
    }
}

impl MeasureConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.mu, self.nu, self.lambda]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(EvalError::Config("mu, nu and lambda must be finite".into()));
        }
        if self.mu < 0.0 || self.nu < 0.0 {
            return Err(EvalError::Config(format!(
                "mu ({}) and nu ({}) must be non-negative",
                self.mu, self.nu
            )));
        }
        if self.mu + self.nu <= 0.0 {
            return Err(EvalError::Config("mu + nu must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(EvalError::Config(format!(
                "lambda ({}) must lie in [0, 1]",
                self.lambda
            )));
        }
        if self.cutoff_k == 0 {
            return Err(EvalError::Config("cutoff k must be at least 1".into()));
        }
        Ok(())
    }
}

/// One assessor's grades for one document under one query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Judgment {
    pub query_id: String,
    pub assessor_id: String,
    pub doc_id: String,
    pub relevance: Grade,
    pub credibility: Grade,
}

type GroupKey = (String, String);

/// Judgments keyed by `(query, assessor, doc)`; each key appears at most once.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JudgmentSet {
    groups: BTreeMap<GroupKey, BTreeMap<String, Judgment>>,
}

impl JudgmentSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, judgment: Judgment) -> Result<()> {
        let key = (judgment.query_id.clone(), judgment.assessor_id.clone());
        let group = self.groups.entry(key).or_default();
        if group.contains_key(&judgment.doc_id) {
            return Err(EvalError::Structural(format!(
                "duplicate judgment for query `{}`, assessor `{}`, doc `{}`",
                judgment.query_id, judgment.assessor_id, judgment.doc_id
            )));
        }
        group.insert(judgment.doc_id.clone(), judgment);
        Ok(())
    }

    pub fn get(&self, query_id: &str, assessor_id: &str, doc_id: &str) -> Option<&Judgment> {
        self.groups
            .get(&(query_id.to_string(), assessor_id.to_string()))
            .and_then(|g| g.get(doc_id))
    }

    /// All judgments of one `(query, assessor)` pair, ordered by doc id.
    pub fn pool(&self, query_id: &str, assessor_id: &str) -> impl Iterator<Item = &Judgment> {
        self.groups
            .get(&(query_id.to_string(), assessor_id.to_string()))
            .into_iter()
            .flat_map(|g| g.values())
    }

    /// Assessors that judged at least one document for `query_id`.
    pub fn assessors(&self, query_id: &str) -> Vec<&str> {
        self.groups
            .keys()
            .filter(|(q, _)| q == query_id)
            .map(|(_, a)| a.as_str())
            .collect()
    }

    pub fn queries(&self) -> Vec<&str> {
        let mut qs: Vec<&str> = self.groups.keys().map(|(q, _)| q.as_str()).collect();
        qs.dedup();
        qs
    }

    pub fn len(&self) -> usize {
        self.groups.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl FromIterator<Judgment> for Result<JudgmentSet> {
    fn from_iter<I: IntoIterator<Item = Judgment>>(iter: I) -> Self {
        let mut set = JudgmentSet::new();
        for j in iter {
            set.insert(j)?;
        }
        Ok(set)
    }
}

/// The ranking under evaluation for one `(query, assessor)` unit; `docs[0]` is rank 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedList {
    pub query_id: String,
    pub assessor_id: String,
    pub docs: Vec<String>,
}

impl RankedList {
    pub fn new<Q, A, I, D>(query_id: Q, assessor_id: A, docs: I) -> Self
    where
        Q: Into<String>,
        A: Into<String>,
        I: IntoIterator<Item = D>,
        D: Into<String>,
    {
        RankedList {
            query_id: query_id.into(),
            assessor_id: assessor_id.into(),
            docs: docs.into_iter().map(Into::into).collect(),
        }
    }
}

/// A ranked document with its grades resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitDoc {
    pub doc_id: String,
    /// 1..=4 when judged, otherwise the unjudged policy value.
    pub relevance: u8,
    pub credibility: u8,
    pub judged: bool,
}

impl UnitDoc {
    pub fn grade(&self, dimension: Dimension) -> u8 {
        match dimension {
            Dimension::Relevance => self.relevance,
            Dimension::Credibility => self.credibility,
        }
    }
}

/// A validated `(query, assessor)` evaluation unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalUnit {
    pub query_id: String,
    pub assessor_id: String,
    docs: Vec<UnitDoc>,
    /// Every judgment the assessor made for the query, ranked or not.
    pool: Vec<Judgment>,
}

impl EvalUnit {
    pub fn docs(&self) -> &[UnitDoc] {
        &self.docs
    }

    pub fn pool(&self) -> &[Judgment] {
        &self.pool
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn doc_ids(&self) -> Vec<&str> {
        self.docs.iter().map(|d| d.doc_id.as_str()).collect()
    }

    /// Grades of one dimension in input-rank order.
    pub fn grades(&self, dimension: Dimension) -> Vec<u8> {
        self.docs.iter().map(|d| d.grade(dimension)).collect()
    }

    pub fn scores(&self, dimension: Dimension) -> Vec<f64> {
        self.docs
            .iter()
            .map(|d| d.grade(dimension) as f64)
            .collect()
    }

    pub fn grade_of(&self, doc_id: &str, dimension: Dimension) -> Result<u8> {
        self.docs
            .iter()
            .find(|d| d.doc_id == doc_id)
            .map(|d| d.grade(dimension))
            .ok_or_else(|| EvalError::UnknownDoc {
                doc_id: doc_id.to_string(),
            })
    }

    pub fn ranked_list(&self) -> RankedList {
        RankedList::new(
            self.query_id.clone(),
            self.assessor_id.clone(),
            self.docs.iter().map(|d| d.doc_id.clone()),
        )
    }

    pub fn judgments(&self) -> JudgmentSet {
        let mut set = JudgmentSet::new();
        for j in &self.pool {
            // pool entries are unique by construction
            set.insert(j.clone()).expect("unit pool is duplicate-free");
        }
        set
    }
}

/// Joins a ranked list with its judgments, resolving every ranked document to a
/// grade pair. Documents without a judgment take the `unjudged` policy grade.
pub fn validate_unit(
    list: &RankedList,
    judgments: &JudgmentSet,
    unjudged: UnjudgedPolicy,
) -> Result<EvalUnit> {
    if list.docs.is_empty() {
        return Err(EvalError::Structural(format!(
            "ranked list for query `{}`, assessor `{}` is empty",
            list.query_id, list.assessor_id
        )));
    }
    let mut seen = HashSet::with_capacity(list.docs.len());
    for doc in &list.docs {
        if !seen.insert(doc.as_str()) {
            return Err(EvalError::Structural(format!(
                "doc `{doc}` appears more than once in the ranking for query `{}`, assessor `{}`",
                list.query_id, list.assessor_id
            )));
        }
    }

    let fallback = unjudged.value();
    let docs = list
        .docs
        .iter()
        .map(
            |doc| match judgments.get(&list.query_id, &list.assessor_id, doc) {
                Some(j) => UnitDoc {
                    doc_id: doc.clone(),
                    relevance: j.relevance.value(),
                    credibility: j.credibility.value(),
                    judged: true,
                },
                None => UnitDoc {
                    doc_id: doc.clone(),
                    relevance: fallback,
                    credibility: fallback,
                    judged: false,
                },
            },
        )
        .collect();
    let pool = judgments
        .pool(&list.query_id, &list.assessor_id)
        .cloned()
        .collect();

    Ok(EvalUnit {
        query_id: list.query_id.clone(),
        assessor_id: list.assessor_id.clone(),
        docs,
        pool,
    })
}

pub fn grade_of(unit: &EvalUnit, doc_id: &str, dimension: Dimension) -> Result<u8> {
    unit.grade_of(doc_id, dimension)
}
