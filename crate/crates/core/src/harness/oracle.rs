//! Exhaustive search for the largest LRE and GRE a ranking of length `n` can
//! incur, used to check the closed-form normalisers.
//!
//! The input order is fixed; every ideal relevance ordering is paired with
//! every ideal credibility ordering, giving `(n!)^2` pairs.

use rayon::prelude::*;

use crate::error::{EvalError, Result};
use crate::rank_errors::ErrorVector;
use crate::type_one::{c_gre, c_lre, discount};

pub const ORACLE_MAX_N: usize = 7;

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (1..=n).collect();
    let mut all = vec![current.clone()];
    // next lexicographic permutation
    while let Some(i) = (1..current.len())
        .rev()
        .find(|&i| current[i - 1] < current[i])
    {
        let pivot = i - 1;
        let j = (i..current.len())
            .rev()
            .find(|&j| current[j] > current[pivot])
            .expect("a larger element exists right of the pivot");
        current.swap(pivot, j);
        current[i..].reverse();
        all.push(current.clone());
    }
    all
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub n: usize,
    pub mu: f64,
    pub nu: f64,
    pub pairs: usize,
    pub max_lre: f64,
    /// Ideal (relevance, credibility) positions of the input documents attaining `max_lre`.
    pub lre_witness: (Vec<usize>, Vec<usize>),
    pub c_lre: f64,
    pub max_gre: f64,
    pub gre_witness: (Vec<usize>, Vec<usize>),
    pub c_gre: f64,
}

impl OracleResult {
    /// No pair exceeds the normaliser by more than `tol`.
    pub fn lre_bounded(&self, tol: f64) -> bool {
        self.max_lre <= self.c_lre + tol
    }

    pub fn gre_bounded(&self, tol: f64) -> bool {
        self.max_gre <= self.c_gre + tol
    }

    /// The normaliser is reached by some pair, within `tol`.
    pub fn lre_attained(&self, tol: f64) -> bool {
        (self.max_lre - self.c_lre).abs() <= tol
    }

    pub fn gre_attained(&self, tol: f64) -> bool {
        (self.max_gre - self.c_gre).abs() <= tol
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.lre_bounded(tol)
            && self.gre_bounded(tol)
            && self.lre_attained(tol)
            && self.gre_attained(tol)
    }
}

#[derive(Clone, Copy)]
struct Best {
    value: f64,
    r: usize,
    c: usize,
}

impl Best {
    fn none() -> Self {
        Best {
            value: f64::NEG_INFINITY,
            r: usize::MAX,
            c: usize::MAX,
        }
    }

    /// Larger value wins; ties go to the lexicographically first pair.
    fn pick(self, other: Best) -> Best {
        if other.value > self.value
            || (other.value == self.value && (other.r, other.c) < (self.r, self.c))
        {
            other
        } else {
            self
        }
    }
}

/// Exact maxima of LRE and GRE over all ideal-position pairs for `2 <= n <= 7`.
pub fn oracle_max_error(n: usize, mu: f64, nu: f64) -> Result<OracleResult> {
    if !(2..=ORACLE_MAX_N).contains(&n) {
        return Err(EvalError::Argument(format!(
            "oracle supports 2 <= n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    if mu < 0.0 || nu < 0.0 || mu + nu <= 0.0 || !mu.is_finite() || !nu.is_finite() {
        return Err(EvalError::Argument(format!(
            "mu ({mu}) and nu ({nu}) must be non-negative with a positive sum"
        )));
    }
    let perms = permutations(n);
    let errors: Vec<Vec<f64>> = perms
        .iter()
        .map(|p| {
            ErrorVector::from_positions(p)
                .values()
                .iter()
                .map(|&e| e as f64)
                .collect()
        })
        .collect();
    let discounts: Vec<f64> = (1..n).map(discount).collect();

    let (lre_best, gre_best) = errors
        .par_iter()
        .enumerate()
        .map(|(ri, er)| {
            let mut lre_best = Best::none();
            let mut gre_best = Best::none();
            for (ci, ec) in errors.iter().enumerate() {
                let mut lre = 0.0;
                let mut sum_r = 0.0;
                let mut sum_c = 0.0;
                for i in 0..n - 1 {
                    let d = discounts[i];
                    lre += d * ((mu + er[i]) * (nu + ec[i]) - mu * nu);
                    sum_r += d * er[i];
                    sum_c += d * ec[i];
                }
                let gre = (1.0 + mu * sum_r) * (1.0 + nu * sum_c) - 1.0;
                lre_best = lre_best.pick(Best {
                    value: lre,
                    r: ri,
                    c: ci,
                });
                gre_best = gre_best.pick(Best {
                    value: gre,
                    r: ri,
                    c: ci,
                });
            }
            (lre_best, gre_best)
        })
        .reduce(
            || (Best::none(), Best::none()),
            |a, b| (a.0.pick(b.0), a.1.pick(b.1)),
        );

    let witness = |b: Best| (perms[b.r].clone(), perms[b.c].clone());
    Ok(OracleResult {
        n,
        mu,
        nu,
        pairs: perms.len() * perms.len(),
        max_lre: lre_best.value,
        lre_witness: witness(lre_best),
        c_lre: c_lre(n, mu, nu),
        max_gre: gre_best.value,
        gre_witness: witness(gre_best),
        c_gre: c_gre(n, mu, nu),
    })
}

/// Runs the oracle for every `n` and `(mu, nu)` combination.
pub fn oracle_sweep(ns: &[usize], weights: &[(f64, f64)]) -> Result<Vec<OracleResult>> {
    let mut out = Vec::with_capacity(ns.len() * weights.len());
    for &n in ns {
        for &(mu, nu) in weights {
            out.push(oracle_max_error(n, mu, nu)?);
        }
    }
    Ok(out)
}
