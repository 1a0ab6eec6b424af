//! Rank aggregation: Borda, WCS, content-based WCS, and the Oracle baseline.
//!
//! All aggregators consume total [`RankList`]s over the same sentences and
//! return a new total ranking. WCS and C-WCS differ only in how they weight
//! the candidate systems:
//!
//! * WCS minimizes `(1-λ) Σ wᵢ ‖r* - rᵢ‖² + λ‖w‖²` over the simplex and the
//!   aggregate rank vector `r*` by alternating exact minimization.
//! * C-WCS weights system `i` by its mean ROUGE-1 recall against the other
//!   candidates' summaries, then ranks by `Σ wᵢ σᵢ(s)` with
//!   `σᵢ(s) = 1 - (rankᵢ(s) - 1)/(N - 1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Token;
use crate::rouge::{pairwise_sim_matrix, rouge_n_recall, RougeScore};
use crate::summarizers::RankList;
use crate::{Error, Result};

const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// Non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("weight vector is empty".into()));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "weights must be finite and non-negative: {weights:?}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
            return Err(Error::InvalidArgument(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self(weights))
    }

    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("weight vector is empty".into()));
        }
        Ok(Self(vec![1.0 / k as f64; k]))
    }

    /// Weight one on system `i`.
    pub fn vertex(k: usize, i: usize) -> Result<Self> {
        let mut w = vec![0.0; k];
        *w.get_mut(i)
            .ok_or_else(|| Error::InvalidArgument(format!("vertex {i} out of range {k}")))? = 1.0;
        Ok(Self(w))
    }

    /// Scales non-negative `raw` to sum one; all zeros become uniform.
    pub fn normalized(raw: &[f64]) -> Result<Self> {
        if raw.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "weights must be finite and non-negative: {raw:?}"
            )));
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Self::uniform(raw.len());
        }
        Ok(Self(raw.iter().map(|w| w / sum).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn squared_norm(&self) -> f64 {
        self.0.iter().map(|w| w * w).sum()
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

/// Euclidean projection onto the probability simplex (sort-and-threshold).
pub fn project_simplex(y: &[f64]) -> Result<WeightVector> {
    if y.is_empty() {
        return Err(Error::InvalidArgument("cannot project an empty vector".into()));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite input {y:?}")));
    }
    let mut sorted = y.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut tau = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumulative += u;
        let candidate = (cumulative - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            tau = candidate;
        }
    }
    let mut w: Vec<f64> = y.iter().map(|v| (v - tau).max(0.0)).collect();
    let sum: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= sum);
    Ok(WeightVector(w))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregateMethod {
    Borda,
    Wcs,
    Cwcs,
    Oracle,
}

impl AggregateMethod {
    pub const ALL: [AggregateMethod; 4] = [
        AggregateMethod::Borda,
        AggregateMethod::Wcs,
        AggregateMethod::Cwcs,
        AggregateMethod::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Borda => "borda",
            Self::Wcs => "wcs",
            Self::Cwcs => "cwcs",
            Self::Oracle => "oracle",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Self::Borda => "Borda",
            Self::Wcs => "WCS",
            Self::Cwcs => "C-WCS",
            Self::Oracle => "Oracle",
        }
    }
}

impl fmt::Display for AggregateMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AggregateMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown aggregator `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWcsConfig")]
pub struct WcsConfig {
    lambda: f64,
    tol: f64,
    max_iter: usize,
}

#[derive(Deserialize)]
#[serde(default)]
struct RawWcsConfig {
    lambda: f64,
    tol: f64,
    max_iter: usize,
}

impl Default for RawWcsConfig {
    fn default() -> Self {
        let d = WcsConfig::default();
        Self {
            lambda: d.lambda,
            tol: d.tol,
            max_iter: d.max_iter,
        }
    }
}

impl TryFrom<RawWcsConfig> for WcsConfig {
    type Error = Error;

    fn try_from(raw: RawWcsConfig) -> Result<Self> {
        Self::new(raw.lambda, raw.tol, raw.max_iter)
    }
}

impl Default for WcsConfig {
    fn default() -> Self {
        Self {
            lambda: 0.5,
            tol: 1e-8,
            max_iter: 500,
        }
    }
}

impl WcsConfig {
    /// `lambda` must lie in `[0, 1)`; at 1 the rank term vanishes.
    pub fn new(lambda: f64, tol: f64, max_iter: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&lambda) {
            return Err(Error::InvalidConfig(format!(
                "lambda must lie in [0, 1), got {lambda}"
            )));
        }
        if !(tol >= 0.0 && tol.is_finite()) {
            return Err(Error::InvalidConfig(format!("tol must be non-negative, got {tol}")));
        }
        if max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(Self {
            lambda,
            tol,
            max_iter,
        })
    }

    pub fn with_lambda(lambda: f64) -> Result<Self> {
        let d = Self::default();
        Self::new(lambda, d.tol, d.max_iter)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WcsDiagnostics {
    pub iterations: usize,
    pub objective: f64,
    pub converged: bool,
    /// Objective of the winning descent, after initialization and after each
    /// iteration.
    pub trace: Vec<f64>,
    /// Aggregate rank vector `r*` (lower is better).
    pub aggregate_ranks: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateResult {
    pub method: AggregateMethod,
    pub rank_list: RankList,
    /// Present for WCS and C-WCS.
    pub weights: Option<WeightVector>,
    /// Present for WCS.
    pub wcs: Option<WcsDiagnostics>,
}

impl AggregateResult {
    pub fn iterations(&self) -> Option<usize> {
        self.wcs.as_ref().map(|d| d.iterations)
    }

    pub fn objective(&self) -> Option<f64> {
        self.wcs.as_ref().map(|d| d.objective)
    }
}

fn common_length(rank_lists: &[RankList]) -> Result<usize> {
    let first = rank_lists
        .first()
        .ok_or_else(|| Error::InvalidArgument("no rank lists to aggregate".into()))?;
    let n = first.len();
    for r in rank_lists {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
    }
    Ok(n)
}

/// Orders sentences by mean rank across the lists. Stored scores are the
/// negated mean rank.
pub fn borda_aggregate(rank_lists: &[RankList]) -> Result<AggregateResult> {
    let n = common_length(rank_lists)?;
    let k = rank_lists.len() as f64;
    let scores = (0..n)
        .map(|s| {
            let rank_sum: usize = rank_lists.iter().map(|r| r.ranks[s]).sum();
            -(rank_sum as f64) / k
        })
        .collect();
    Ok(AggregateResult {
        method: AggregateMethod::Borda,
        rank_list: RankList::from_scores(AggregateMethod::Borda.as_str(), scores),
        weights: None,
        wcs: None,
    })
}

/// Ranks scaled to `[0, 1]` (best = 0).
fn normalized_ranks(rank_list: &RankList) -> Vec<f64> {
    let n = rank_list.len();
    if n <= 1 {
        return vec![0.0; n];
    }
    let span = (n - 1) as f64;
    rank_list.ranks.iter().map(|&r| (r - 1) as f64 / span).collect()
}

struct WcsProblem {
    ranks: Vec<Vec<f64>>,
    lambda: f64,
}

impl WcsProblem {
    fn aggregate(&self, w: &WeightVector) -> Vec<f64> {
        let n = self.ranks[0].len();
        let mut out = vec![0.0; n];
        for (wi, r) in w.as_slice().iter().zip(&self.ranks) {
            for (o, x) in out.iter_mut().zip(r) {
                *o += wi * x;
            }
        }
        out
    }

    fn distances(&self, aggregate: &[f64]) -> Vec<f64> {
        self.ranks
            .iter()
            .map(|r| r.iter().zip(aggregate).map(|(a, b)| (a - b) * (a - b)).sum())
            .collect()
    }

    fn objective(&self, w: &WeightVector, distances: &[f64]) -> f64 {
        let fit: f64 = w.as_slice().iter().zip(distances).map(|(w, d)| w * d).sum();
        (1.0 - self.lambda) * fit + self.lambda * w.squared_norm()
    }

    /// Exact minimizer over the simplex for fixed distances.
    fn best_weights(&self, distances: &[f64]) -> Result<WeightVector> {
        if self.lambda == 0.0 {
            let best = (0..distances.len())
                .min_by(|&a, &b| distances[a].total_cmp(&distances[b]).then(a.cmp(&b)))
                .expect("at least two systems");
            return WeightVector::vertex(distances.len(), best);
        }
        let scale = -(1.0 - self.lambda) / (2.0 * self.lambda);
        let target: Vec<f64> = distances.iter().map(|d| scale * d).collect();
        project_simplex(&target)
    }
}

struct Descent {
    weights: WeightVector,
    aggregate: Vec<f64>,
    objective: f64,
    trace: Vec<f64>,
    iterations: usize,
    converged: bool,
}

impl WcsProblem {
    fn descend(&self, start: WeightVector, config: &WcsConfig) -> Result<Descent> {
        let mut weights = start;
        let mut aggregate = self.aggregate(&weights);
        let mut objective = self.objective(&weights, &self.distances(&aggregate));
        let mut trace = vec![objective];
        let mut converged = false;
        let mut iterations = 0;
        while iterations < config.max_iter {
            iterations += 1;
            let next_weights = self.best_weights(&self.distances(&aggregate))?;
            let next_aggregate = self.aggregate(&next_weights);
            let next_objective = self.objective(&next_weights, &self.distances(&next_aggregate));
            let decrease = objective - next_objective;
            if next_objective <= objective {
                weights = next_weights;
                aggregate = next_aggregate;
                objective = next_objective;
            }
            trace.push(objective);
            if decrease <= config.tol {
                converged = true;
                break;
            }
        }
        Ok(Descent {
            weights,
            aggregate,
            objective,
            trace,
            iterations,
            converged,
        })
    }
}

/// Weighted consensus by alternating minimization. Each descent stops once an
/// iteration lowers the objective by at most `tol`. The objective is not
/// convex in `w`, so descents are started from the uniform weights and from
/// every vertex of the simplex; the lowest final objective wins, earlier
/// starts winning ties.
pub fn wcs_aggregate(rank_lists: &[RankList], config: &WcsConfig) -> Result<AggregateResult> {
    common_length(rank_lists)?;
    let k = rank_lists.len();
    if k < 2 {
        return Err(Error::PeersRequired(k));
    }
    let problem = WcsProblem {
        ranks: rank_lists.iter().map(normalized_ranks).collect(),
        lambda: config.lambda,
    };
    let mut best = problem.descend(WeightVector::uniform(k)?, config)?;
    for i in 0..k {
        let candidate = problem.descend(WeightVector::vertex(k, i)?, config)?;
        if candidate.objective < best.objective - 1e-12 {
            best = candidate;
        }
    }
    let Descent {
        weights,
        aggregate,
        objective,
        trace,
        iterations,
        converged,
    } = best;
    let rank_list = RankList::from_scores(
        AggregateMethod::Wcs.as_str(),
        aggregate.iter().map(|r| -r).collect(),
    );
    Ok(AggregateResult {
        method: AggregateMethod::Wcs,
        rank_list,
        weights: Some(weights),
        wcs: Some(WcsDiagnostics {
            iterations,
            objective,
            converged,
            trace,
            aggregate_ranks: aggregate,
        }),
    })
}

/// Peer-similarity statistics behind the content-based weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoRelevance {
    /// `similarity[i][j]`: ROUGE-1 recall of summary `i` against summary `j`.
    pub similarity: Vec<Vec<f64>>,
    /// Mean similarity of each summary to its peers (unnormalized weights).
    pub raw_weights: Vec<f64>,
}

impl PseudoRelevance {
    pub fn from_summaries(summaries: &[Vec<Vec<Token>>]) -> Result<Self> {
        if summaries.len() < 2 {
            return Err(Error::PeersRequired(summaries.len()));
        }
        let similarity = pairwise_sim_matrix(summaries)?;
        let peers = (summaries.len() - 1) as f64;
        let raw_weights = similarity
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, s)| s)
                    .sum::<f64>()
                    / peers
            })
            .collect();
        Ok(Self {
            similarity,
            raw_weights,
        })
    }

    pub fn weights(&self) -> Result<WeightVector> {
        WeightVector::normalized(&self.raw_weights)
    }
}

/// Content-based weights: each candidate's mean ROUGE-1 recall against its
/// peers, normalized to the simplex.
pub fn cwcs_weights(summaries: &[Vec<Vec<Token>>]) -> Result<WeightVector> {
    PseudoRelevance::from_summaries(summaries)?.weights()
}

pub fn cwcs_aggregate(rank_lists: &[RankList], weights: &WeightVector) -> Result<AggregateResult> {
    let n = common_length(rank_lists)?;
    if weights.len() != rank_lists.len() {
        return Err(Error::DimensionMismatch {
            expected: rank_lists.len(),
            found: weights.len(),
        });
    }
    let sigma = |rank: usize| {
        if n == 1 {
            1.0
        } else {
            1.0 - (rank - 1) as f64 / (n - 1) as f64
        }
    };
    let scores = (0..n)
        .map(|s| {
            weights
                .as_slice()
                .iter()
                .zip(rank_lists)
                .map(|(w, r)| w * sigma(r.ranks[s]))
                .sum()
        })
        .collect();
    Ok(AggregateResult {
        method: AggregateMethod::Cwcs,
        rank_list: RankList::from_scores(AggregateMethod::Cwcs.as_str(), scores),
        weights: Some(weights.clone()),
        wcs: None,
    })
}

/// Picks the candidate with the highest ROUGE-`n` recall against the
/// references; ties go to the smaller index.
pub fn oracle_select(
    candidates: &[Vec<Vec<Token>>],
    references: &[Vec<Vec<Token>>],
    n: usize,
) -> Result<(usize, RougeScore)> {
    if references.is_empty() {
        return Err(Error::NoReferences);
    }
    let mut best: Option<(usize, RougeScore)> = None;
    for (i, c) in candidates.iter().enumerate() {
        let score = rouge_n_recall(c, references, n)?;
        if best.as_ref().is_none_or(|(_, b)| score.recall > b.recall) {
            best = Some((i, score));
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("no candidate summaries".into()))
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn permutation(n: usize) -> impl Strategy<Value = RankList> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|r| RankList::from_ranks("p", r).unwrap())
    }

    fn ensemble() -> impl Strategy<Value = Vec<RankList>> {
        (1usize..8, 1usize..6).prop_flat_map(|(n, k)| proptest::collection::vec(permutation(n), k))
    }

    proptest! {
        #[test]
        fn borda_invariant_under_list_order(mut lists in ensemble(), seed in any::<u64>()) {
            let before = borda_aggregate(&lists).unwrap().rank_list.ranks;
            let k = lists.len();
            lists.rotate_left((seed as usize) % k);
            prop_assert_eq!(borda_aggregate(&lists).unwrap().rank_list.ranks, before);
        }

        #[test]
        fn projection_lands_on_simplex(y in proptest::collection::vec(-5.0f64..5.0, 1..8)) {
            let w = project_simplex(&y).unwrap();
            let sum: f64 = w.as_slice().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
            prop_assert!(w.as_slice().iter().all(|&x| x >= 0.0));
        }

        #[test]
        fn wcs_weights_on_simplex_and_monotone(lists in ensemble(), lambda in 0.01f64..0.99) {
            prop_assume!(lists.len() >= 2);
            let r = wcs_aggregate(&lists, &WcsConfig::with_lambda(lambda).unwrap()).unwrap();
            let w = r.weights.unwrap();
            prop_assert!((w.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-9);
            let trace = r.wcs.unwrap().trace;
            for pair in trace.windows(2) {
                prop_assert!(pair[1] <= pair[0] + 1e-12);
            }
        }

        #[test]
        fn duplicate_system_gains_weight(a in "[a-d ]{1,20}", b in "[w-z ]{1,20}") {
            let t = |s: &str| vec![s.split_whitespace().map(String::from).collect::<Vec<_>>()];
            prop_assume!(!t(&a)[0].is_empty() && !t(&b)[0].is_empty());
            let p = PseudoRelevance::from_summaries(&[t(&a), t(&a), t(&b)]).unwrap();
            prop_assert!(p.raw_weights[0] >= p.raw_weights[2]);
        }
    }
}
