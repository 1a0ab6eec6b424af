//! The six candidate rankers and budgeted summary extraction.
//!
//! Every ranker returns a total [`RankList`] over the cluster's sentences.
//! Ties are always broken in favour of the smaller sentence index.

mod extract;
mod graph;
mod greedykl;
mod lexical;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::DocumentCluster;
use crate::features::TermCounts;
use crate::{Error, Result};

pub use extract::{extract_summary, Summary};
pub use graph::{
    lexrank_rank, stationary_distribution, textrank_edge_weight, textrank_rank, PowerIteration,
};
pub use greedykl::greedykl_rank;
pub use lexical::{centroid_rank, freqsum_rank, log_likelihood_ratio, topic_words, topicsum_rank};

/// The candidate systems, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemId {
    LexRank,
    TextRank,
    Centroid,
    FreqSum,
    TopicSum,
    GreedyKl,
}

impl SystemId {
    pub const ALL: [SystemId; 6] = [
        SystemId::LexRank,
        SystemId::TextRank,
        SystemId::Centroid,
        SystemId::FreqSum,
        SystemId::TopicSum,
        SystemId::GreedyKl,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::LexRank => "lexrank",
            Self::TextRank => "textrank",
            Self::Centroid => "centroid",
            Self::FreqSum => "freqsum",
            Self::TopicSum => "topicsum",
            Self::GreedyKl => "greedykl",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Self::LexRank => "LexRank",
            Self::TextRank => "TextRank",
            Self::Centroid => "Centroid",
            Self::FreqSum => "FreqSum",
            Self::TopicSum => "TsSum",
            Self::GreedyKl => "Greedy-KL",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown system `{s}`")))
    }
}

/// Scores closer than this may compare equal when ranking.
pub const SCORE_RESOLUTION: f64 = 1e-12;

/// One system's scores over all sentences and the ranks derived from them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankList {
    pub system_id: String,
    /// Higher is better.
    pub scores: Vec<f64>,
    /// `ranks[i]` is the 1-based rank of sentence `i`.
    pub ranks: Vec<usize>,
}

impl RankList {
    /// Ranks by descending score; equal scores go to the smaller index.
    /// Scores are compared on a grid of [`SCORE_RESOLUTION`], so values that
    /// differ only by rounding tie. NaN scores rank last.
    pub fn from_scores(system_id: impl Into<String>, scores: Vec<f64>) -> Self {
        let key = |x: f64| {
            if x.is_nan() {
                f64::NEG_INFINITY
            } else {
                (x / SCORE_RESOLUTION).round()
            }
        };
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| key(scores[b]).total_cmp(&key(scores[a])).then(a.cmp(&b)));
        let mut ranks = vec![0; scores.len()];
        for (pos, &idx) in order.iter().enumerate() {
            ranks[idx] = pos + 1;
        }
        Self {
            system_id: system_id.into(),
            scores,
            ranks,
        }
    }

    /// Builds a list whose scores are `N - rank`, so the order follows `ranks`.
    pub fn from_ranks(system_id: impl Into<String>, ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidArgument(format!(
                    "ranks are not a permutation of 1..={n}"
                )));
            }
        }
        let scores = ranks.iter().map(|&r| (n - r) as f64).collect();
        Ok(Self {
            system_id: system_id.into(),
            scores,
            ranks,
        })
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Sentence indices from best to worst.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.ranks.len()];
        for (idx, &r) in self.ranks.iter().enumerate() {
            order[r - 1] = idx;
        }
        order
    }

    pub fn is_valid_permutation(&self) -> bool {
        let n = self.ranks.len();
        let mut seen = vec![false; n];
        self.scores.len() == n
            && self
                .ranks
                .iter()
                .all(|&r| r >= 1 && r <= n && !std::mem::replace(&mut seen[r - 1], true))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BudgetKind {
    Words,
    Bytes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthBudget {
    pub kind: BudgetKind,
    pub limit: usize,
}

impl LengthBudget {
    pub fn new(kind: BudgetKind, limit: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidConfig("budget limit must be positive".into()));
        }
        Ok(Self { kind, limit })
    }

    pub fn words(limit: usize) -> Result<Self> {
        Self::new(BudgetKind::Words, limit)
    }

    pub fn bytes(limit: usize) -> Result<Self> {
        Self::new(BudgetKind::Bytes, limit)
    }
}

impl Default for LengthBudget {
    fn default() -> Self {
        Self {
            kind: BudgetKind::Words,
            limit: 100,
        }
    }
}

impl fmt::Display for LengthBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            BudgetKind::Words => "words",
            BudgetKind::Bytes => "bytes",
        };
        write!(f, "{kind}:{}", self.limit)
    }
}

impl FromStr for LengthBudget {
    type Err = Error;

    /// Parses `words:100` or `bytes:665`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("invalid budget `{s}` (expected words:N or bytes:N)"));
        let (kind, limit) = s.split_once(':').ok_or_else(bad)?;
        let limit: usize = limit.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "words" => Self::words(limit),
            "bytes" => Self::bytes(limit),
            _ => Err(bad()),
        }
    }
}

impl Serialize for LengthBudget {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LengthBudget {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SummarizerConfig {
    /// LexRank cosine threshold for an edge.
    pub lexrank_threshold: f64,
    pub damping: f64,
    /// L1 tolerance between successive power-iteration iterates.
    pub power_iter_tol: f64,
    pub power_iter_max: usize,
    /// Log-likelihood-ratio cutoff for topic signature words.
    pub topic_llr_threshold: f64,
    /// Pseudo-count added per vocabulary entry to Greedy-KL summary distributions.
    pub kl_smoothing_k: f64,
    pub budget: LengthBudget,
}

impl Default for SummarizerConfig {
    fn default() -> Self {
        Self {
            lexrank_threshold: 0.1,
            damping: 0.85,
            power_iter_tol: 1e-6,
            power_iter_max: 200,
            topic_llr_threshold: 10.83,
            kl_smoothing_k: 0.0005,
            budget: LengthBudget::default(),
        }
    }
}

impl SummarizerConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if !(0.0..=1.0).contains(&self.lexrank_threshold) {
            return fail("lexrank_threshold must lie in [0, 1]");
        }
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return fail("damping must lie in (0, 1)");
        }
        if self.power_iter_tol.is_nan() || self.power_iter_tol <= 0.0 {
            return fail("power_iter_tol must be positive");
        }
        if self.power_iter_max == 0 {
            return fail("power_iter_max must be at least 1");
        }
        if self.topic_llr_threshold.is_nan() || self.topic_llr_threshold < 0.0 {
            return fail("topic_llr_threshold must be non-negative");
        }
        if !(self.kl_smoothing_k >= 0.0 && self.kl_smoothing_k.is_finite()) {
            return fail("kl_smoothing_k must be a finite non-negative number");
        }
        if self.budget.limit == 0 {
            return fail("budget limit must be positive");
        }
        Ok(())
    }
}

/// A system's ranking together with its budgeted summary.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateOutput {
    pub rank_list: RankList,
    pub summary: Summary,
}

/// Runs one system. `background` is only consulted by TopicSum.
pub fn rank_with(
    system: SystemId,
    cluster: &DocumentCluster,
    background: &TermCounts,
    config: &SummarizerConfig,
) -> Result<RankList> {
    match system {
        SystemId::LexRank => lexrank_rank(cluster, config),
        SystemId::TextRank => textrank_rank(cluster, config),
        SystemId::Centroid => centroid_rank(cluster, config),
        SystemId::FreqSum => freqsum_rank(cluster, config),
        SystemId::TopicSum => topicsum_rank(cluster, background, config),
        SystemId::GreedyKl => greedykl_rank(cluster, config),
    }
}

/// Ranks with `system` and extracts a summary under `config.budget`.
pub fn run_candidate(
    system: SystemId,
    cluster: &DocumentCluster,
    background: &TermCounts,
    config: &SummarizerConfig,
) -> Result<CandidateOutput> {
    let rank_list = rank_with(system, cluster, background, config)?;
    let summary = extract_summary(&rank_list, cluster, config.budget, None)?;
    Ok(CandidateOutput { rank_list, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_break_ties_by_index() {
        let r = RankList::from_scores("x", vec![0.5, 0.9, 0.5, f64::NAN]);
        assert_eq!(r.ranks, vec![2, 1, 3, 4]);
        assert_eq!(r.order(), vec![1, 0, 2, 3]);
        assert!(r.is_valid_permutation());
    }

    #[test]
    fn rounding_differences_tie() {
        let r = RankList::from_scores("x", vec![0.3, 0.1 + 0.2, 0.4]);
        assert_eq!(r.ranks, vec![2, 3, 1]);
        let r = RankList::from_scores("x", vec![0.1 + 0.2, 0.3]);
        assert_eq!(r.ranks, vec![1, 2]);
    }

    #[test]
    fn from_ranks_validates() {
        assert!(RankList::from_ranks("x", vec![1, 1, 2]).is_err());
        assert!(RankList::from_ranks("x", vec![0, 1]).is_err());
        let r = RankList::from_ranks("x", vec![3, 1, 2]).unwrap();
        assert_eq!(RankList::from_scores("y", r.scores.clone()).ranks, r.ranks);
    }

    #[test]
    fn budget_parsing() {
        assert_eq!("words:100".parse::<LengthBudget>().unwrap(), LengthBudget::default());
        assert_eq!(
            "bytes:665".parse::<LengthBudget>().unwrap(),
            LengthBudget::bytes(665).unwrap()
        );
        assert!("words:0".parse::<LengthBudget>().is_err());
        assert!("lines:3".parse::<LengthBudget>().is_err());
        assert!("100".parse::<LengthBudget>().is_err());
    }

    #[test]
    fn system_ids_round_trip() {
        for id in SystemId::ALL {
            assert_eq!(id.as_str().parse::<SystemId>().unwrap(), id);
        }
        assert!("dpp".parse::<SystemId>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SummarizerConfig::default().validate().is_ok());
        let bad = SummarizerConfig {
            damping: 1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SummarizerConfig {
            lexrank_threshold: -0.1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
