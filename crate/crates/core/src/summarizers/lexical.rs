//! Frequency-based rankers: Centroid, FreqSum, and TopicSum.

use std::collections::{BTreeMap, BTreeSet};

use super::{RankList, SummarizerConfig, SystemId};
use crate::corpus::{DocumentCluster, Token};
use crate::features::{tfidf_vectors, TermCounts};
use crate::{Error, Result};

/// Scores each sentence by the centroid weight of its distinct tokens, where
/// the centroid is the mean TF-IDF vector of the cluster's sentences.
pub fn centroid_rank(cluster: &DocumentCluster, config: &SummarizerConfig) -> Result<RankList> {
    config.validate()?;
    let vectors = tfidf_vectors(cluster);
    let n = vectors.len() as f64;
    let mut centroid: BTreeMap<&str, f64> = BTreeMap::new();
    for v in &vectors {
        for (t, w) in v.weights() {
            *centroid.entry(t.as_str()).or_default() += w;
        }
    }
    centroid.values_mut().for_each(|w| *w /= n);
    let scores = cluster
        .sentences
        .iter()
        .map(|s| {
            s.tokens
                .iter()
                .map(String::as_str)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .map(|t| centroid.get(t).copied().unwrap_or(0.0))
                .sum()
        })
        .collect();
    Ok(RankList::from_scores(SystemId::Centroid.as_str(), scores))
}

/// Mean cluster-level unigram probability of a sentence's tokens.
pub fn freqsum_rank(cluster: &DocumentCluster, config: &SummarizerConfig) -> Result<RankList> {
    config.validate()?;
    let counts = TermCounts::from_cluster(cluster);
    let total = counts.total as f64;
    let scores = cluster
        .sentences
        .iter()
        .map(|s| {
            if s.tokens.is_empty() {
                return 0.0;
            }
            let mass: f64 = s.tokens.iter().map(|t| counts.get(t) as f64 / total).sum();
            mass / s.tokens.len() as f64
        })
        .collect();
    Ok(RankList::from_scores(SystemId::FreqSum.as_str(), scores))
}

fn binomial_log_likelihood(k: f64, n: f64, p: f64) -> f64 {
    let term = |count: f64, prob: f64| if count == 0.0 { 0.0 } else { count * prob.ln() };
    term(k, p) + term(n - k, 1.0 - p)
}

/// Dunning's `-2 ln λ` for a token seen `k1` times in `n1` input tokens and
/// `k2` times in `n2` background tokens.
pub fn log_likelihood_ratio(k1: u64, n1: u64, k2: u64, n2: u64) -> f64 {
    let (k1, n1, k2, n2) = (k1 as f64, n1 as f64, k2 as f64, n2 as f64);
    let p1 = k1 / n1;
    let p2 = k2 / n2;
    let p = (k1 + k2) / (n1 + n2);
    let llr = 2.0
        * (binomial_log_likelihood(k1, n1, p1) + binomial_log_likelihood(k2, n2, p2)
            - binomial_log_likelihood(k1, n1, p)
            - binomial_log_likelihood(k2, n2, p));
    llr.max(0.0)
}

/// Tokens more frequent in the cluster than in the background whose LLR
/// exceeds `threshold`.
pub fn topic_words<'a>(
    cluster_counts: &'a TermCounts,
    background: &TermCounts,
    threshold: f64,
) -> BTreeSet<&'a str> {
    let n1 = cluster_counts.total;
    let n2 = background.total;
    cluster_counts
        .counts
        .iter()
        .filter(|(t, &k1)| {
            let k2 = background.get(t);
            (k1 as f64 / n1 as f64) > (k2 as f64 / n2 as f64)
                && log_likelihood_ratio(k1, n1, k2, n2) > threshold
        })
        .map(|(t, _)| t.as_str())
        .collect()
}

/// Fraction of a sentence's tokens that are topic signature words.
pub fn topicsum_rank(
    cluster: &DocumentCluster,
    background: &TermCounts,
    config: &SummarizerConfig,
) -> Result<RankList> {
    config.validate()?;
    if background.is_empty() {
        return Err(Error::BackgroundRequired);
    }
    let counts = TermCounts::from_cluster(cluster);
    let signature = topic_words(&counts, background, config.topic_llr_threshold);
    let scores = cluster
        .sentences
        .iter()
        .map(|s| topic_fraction(&s.tokens, &signature))
        .collect();
    Ok(RankList::from_scores(SystemId::TopicSum.as_str(), scores))
}

fn topic_fraction(tokens: &[Token], signature: &BTreeSet<&str>) -> f64 {
    if tokens.is_empty() {
        return 0.0;
    }
    let hits = tokens.iter().filter(|t| signature.contains(t.as_str())).count();
    hits as f64 / tokens.len() as f64
}
