//! Graph rankers: LexRank and TextRank over a damped random walk.

use std::collections::BTreeSet;

use log::warn;

use super::{RankList, SummarizerConfig, SystemId};
use crate::corpus::{DocumentCluster, Token};
use crate::features::{cosine_similarity, tfidf_vectors};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIteration {
    /// Stationary distribution; sums to one.
    pub scores: Vec<f64>,
    pub iterations: usize,
    /// L1 distance between the last two iterates.
    pub residual: f64,
    pub converged: bool,
    /// Set when the graph had no edges and uniform scores were returned.
    pub isolated: bool,
}

/// Stationary distribution of the walk that follows an out-edge of a
/// sentence with probability proportional to its weight (damping `damping`)
/// and otherwise teleports uniformly. Rows with no out-weight teleport.
pub fn stationary_distribution(
    weights: &[Vec<f64>],
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> PowerIteration {
    let n = weights.len();
    let uniform = vec![1.0 / n as f64; n];
    let row_sums: Vec<f64> = weights.iter().map(|row| row.iter().sum()).collect();
    if row_sums.iter().all(|&s| s <= 0.0) {
        return PowerIteration {
            scores: uniform,
            iterations: 0,
            residual: 0.0,
            converged: true,
            isolated: true,
        };
    }
    let mut p = uniform;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let dangling: f64 = p
            .iter()
            .zip(&row_sums)
            .filter(|(_, &s)| s <= 0.0)
            .map(|(x, _)| x)
            .sum();
        let base = (1.0 - damping) / n as f64 + damping * dangling / n as f64;
        let mut next = vec![base; n];
        for (i, row) in weights.iter().enumerate() {
            if row_sums[i] <= 0.0 {
                continue;
            }
            let share = damping * p[i] / row_sums[i];
            for (j, &w) in row.iter().enumerate() {
                if w > 0.0 {
                    next[j] += share * w;
                }
            }
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        residual = next.iter().zip(&p).map(|(a, b)| (a - b).abs()).sum();
        p = next;
        if residual <= tol {
            break;
        }
    }
    PowerIteration {
        scores: p,
        iterations,
        converged: residual <= tol,
        residual,
        isolated: false,
    }
}

fn rank_graph(
    system: SystemId,
    weights: &[Vec<f64>],
    cluster: &DocumentCluster,
    config: &SummarizerConfig,
) -> RankList {
    let walk = stationary_distribution(
        weights,
        config.damping,
        config.power_iter_tol,
        config.power_iter_max,
    );
    if walk.isolated && weights.len() > 1 {
        warn!(
            "{system}: no sentence pair in cluster `{}` is connected; using uniform scores",
            cluster.cluster_id
        );
    }
    if !walk.converged {
        warn!(
            "{system}: power iteration stopped after {} iterations with residual {:.3e} (cluster `{}`)",
            walk.iterations, walk.residual, cluster.cluster_id
        );
    }
    RankList::from_scores(system.as_str(), walk.scores)
}

/// LexRank: binary edges between sentences whose TF-IDF cosine exceeds
/// `lexrank_threshold`, normalized by degree.
pub fn lexrank_rank(cluster: &DocumentCluster, config: &SummarizerConfig) -> Result<RankList> {
    config.validate()?;
    let vectors = tfidf_vectors(cluster);
    let n = vectors.len();
    let mut adjacency = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if cosine_similarity(&vectors[i], &vectors[j]) > config.lexrank_threshold {
                adjacency[i][j] = 1.0;
                adjacency[j][i] = 1.0;
            }
        }
    }
    Ok(rank_graph(SystemId::LexRank, &adjacency, cluster, config))
}

/// TextRank sentence similarity: shared distinct tokens over the sum of log
/// lengths. Sentences with at most one token have no edges.
pub fn textrank_edge_weight(a: &[Token], b: &[Token]) -> f64 {
    if a.len() <= 1 || b.len() <= 1 {
        return 0.0;
    }
    let sa: BTreeSet<&Token> = a.iter().collect();
    let overlap = b
        .iter()
        .collect::<BTreeSet<_>>()
        .intersection(&sa)
        .count();
    overlap as f64 / ((a.len() as f64).ln() + (b.len() as f64).ln())
}

#[allow(clippy::needless_range_loop)]
pub fn textrank_rank(cluster: &DocumentCluster, config: &SummarizerConfig) -> Result<RankList> {
    config.validate()?;
    let n = cluster.len();
    let mut weights = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = textrank_edge_weight(&cluster.sentences[i].tokens, &cluster.sentences[j].tokens);
            weights[i][j] = w;
            weights[j][i] = w;
        }
    }
    Ok(rank_graph(SystemId::TextRank, &weights, cluster, config))
}
