//! Greedy-KL: grow the summary one sentence at a time, each time adding the
//! sentence that brings the (smoothed) summary unigram distribution closest
//! to the cluster distribution in KL divergence.
//!
//! With `c` the summary count of token `w`, `k` the smoothing pseudo-count
//! and `Z = Σ (c + k)`, the divergence `Σ (c+k)/Z · ln((c+k) / (Z·P(w)))`
//! splits into `H/Z - ln Z - R/Z` with `H = Σ (c+k) ln(c+k)` and
//! `R = Σ (c+k) ln P(w)`. Adding a sentence only touches the entries of its
//! own tokens, so each candidate is scored in time linear in its length.

use std::collections::BTreeMap;

use super::{RankList, SummarizerConfig, SystemId};
use crate::corpus::DocumentCluster;
use crate::Result;

/// Objective values closer than this are treated as equal.
const TIE_TOLERANCE: f64 = 1e-12;

struct Objective {
    k: f64,
    ln_p: Vec<f64>,
    counts: Vec<u64>,
    h: f64,
    q: f64,
    r: f64,
}

fn x_ln_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

impl Objective {
    fn new(ln_p: Vec<f64>, k: f64) -> Self {
        let v = ln_p.len() as f64;
        let r = if k > 0.0 { k * ln_p.iter().sum::<f64>() } else { 0.0 };
        Self {
            k,
            counts: vec![0; ln_p.len()],
            h: v * x_ln_x(k),
            q: v * k,
            r,
            ln_p,
        }
    }

    /// Sums after adding `sentence` (token id, count pairs).
    fn preview(&self, sentence: &[(usize, u64)]) -> (f64, f64, f64) {
        let (mut h, mut q, mut r) = (self.h, self.q, self.r);
        for &(id, m) in sentence {
            let before = self.counts[id] as f64 + self.k;
            let m = m as f64;
            h += x_ln_x(before + m) - x_ln_x(before);
            q += m;
            r += m * self.ln_p[id];
        }
        (h, q, r)
    }

    fn divergence(h: f64, q: f64, r: f64) -> f64 {
        if q <= 0.0 {
            return f64::INFINITY;
        }
        h / q - q.ln() - r / q
    }

    fn add(&mut self, sentence: &[(usize, u64)]) {
        let (h, q, r) = self.preview(sentence);
        self.h = h;
        self.q = q;
        self.r = r;
        for &(id, m) in sentence {
            self.counts[id] += m;
        }
    }
}

/// Orders every sentence by greedy selection; the sentence picked at step
/// `t` (1-based) gets score `-t`.
pub fn greedykl_rank(cluster: &DocumentCluster, config: &SummarizerConfig) -> Result<RankList> {
    config.validate()?;
    let mut vocab: BTreeMap<&str, u64> = BTreeMap::new();
    for s in &cluster.sentences {
        for t in &s.tokens {
            *vocab.entry(t.as_str()).or_default() += 1;
        }
    }
    let ids: BTreeMap<&str, usize> = vocab.keys().enumerate().map(|(i, &t)| (t, i)).collect();
    let total: u64 = vocab.values().sum();
    let ln_p: Vec<f64> = vocab
        .values()
        .map(|&c| (c as f64 / total as f64).ln())
        .collect();
    let sentences: Vec<Vec<(usize, u64)>> = cluster
        .sentences
        .iter()
        .map(|s| {
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            for t in &s.tokens {
                *counts.entry(ids[t.as_str()]).or_default() += 1;
            }
            counts.into_iter().collect()
        })
        .collect();

    let mut objective = Objective::new(ln_p, config.kl_smoothing_k);
    let mut remaining: Vec<usize> = (0..cluster.len()).collect();
    let mut scores = vec![0.0; cluster.len()];
    let mut step = 0usize;
    while !remaining.is_empty() {
        step += 1;
        let mut best: Option<(usize, f64)> = None;
        for (pos, &idx) in remaining.iter().enumerate() {
            let (h, q, r) = objective.preview(&sentences[idx]);
            let kl = Objective::divergence(h, q, r);
            let better = match best {
                None => true,
                Some((_, best_kl)) => kl < best_kl - TIE_TOLERANCE,
            };
            if better {
                best = Some((pos, kl));
            }
        }
        let (pos, _) = best.expect("remaining is non-empty");
        let idx = remaining.remove(pos);
        objective.add(&sentences[idx]);
        scores[idx] = -(step as f64);
    }
    Ok(RankList::from_scores(SystemId::GreedyKl.as_str(), scores))
}
