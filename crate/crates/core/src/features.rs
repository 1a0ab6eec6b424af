//! Term statistics shared by the rankers and ROUGE.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::corpus::{DocumentCluster, Token};
use crate::{Error, Result};

/// Multiset of n-grams, borrowing from the token lists.
pub type NgramCounts<'a> = HashMap<&'a [Token], usize>;

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n-gram order must be at least 1".into()));
    }
    Ok(())
}

pub fn ngrams(tokens: &[Token], n: usize) -> Result<NgramCounts<'_>> {
    check_order(n)?;
    let mut counts = NgramCounts::new();
    for gram in tokens.windows(n) {
        *counts.entry(gram).or_default() += 1;
    }
    Ok(counts)
}

/// N-grams of a segmented text. Grams never span two sentences.
pub fn ngrams_segmented(sentences: &[Vec<Token>], n: usize) -> Result<NgramCounts<'_>> {
    check_order(n)?;
    let mut counts = NgramCounts::new();
    for sentence in sentences {
        for gram in sentence.windows(n) {
            *counts.entry(gram).or_default() += 1;
        }
    }
    Ok(counts)
}

/// Raw token counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermCounts {
    pub counts: BTreeMap<Token, u64>,
    pub total: u64,
}

impl TermCounts {
    pub fn from_token_lists<'a, I>(lists: I) -> Self
    where
        I: IntoIterator<Item = &'a [Token]>,
    {
        let mut out = Self::default();
        for list in lists {
            for token in list {
                *out.counts.entry(token.clone()).or_default() += 1;
                out.total += 1;
            }
        }
        out
    }

    pub fn from_cluster(cluster: &DocumentCluster) -> Self {
        Self::from_token_lists(cluster.sentences.iter().map(|s| s.tokens.as_slice()))
    }

    pub fn get(&self, token: &str) -> u64 {
        self.counts.get(token).copied().unwrap_or(0)
    }

    pub fn add(&mut self, other: &TermCounts) {
        for (token, &c) in &other.counts {
            *self.counts.entry(token.clone()).or_default() += c;
        }
        self.total += other.total;
    }

    /// Removes `other` from these counts. `other` must be a sub-multiset.
    pub fn subtract(&mut self, other: &TermCounts) {
        for (token, &c) in &other.counts {
            if let Some(entry) = self.counts.get_mut(token) {
                *entry = entry.saturating_sub(c);
                if *entry == 0 {
                    self.counts.remove(token);
                }
            }
        }
        self.total = self.total.saturating_sub(other.total);
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothing {
    None,
    /// Add `k` to every observed count and reserve one slot for unseen tokens.
    AddK(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnigramDistribution {
    pub probabilities: BTreeMap<Token, f64>,
    /// Probability of any single unseen token.
    pub smoothing_mass: f64,
}

impl UnigramDistribution {
    pub fn from_counts(counts: &TermCounts, smoothing: Smoothing) -> Result<Self> {
        match smoothing {
            Smoothing::None => {
                if counts.total == 0 {
                    return Err(Error::EmptyDistribution);
                }
                let total = counts.total as f64;
                Ok(Self {
                    probabilities: counts
                        .counts
                        .iter()
                        .map(|(t, &c)| (t.clone(), c as f64 / total))
                        .collect(),
                    smoothing_mass: 0.0,
                })
            }
            Smoothing::AddK(k) => {
                if !(k.is_finite() && k > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "add-k smoothing needs a positive k, got {k}"
                    )));
                }
                let slots = counts.counts.len() as f64 + 1.0;
                let denom = counts.total as f64 + k * slots;
                Ok(Self {
                    probabilities: counts
                        .counts
                        .iter()
                        .map(|(t, &c)| (t.clone(), (c as f64 + k) / denom))
                        .collect(),
                    smoothing_mass: k / denom,
                })
            }
        }
    }

    pub fn prob(&self, token: &str) -> f64 {
        self.probabilities
            .get(token)
            .copied()
            .unwrap_or(self.smoothing_mass)
    }
}

pub fn unigram_distribution(
    token_lists: &[Vec<Token>],
    smoothing: Smoothing,
) -> Result<UnigramDistribution> {
    let counts = TermCounts::from_token_lists(token_lists.iter().map(Vec::as_slice));
    UnigramDistribution::from_counts(&counts, smoothing)
}

/// Sparse non-negative term weights. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentenceVector {
    weights: BTreeMap<Token, f64>,
}

impl SentenceVector {
    pub fn from_weights<I: IntoIterator<Item = (Token, f64)>>(weights: I) -> Self {
        Self {
            weights: weights.into_iter().filter(|(_, w)| *w > 0.0).collect(),
        }
    }

    /// Raw term-frequency vector.
    pub fn term_frequency(tokens: &[Token]) -> Self {
        let mut weights = BTreeMap::new();
        for t in tokens {
            *weights.entry(t.clone()).or_insert(0.0) += 1.0;
        }
        Self { weights }
    }

    pub fn weights(&self) -> &BTreeMap<Token, f64> {
        &self.weights
    }

    pub fn get(&self, token: &str) -> f64 {
        self.weights.get(token).copied().unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.weights.values().map(|w| w * w).sum::<f64>().sqrt()
    }

    fn dot(&self, other: &Self) -> f64 {
        let (small, large) = if self.weights.len() <= other.weights.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .weights
            .iter()
            .filter_map(|(t, w)| large.weights.get(t).map(|v| w * v))
            .sum()
    }
}

/// TF-IDF vector per sentence, with IDF taken over the cluster's documents:
/// `idf = ln(D / df)`. Tokens present in every document get weight zero.
pub fn tfidf_vectors(cluster: &DocumentCluster) -> Vec<SentenceVector> {
    let doc_count = cluster.documents.len() as f64;
    let mut df: HashMap<&str, usize> = HashMap::new();
    for doc in &cluster.documents {
        let vocab: BTreeSet<&str> = cluster
            .document_sentences(doc)
            .iter()
            .flat_map(|s| s.tokens.iter().map(String::as_str))
            .collect();
        for t in vocab {
            *df.entry(t).or_default() += 1;
        }
    }
    cluster
        .sentences
        .iter()
        .map(|s| {
            let tf = SentenceVector::term_frequency(&s.tokens);
            SentenceVector::from_weights(tf.weights.into_iter().map(|(t, count)| {
                let idf = (doc_count / df[t.as_str()] as f64).ln();
                (t, count * idf)
            }))
        })
        .collect()
}

/// Cosine similarity in `[0, 1]`; zero if either vector is empty.
pub fn cosine_similarity(a: &SentenceVector, b: &SentenceVector) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        return 0.0;
    }
    (a.dot(b) / denom).clamp(0.0, 1.0)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn tokens() -> impl Strategy<Value = Vec<Token>> {
        proptest::collection::vec("[a-e]", 0..30)
    }

    fn sparse() -> impl Strategy<Value = SentenceVector> {
        proptest::collection::btree_map("[a-h]", 0.0f64..10.0, 0..8)
            .prop_map(SentenceVector::from_weights)
    }

    proptest! {
        #[test]
        fn ngram_count_conservation(t in tokens(), n in 1usize..6) {
            let total: usize = ngrams(&t, n).unwrap().values().sum();
            prop_assert_eq!(total, t.len().saturating_sub(n - 1));
        }

        #[test]
        fn cosine_symmetric_and_bounded(a in sparse(), b in sparse()) {
            let ab = cosine_similarity(&a, &b);
            let ba = cosine_similarity(&b, &a);
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&ab));
        }

        #[test]
        fn mle_sums_to_one(lists in proptest::collection::vec(tokens(), 1..5)) {
            prop_assume!(lists.iter().any(|l| !l.is_empty()));
            let d = unigram_distribution(&lists, Smoothing::None).unwrap();
            let sum: f64 = d.probabilities.values().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
        }

        #[test]
        fn add_k_positive_and_subunit(lists in proptest::collection::vec(tokens(), 1..5), k in 0.001f64..2.0) {
            let d = unigram_distribution(&lists, Smoothing::AddK(k)).unwrap();
            let sum: f64 = d.probabilities.values().sum();
            prop_assert!(sum <= 1.0 + 1e-12);
            prop_assert!(d.smoothing_mass > 0.0);
            prop_assert!(d.probabilities.values().all(|&p| p > 0.0));
        }
    }
}
