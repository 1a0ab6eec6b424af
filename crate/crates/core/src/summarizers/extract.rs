use log::warn;
use serde::{Deserialize, Serialize};

use super::{BudgetKind, LengthBudget, RankList};
use crate::corpus::{DocumentCluster, Sentence, Token};
use crate::features::{cosine_similarity, SentenceVector};
use crate::{Error, Result};

/// Selected sentences in selection order, with their total size.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub sentence_indices: Vec<usize>,
    /// Whitespace-separated words.
    pub token_count: usize,
    /// Bytes of the sentences joined by single spaces.
    pub byte_count: usize,
}

impl Summary {
    pub fn is_empty(&self) -> bool {
        self.sentence_indices.is_empty()
    }

    pub fn sentences<'a>(&'a self, cluster: &'a DocumentCluster) -> impl Iterator<Item = &'a Sentence> {
        self.sentence_indices.iter().map(|&i| &cluster.sentences[i])
    }

    /// Sentence texts, one per line.
    pub fn text(&self, cluster: &DocumentCluster) -> String {
        self.sentences(cluster)
            .map(|s| s.raw_text.as_str())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Per-sentence token lists drawn from `per_sentence` (indexed by sentence).
    pub fn token_lists(&self, per_sentence: &[Vec<Token>]) -> Vec<Vec<Token>> {
        self.sentence_indices
            .iter()
            .map(|&i| per_sentence[i].clone())
            .collect()
    }

    fn cost(&self, budget: &LengthBudget, sentence: &Sentence) -> usize {
        match budget.kind {
            BudgetKind::Words => self.token_count + sentence.word_count(),
            BudgetKind::Bytes => {
                let sep = usize::from(!self.is_empty());
                self.byte_count + sep + sentence.byte_count()
            }
        }
    }

    fn push(&mut self, sentence: &Sentence) {
        let sep = usize::from(!self.is_empty());
        self.byte_count += sep + sentence.byte_count();
        self.token_count += sentence.word_count();
        self.sentence_indices.push(sentence.index);
    }
}

/// Walks sentences in rank order, skipping ineligible ones and (when
/// `redundancy_cap` is set) ones whose term-frequency cosine with an already
/// selected sentence exceeds the cap. Stops at the first sentence that would
/// overflow the budget; sentences are never truncated.
pub fn extract_summary(
    rank_list: &RankList,
    cluster: &DocumentCluster,
    budget: LengthBudget,
    redundancy_cap: Option<f64>,
) -> Result<Summary> {
    if rank_list.len() != cluster.len() {
        return Err(Error::DimensionMismatch {
            expected: cluster.len(),
            found: rank_list.len(),
        });
    }
    if let Some(cap) = redundancy_cap {
        if !(0.0..=1.0).contains(&cap) {
            return Err(Error::InvalidConfig(format!(
                "redundancy cap must lie in [0, 1], got {cap}"
            )));
        }
    }
    let mut summary = Summary::default();
    let mut selected_vectors: Vec<SentenceVector> = Vec::new();
    for idx in rank_list.order() {
        let sentence = &cluster.sentences[idx];
        if !sentence.eligible {
            continue;
        }
        let vector = redundancy_cap.map(|_| SentenceVector::term_frequency(&sentence.tokens));
        if let (Some(cap), Some(v)) = (redundancy_cap, &vector) {
            if selected_vectors.iter().any(|s| cosine_similarity(s, v) > cap) {
                continue;
            }
        }
        if summary.cost(&budget, sentence) > budget.limit {
            if summary.is_empty() {
                warn!(
                    "budget {budget} is smaller than the first eligible sentence of cluster `{}`",
                    cluster.cluster_id
                );
            }
            break;
        }
        summary.push(sentence);
        selected_vectors.extend(vector);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::TokenizationConfig;

    fn words(n: usize, tag: &str) -> String {
        let body: Vec<String> = (0..n).map(|i| format!("{tag}{i}")).collect();
        format!("{}.", body.join(" "))
    }

    fn cluster(docs: &[String]) -> DocumentCluster {
        DocumentCluster::from_texts(
            "t",
            docs.iter()
                .enumerate()
                .map(|(i, t)| (format!("d{i}"), t.clone())),
            Vec::new(),
            &TokenizationConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn word_budget_takes_first_two_of_three() {
        let c = cluster(&[words(40, "a"), words(40, "b"), words(40, "c")]);
        let r = RankList::from_scores("x", vec![3.0, 2.0, 1.0]);
        let s = extract_summary(&r, &c, LengthBudget::words(100).unwrap(), None).unwrap();
        assert_eq!(s.sentence_indices, vec![0, 1]);
        assert_eq!(s.token_count, 80);
    }

    #[test]
    fn redundancy_filter_skips_duplicate() {
        let first = "Storm floods coastal towns overnight.".to_string();
        let c = cluster(&[first.clone(), first, "Rescue teams reach stranded families.".into()]);
        let r = RankList::from_scores("x", vec![3.0, 2.0, 1.0]);
        let budget = LengthBudget::words(100).unwrap();
        let s = extract_summary(&r, &c, budget, Some(0.99)).unwrap();
        assert_eq!(s.sentence_indices, vec![0, 2]);
        let s = extract_summary(&r, &c, budget, None).unwrap();
        assert_eq!(s.sentence_indices, vec![0, 1, 2]);
    }

    #[test]
    fn byte_budget_walk() {
        // 19, 30, 14 and 24 bytes with a 55-byte budget:
        // 19, then 19 + 1 + 30 = 50, then 50 + 1 + 14 = 65 > 55 stops.
        let texts = [
            "Aaaa bbbb cccc ddd.",
            "Eeee ffff gggg hhhh iiii jjjj.",
            "Kkkk llll mmm.",
            "Nnnn oooo pppp qqqq.",
        ];
        let c = cluster(&texts.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        assert_eq!(c.sentences[0].byte_count(), 19);
        assert_eq!(c.sentences[1].byte_count(), 30);
        let r = RankList::from_scores("x", vec![4.0, 3.0, 2.0, 1.0]);
        let s = extract_summary(&r, &c, LengthBudget::bytes(55).unwrap(), None).unwrap();
        assert_eq!(s.sentence_indices, vec![0, 1]);
        assert_eq!(s.byte_count, 19 + 1 + 30);
        assert!(s.byte_count + 1 + c.sentences[2].byte_count() > 55);
    }

    #[test]
    fn ineligible_sentences_are_skipped() {
        let c = cluster(&["Brief note. ".to_string() + &words(10, "W")]);
        assert!(!c.sentences[0].eligible);
        let r = RankList::from_scores("x", vec![2.0, 1.0]);
        let s = extract_summary(&r, &c, LengthBudget::words(100).unwrap(), None).unwrap();
        assert_eq!(s.sentence_indices, vec![1]);
    }

    #[test]
    fn tiny_budget_gives_empty_summary() {
        let c = cluster(&[words(40, "a")]);
        let r = RankList::from_scores("x", vec![1.0]);
        let s = extract_summary(&r, &c, LengthBudget::words(5).unwrap(), None).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn mismatched_rank_list_rejected() {
        let c = cluster(&[words(4, "a")]);
        let r = RankList::from_scores("x", vec![1.0, 2.0]);
        assert!(extract_summary(&r, &c, LengthBudget::default(), None).is_err());
    }
}
