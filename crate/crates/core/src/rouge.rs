//! ROUGE-N recall with clipped n-gram matching.
//!
//! Texts are segmented: each is a list of sentences, each sentence a token
//! list, and n-grams never span sentences.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::corpus::{segment_sentences, tokenize, Token, TokenizationConfig};
use crate::features::ngrams_segmented;
use crate::{Error, Result};

/// Preprocessing applied before scoring. Defaults match the usual
/// `ROUGE-1.5.5 -m` setup: lowercase and Porter stemming, stopwords kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RougeOptions {
    pub lowercase: bool,
    pub stem: bool,
    pub remove_stopwords: bool,
}

impl Default for RougeOptions {
    fn default() -> Self {
        Self {
            lowercase: true,
            stem: true,
            remove_stopwords: false,
        }
    }
}

impl RougeOptions {
    fn pipeline(&self) -> TokenizationConfig {
        TokenizationConfig {
            lowercase: self.lowercase,
            remove_stopwords: self.remove_stopwords,
            stem: self.stem,
            min_sentence_tokens: 1,
        }
    }

    pub fn tokenize(&self, sentence: &str) -> Vec<Token> {
        tokenize(sentence, &self.pipeline())
    }

    /// Segments free text and tokenizes each sentence.
    pub fn tokenize_text(&self, text: &str) -> Vec<Vec<Token>> {
        segment_sentences(text)
            .iter()
            .map(|s| self.tokenize(s))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RougeScore {
    pub n: usize,
    /// Mean of the per-reference recalls.
    pub recall: f64,
    /// Clipped matches summed over the scored references.
    pub match_count: usize,
    /// Reference n-grams summed over the scored references.
    pub reference_count: usize,
}

/// ROUGE-N recall of `candidate` against `references`.
///
/// References without any n-gram of order `n` are left out of the mean.
pub fn rouge_n_recall(
    candidate: &[Vec<Token>],
    references: &[Vec<Vec<Token>>],
    n: usize,
) -> Result<RougeScore> {
    if references.is_empty() {
        return Err(Error::NoReferences);
    }
    let cand = ngrams_segmented(candidate, n)?;
    let mut recalls = Vec::with_capacity(references.len());
    let mut match_count = 0;
    let mut reference_count = 0;
    for reference in references {
        let grams = ngrams_segmented(reference, n)?;
        let total: usize = grams.values().sum();
        if total == 0 {
            continue;
        }
        let matched: usize = grams
            .iter()
            .map(|(g, &c)| c.min(cand.get(g).copied().unwrap_or(0)))
            .sum();
        recalls.push(matched as f64 / total as f64);
        match_count += matched;
        reference_count += total;
    }
    if recalls.is_empty() {
        return Err(Error::NoScorableReference);
    }
    Ok(RougeScore {
        n,
        recall: recalls.iter().sum::<f64>() / recalls.len() as f64,
        match_count,
        reference_count,
    })
}

/// `M[i][j]` is the ROUGE-1 recall of summary `i` with summary `j` as the
/// only reference. The diagonal is 1 and entries against an empty summary are 0.
pub fn pairwise_sim_matrix(summaries: &[Vec<Vec<Token>>]) -> Result<Vec<Vec<f64>>> {
    let k = summaries.len();
    if k < 2 {
        return Err(Error::PeersRequired(k));
    }
    let mut matrix = vec![vec![0.0; k]; k];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            if i == j {
                *cell = 1.0;
                continue;
            }
            *cell = match rouge_n_recall(&summaries[i], std::slice::from_ref(&summaries[j]), 1) {
                Ok(score) => score.recall,
                Err(Error::NoScorableReference) => 0.0,
                Err(e) => return Err(e),
            };
        }
    }
    for (j, s) in summaries.iter().enumerate() {
        if s.iter().all(Vec::is_empty) {
            warn!("candidate summary {j} is empty; its similarity entries are 0");
        }
    }
    Ok(matrix)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn text() -> impl Strategy<Value = Vec<Token>> {
        proptest::collection::vec("[a-f]", 0..20)
    }

    proptest! {
        #[test]
        fn appending_reference_gram_never_decreases_matches(
            cand in text(), reference in text(), n in 1usize..4, pick in any::<prop::sample::Index>()
        ) {
            prop_assume!(reference.len() >= n);
            let refs = vec![vec![reference.clone()]];
            let before = rouge_n_recall(std::slice::from_ref(&cand), &refs, n).unwrap();
            let start = pick.index(reference.len() - n + 1);
            let extended = vec![cand, reference[start..start + n].to_vec()];
            let after = rouge_n_recall(&extended, &refs, n).unwrap();
            prop_assert!(after.match_count >= before.match_count);
        }

        #[test]
        fn sim_matrix_bounded_with_unit_diagonal(s in proptest::collection::vec(text(), 2..5)) {
            let summaries: Vec<Vec<Vec<Token>>> = s.into_iter().map(|t| vec![t]).collect();
            let m = pairwise_sim_matrix(&summaries).unwrap();
            for (i, row) in m.iter().enumerate() {
                prop_assert_eq!(row[i], 1.0);
                prop_assert!(row.iter().all(|x| (0.0..=1.0).contains(x)));
            }
        }
    }
}
