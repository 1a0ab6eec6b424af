//! Document clusters, sentence segmentation, and tokenization.
//!
//! Every ranker scores the same unit: a [`Sentence`] with a dense,
//! cluster-global index. Documents keep the contiguous index range their
//! sentences occupy, so the flat list can always be mapped back.

mod load;
mod text;

use std::collections::HashMap;
use std::ops::Range;

use crate::{Error, Result};

pub use load::{load_cluster, load_corpus, CorpusFormat};
pub use text::{
    is_stopword, segment_sentences, stopword_count, tokenize, Token, TokenizationConfig,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub index: usize,
    pub raw_text: String,
    /// Tokens after the cluster's pipeline.
    pub tokens: Vec<Token>,
    /// Lowercased word tokens before stopword removal and stemming.
    pub words: Vec<Token>,
    pub doc_id: String,
    pub position_in_doc: usize,
    /// False when the sentence is shorter than `min_sentence_tokens`.
    pub eligible: bool,
}

impl Sentence {
    pub fn word_count(&self) -> usize {
        self.raw_text.split_whitespace().count()
    }

    pub fn byte_count(&self) -> usize {
        self.raw_text.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub id: String,
    pub text: String,
    sentences: Range<usize>,
}

impl Document {
    /// Cluster-global indices of this document's sentences.
    pub fn sentence_range(&self) -> Range<usize> {
        self.sentences.clone()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSummary {
    pub author_id: String,
    pub text: String,
    pub sentences: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DocumentCluster {
    pub cluster_id: String,
    pub documents: Vec<Document>,
    pub sentences: Vec<Sentence>,
    pub references: Vec<ReferenceSummary>,
    pub config: TokenizationConfig,
}

impl DocumentCluster {
    /// Builds a cluster from `(doc_id, text)` and `(author_id, text)` pairs.
    pub fn from_texts<D, R>(
        cluster_id: impl Into<String>,
        documents: D,
        references: R,
        config: &TokenizationConfig,
    ) -> Result<Self>
    where
        D: IntoIterator<Item = (String, String)>,
        R: IntoIterator<Item = (String, String)>,
    {
        config.validate()?;
        let cluster_id = cluster_id.into();
        let surface = TokenizationConfig::surface();
        let mut docs = Vec::new();
        let mut sentences = Vec::new();
        for (doc_id, text) in documents {
            if text.trim().is_empty() {
                return Err(Error::EmptyDocument {
                    cluster_id,
                    doc_id,
                });
            }
            let start = sentences.len();
            for (position, raw) in segment_sentences(&text).into_iter().enumerate() {
                let tokens = tokenize(&raw, config);
                let words = tokenize(&raw, &surface);
                sentences.push(Sentence {
                    index: sentences.len(),
                    eligible: tokens.len() >= config.min_sentence_tokens,
                    raw_text: raw,
                    tokens,
                    words,
                    doc_id: doc_id.clone(),
                    position_in_doc: position,
                });
            }
            docs.push(Document {
                id: doc_id,
                text,
                sentences: start..sentences.len(),
            });
        }
        if sentences.is_empty() {
            return Err(Error::EmptyCluster(cluster_id));
        }
        let references = references
            .into_iter()
            .map(|(author_id, text)| {
                if text.trim().is_empty() {
                    return Err(Error::EmptyReference {
                        cluster_id: cluster_id.clone(),
                        author_id,
                    });
                }
                Ok(ReferenceSummary {
                    sentences: segment_sentences(&text),
                    author_id,
                    text,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            cluster_id,
            documents: docs,
            sentences,
            references,
            config: *config,
        })
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn document_sentences(&self, document: &Document) -> &[Sentence] {
        &self.sentences[document.sentence_range()]
    }
}

/// Number of distinct sentences (as lowercased word sequences) that occur at
/// least twice in the cluster.
pub fn duplicate_stats(cluster: &DocumentCluster) -> usize {
    let mut counts: HashMap<&[Token], usize> = HashMap::new();
    for sentence in &cluster.sentences {
        if !sentence.words.is_empty() {
            *counts.entry(sentence.words.as_slice()).or_default() += 1;
        }
    }
    counts.values().filter(|&&c| c >= 2).count()
}
