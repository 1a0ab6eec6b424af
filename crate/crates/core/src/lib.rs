//! Consensus-based extractive multi-document summarization.
//!
//! Six classical sentence rankers (LexRank, TextRank, Centroid, FreqSum,
//! TopicSum, Greedy-KL) each produce a total ranking of a cluster's
//! sentences. The rankings are fused by one of four consensus methods:
//!
//! | Method | Weights |
//! |--------|---------|
//! | [`consensus::borda_aggregate`] | none (mean rank) |
//! | [`consensus::wcs_aggregate`] | alternating minimization of rank-vector distances |
//! | [`consensus::cwcs_aggregate`] | mean ROUGE-1 recall against peer summaries |
//! | [`consensus::oracle_select`] | picks the best candidate using the references |
//!
//! The [`rouge`] module provides ROUGE-N recall, used both for evaluation and
//! for the peer similarity that drives the content-based weights. The
//! [`harness`] module runs everything over a corpus and renders reports.

pub mod consensus;
pub mod corpus;
mod error;
pub mod features;
pub mod harness;
pub mod rouge;
pub mod summarizers;

pub use error::{Error, Result};
