//! End-to-end evaluation: run the candidate systems and aggregators over a
//! corpus, score every summary against the references, and collect the
//! auxiliary statistics (pseudo-relevance tau, sign tests, duplicates).
//!
//! Clusters are processed in parallel on a dedicated rayon pool; results are
//! merged in cluster-id order, so the report does not depend on `jobs`.

mod report;
mod stats;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::consensus::{
    borda_aggregate, cwcs_aggregate, oracle_select, wcs_aggregate, AggregateMethod,
    AggregateResult, PseudoRelevance, WcsConfig,
};
use crate::corpus::{duplicate_stats, load_corpus, CorpusFormat, DocumentCluster, Token, TokenizationConfig};
use crate::features::TermCounts;
use crate::rouge::{rouge_n_recall, RougeOptions};
use crate::summarizers::{
    extract_summary, run_candidate, CandidateOutput, RankList, Summary, SummarizerConfig, SystemId,
};
use crate::{Error, Result};

pub use report::{emit_report, render_report, render_table, ReportFormat};
pub use stats::{kendall_tau, sign_test, SignTest};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus: PathBuf,
    pub format: CorpusFormat,
    /// Column label in rendered tables; defaults to the corpus file name.
    pub corpus_name: Option<String>,
    pub tokenization: TokenizationConfig,
    pub summarizer: SummarizerConfig,
    pub systems: Vec<SystemId>,
    pub aggregators: Vec<AggregateMethod>,
    pub wcs: WcsConfig,
    pub rouge_orders: Vec<usize>,
    pub rouge: RougeOptions,
    /// Cosine cap for the aggregate summaries; candidates are never filtered.
    pub redundancy_cap: Option<f64>,
    /// ROUGE order the Oracle maximizes.
    pub oracle_order: usize,
    /// Worker threads; `None` uses one per core.
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
    pub emit: ReportFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            corpus: PathBuf::new(),
            format: CorpusFormat::DucDir,
            corpus_name: None,
            tokenization: TokenizationConfig::default(),
            summarizer: SummarizerConfig::default(),
            systems: SystemId::ALL.to_vec(),
            aggregators: AggregateMethod::ALL.to_vec(),
            wcs: WcsConfig::default(),
            rouge_orders: vec![1, 2, 4],
            rouge: RougeOptions::default(),
            redundancy_cap: None,
            oracle_order: 1,
            jobs: None,
            output: None,
            emit: ReportFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        self.tokenization.validate()?;
        self.summarizer.validate()?;
        if self.systems.is_empty() && self.aggregators.is_empty() {
            return fail("at least one system or aggregator must be enabled".into());
        }
        if has_duplicates(&self.systems) {
            return fail("systems listed more than once".into());
        }
        if has_duplicates(&self.aggregators) {
            return fail("aggregators listed more than once".into());
        }
        for &m in &self.aggregators {
            let needed = match m {
                AggregateMethod::Wcs | AggregateMethod::Cwcs => 2,
                AggregateMethod::Borda | AggregateMethod::Oracle => 1,
            };
            if self.systems.len() < needed {
                return fail(format!(
                    "{} needs at least {needed} candidate systems",
                    m.display_name()
                ));
            }
        }
        if self.rouge_orders.is_empty() || self.rouge_orders.contains(&0) {
            return fail("rouge orders must be a non-empty list of positive integers".into());
        }
        if has_duplicates(&self.rouge_orders) {
            return fail("rouge orders listed more than once".into());
        }
        if self.oracle_order == 0 {
            return fail("oracle order must be positive".into());
        }
        if let Some(cap) = self.redundancy_cap {
            if !(0.0..=1.0).contains(&cap) {
                return fail(format!("redundancy cap must lie in [0, 1], got {cap}"));
            }
        }
        if self.jobs == Some(0) {
            return fail("jobs must be at least 1".into());
        }
        Ok(())
    }

    fn corpus_label(&self) -> String {
        self.corpus_name.clone().unwrap_or_else(|| {
            self.corpus
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "corpus".into())
        })
    }

    /// Order used for tau and sign tests: ROUGE-1 when scored, otherwise the
    /// first configured order.
    fn stats_order(&self) -> usize {
        if self.rouge_orders.contains(&1) {
            1
        } else {
            self.rouge_orders[0]
        }
    }

    /// Row ids in report order: candidates, then aggregators.
    pub fn row_ids(&self) -> Vec<String> {
        self.systems
            .iter()
            .map(|s| s.as_str().to_string())
            .chain(self.aggregators.iter().map(|m| m.as_str().to_string()))
            .collect()
    }
}

fn has_duplicates<T: PartialEq>(items: &[T]) -> bool {
    items
        .iter()
        .enumerate()
        .any(|(i, x)| items[..i].contains(x))
}

/// Human-readable name for a report row id.
pub fn row_display_name(id: &str) -> String {
    if let Ok(s) = id.parse::<SystemId>() {
        return s.display_name().to_string();
    }
    if let Ok(m) = id.parse::<AggregateMethod>() {
        return m.display_name().to_string();
    }
    id.to_string()
}

/// Token counts of every cluster, for building TopicSum backgrounds.
pub fn corpus_counts(clusters: &[DocumentCluster]) -> TermCounts {
    let mut total = TermCounts::default();
    for c in clusters {
        total.add(&TermCounts::from_cluster(c));
    }
    total
}

/// `total` with `cluster`'s own tokens removed.
pub fn background_for(total: &TermCounts, cluster: &DocumentCluster) -> TermCounts {
    let mut background = total.clone();
    background.subtract(&TermCounts::from_cluster(cluster));
    background
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateOutput {
    pub result: AggregateResult,
    pub summary: Summary,
    /// For the Oracle: the candidate it picked.
    pub oracle_choice: Option<SystemId>,
}

/// Everything produced for one cluster before scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterRun {
    pub candidates: Vec<(SystemId, CandidateOutput)>,
    /// Present when at least two candidates ran.
    pub pseudo_relevance: Option<PseudoRelevance>,
    pub aggregates: Vec<AggregateOutput>,
    /// ROUGE tokens of every cluster sentence.
    pub sentence_tokens: Vec<Vec<Token>>,
    /// ROUGE tokens of every reference, per sentence.
    pub reference_tokens: Vec<Vec<Vec<Token>>>,
}

impl ClusterRun {
    /// `(row id, summary)` pairs in report order.
    pub fn rows(&self) -> impl Iterator<Item = (&'static str, &Summary)> {
        self.candidates
            .iter()
            .map(|(s, c)| (s.as_str(), &c.summary))
            .chain(
                self.aggregates
                    .iter()
                    .map(|a| (a.result.method.as_str(), &a.summary)),
            )
    }

    pub fn aggregate(&self, method: AggregateMethod) -> Option<&AggregateOutput> {
        self.aggregates.iter().find(|a| a.result.method == method)
    }
}

/// Runs the configured systems and aggregators on one cluster. The Oracle is
/// skipped when the cluster has no references.
pub fn summarize_cluster(
    cluster: &DocumentCluster,
    background: &TermCounts,
    config: &RunConfig,
) -> Result<ClusterRun> {
    let sentence_tokens: Vec<Vec<Token>> = cluster
        .sentences
        .iter()
        .map(|s| config.rouge.tokenize(&s.raw_text))
        .collect();
    let reference_tokens: Vec<Vec<Vec<Token>>> = cluster
        .references
        .iter()
        .map(|r| r.sentences.iter().map(|s| config.rouge.tokenize(s)).collect())
        .collect();

    let candidates = config
        .systems
        .iter()
        .map(|&s| Ok((s, run_candidate(s, cluster, background, &config.summarizer)?)))
        .collect::<Result<Vec<_>>>()?;
    let rank_lists: Vec<RankList> = candidates.iter().map(|(_, c)| c.rank_list.clone()).collect();
    let candidate_tokens: Vec<Vec<Vec<Token>>> = candidates
        .iter()
        .map(|(_, c)| c.summary.token_lists(&sentence_tokens))
        .collect();
    let pseudo_relevance = if candidates.len() >= 2 {
        Some(PseudoRelevance::from_summaries(&candidate_tokens)?)
    } else {
        None
    };

    let extract = |result: AggregateResult| -> Result<AggregateOutput> {
        let summary = extract_summary(
            &result.rank_list,
            cluster,
            config.summarizer.budget,
            config.redundancy_cap,
        )?;
        Ok(AggregateOutput {
            result,
            summary,
            oracle_choice: None,
        })
    };

    let mut aggregates = Vec::with_capacity(config.aggregators.len());
    for &method in &config.aggregators {
        let output = match method {
            AggregateMethod::Borda => extract(borda_aggregate(&rank_lists)?)?,
            AggregateMethod::Wcs => extract(wcs_aggregate(&rank_lists, &config.wcs)?)?,
            AggregateMethod::Cwcs => {
                let pseudo = pseudo_relevance
                    .as_ref()
                    .ok_or(Error::PeersRequired(candidates.len()))?;
                extract(cwcs_aggregate(&rank_lists, &pseudo.weights()?)?)?
            }
            AggregateMethod::Oracle => {
                if reference_tokens.is_empty() {
                    continue;
                }
                let (pick, _) = oracle_select(&candidate_tokens, &reference_tokens, config.oracle_order)?;
                let (system, chosen) = &candidates[pick];
                let mut rank_list = chosen.rank_list.clone();
                rank_list.system_id = AggregateMethod::Oracle.as_str().to_string();
                AggregateOutput {
                    result: AggregateResult {
                        method,
                        rank_list,
                        weights: None,
                        wcs: None,
                    },
                    summary: chosen.summary.clone(),
                    oracle_choice: Some(*system),
                }
            }
        };
        aggregates.push(output);
    }

    Ok(ClusterRun {
        candidates,
        pseudo_relevance,
        aggregates,
        sentence_tokens,
        reference_tokens,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WcsRecord {
    pub weights: Vec<f64>,
    pub iterations: usize,
    pub objective: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRecord {
    pub sentences: usize,
    pub duplicates: usize,
    /// Row id → recall per configured ROUGE order. Empty when unscored.
    pub scores: BTreeMap<String, Vec<f64>>,
    /// Row id → selected sentence indices.
    pub summaries: BTreeMap<String, Vec<usize>>,
    /// Unnormalized content-based weights, in candidate order.
    pub pseudo_weights: Option<Vec<f64>>,
    pub cwcs_weights: Option<Vec<f64>>,
    pub wcs: Option<WcsRecord>,
    pub oracle_choice: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ClusterOutcome {
    Scored(ClusterRecord),
    /// Summarized, but the cluster has no references.
    Unscored(ClusterRecord),
    Failed { reason: String },
}

impl ClusterOutcome {
    pub fn record(&self) -> Option<&ClusterRecord> {
        match self {
            Self::Scored(r) | Self::Unscored(r) => Some(r),
            Self::Failed { .. } => None,
        }
    }

    pub fn scored(&self) -> Option<&ClusterRecord> {
        match self {
            Self::Scored(r) => Some(r),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedSignTest {
    pub a: String,
    pub b: String,
    pub order: usize,
    #[serde(flatten)]
    pub test: SignTest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportStats {
    /// ROUGE order used for tau and the focus sign tests.
    pub stats_order: usize,
    /// Candidate ids by mean true ROUGE, best first.
    pub true_order: Vec<String>,
    /// Candidate ids by mean unnormalized content-based weight, best first.
    pub pseudo_order: Vec<String>,
    pub mean_pseudo_weights: BTreeMap<String, f64>,
    /// Tau between `true_order` and `pseudo_order`.
    pub kendall_tau: Option<f64>,
    /// The same comparison within each scored cluster.
    pub cluster_tau: BTreeMap<String, f64>,
    pub mean_cluster_tau: Option<f64>,
    /// C-WCS (or the best row when C-WCS is not run) against every other row.
    pub focus_tests: Vec<PairedSignTest>,
    /// Per ROUGE order: best row against the runner-up.
    pub column_tests: Vec<PairedSignTest>,
    pub mean_duplicates: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub corpus: String,
    pub rouge_orders: Vec<usize>,
    /// Row ids in display order.
    pub rows: Vec<String>,
    pub per_cluster: BTreeMap<String, ClusterOutcome>,
    /// Row id → mean recall per order over scored clusters.
    pub averages: BTreeMap<String, Vec<f64>>,
    pub scored_clusters: usize,
    pub stats: ReportStats,
}

impl EvalReport {
    pub fn failures(&self) -> impl Iterator<Item = (&str, &str)> {
        self.per_cluster.iter().filter_map(|(id, o)| match o {
            ClusterOutcome::Failed { reason } => Some((id.as_str(), reason.as_str())),
            _ => None,
        })
    }

    pub fn unscored(&self) -> impl Iterator<Item = &str> {
        self.per_cluster
            .iter()
            .filter(|(_, o)| matches!(o, ClusterOutcome::Unscored(_)))
            .map(|(id, _)| id.as_str())
    }

    /// Mean recall of `row` at ROUGE order `n`.
    pub fn average(&self, row: &str, n: usize) -> Option<f64> {
        let col = self.rouge_orders.iter().position(|&o| o == n)?;
        self.averages.get(row).map(|v| v[col])
    }

    /// Per-cluster recalls of `row` at order `n`, in cluster-id order.
    pub fn cluster_scores(&self, row: &str, n: usize) -> Option<Vec<f64>> {
        let col = self.rouge_orders.iter().position(|&o| o == n)?;
        self.per_cluster
            .values()
            .filter_map(ClusterOutcome::scored)
            .map(|r| r.scores.get(row).map(|v| v[col]))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Loads the corpus named in `config` and evaluates it.
pub fn run_evaluation(config: &RunConfig) -> Result<EvalReport> {
    config.validate()?;
    let clusters = load_corpus(&config.corpus, config.format, &config.tokenization)?;
    info!("loaded {} clusters from {}", clusters.len(), config.corpus.display());
    evaluate_clusters(&clusters, config)
}

/// Evaluates already-loaded clusters. Cluster failures are recorded in the
/// report; the call fails only when no cluster succeeds.
pub fn evaluate_clusters(clusters: &[DocumentCluster], config: &RunConfig) -> Result<EvalReport> {
    config.validate()?;
    let total = corpus_counts(clusters);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<ClusterOutcome> = pool.install(|| {
        clusters
            .par_iter()
            .map(|c| match evaluate_cluster(c, &background_for(&total, c), config) {
                Ok(outcome) => outcome,
                Err(e) => {
                    warn!("cluster `{}` failed: {e}", c.cluster_id);
                    ClusterOutcome::Failed {
                        reason: e.to_string(),
                    }
                }
            })
            .collect()
    });

    let mut per_cluster = BTreeMap::new();
    for (c, outcome) in clusters.iter().zip(outcomes) {
        if per_cluster.insert(c.cluster_id.clone(), outcome).is_some() {
            return Err(Error::InvalidArgument(format!(
                "duplicate cluster id `{}`",
                c.cluster_id
            )));
        }
    }
    if per_cluster.values().all(|o| o.record().is_none()) {
        return Err(Error::NoSuccessfulClusters);
    }
    Ok(assemble(per_cluster, config))
}

fn evaluate_cluster(
    cluster: &DocumentCluster,
    background: &TermCounts,
    config: &RunConfig,
) -> Result<ClusterOutcome> {
    let run = summarize_cluster(cluster, background, config)?;
    let scored = !run.reference_tokens.is_empty();
    let mut scores = BTreeMap::new();
    let mut summaries = BTreeMap::new();
    for (id, summary) in run.rows() {
        summaries.insert(id.to_string(), summary.sentence_indices.clone());
        if scored {
            let tokens = summary.token_lists(&run.sentence_tokens);
            let recalls = config
                .rouge_orders
                .iter()
                .map(|&n| Ok(rouge_n_recall(&tokens, &run.reference_tokens, n)?.recall))
                .collect::<Result<Vec<_>>>()?;
            scores.insert(id.to_string(), recalls);
        }
    }
    let wcs = run.aggregate(AggregateMethod::Wcs).map(|a| {
        let d = a.result.wcs.as_ref().expect("wcs diagnostics");
        WcsRecord {
            weights: a.result.weights.clone().expect("wcs weights").into(),
            iterations: d.iterations,
            objective: d.objective,
            converged: d.converged,
        }
    });
    if let Some(w) = wcs.as_ref().filter(|w| !w.converged) {
        warn!(
            "WCS did not converge on cluster `{}` within {} iterations",
            cluster.cluster_id, w.iterations
        );
    }
    let record = ClusterRecord {
        sentences: cluster.len(),
        duplicates: duplicate_stats(cluster),
        scores,
        summaries,
        pseudo_weights: run.pseudo_relevance.as_ref().map(|p| p.raw_weights.clone()),
        cwcs_weights: run
            .aggregate(AggregateMethod::Cwcs)
            .and_then(|a| a.result.weights.clone())
            .map(Into::into),
        wcs,
        oracle_choice: run
            .aggregate(AggregateMethod::Oracle)
            .and_then(|a| a.oracle_choice)
            .map(|s| s.as_str().to_string()),
    };
    Ok(if scored {
        ClusterOutcome::Scored(record)
    } else {
        ClusterOutcome::Unscored(record)
    })
}

fn mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values
        .into_iter()
        .fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

/// Item ids sorted by descending value, ties to the earlier item.
fn order_by_value(values: &[f64]) -> Vec<usize> {
    RankList::from_scores("order", values.to_vec()).order()
}

fn assemble(per_cluster: BTreeMap<String, ClusterOutcome>, config: &RunConfig) -> EvalReport {
    let rows = config.row_ids();
    let scored: Vec<(&String, &ClusterRecord)> = per_cluster
        .iter()
        .filter_map(|(id, o)| o.scored().map(|r| (id, r)))
        .collect();
    let mut averages = BTreeMap::new();
    if !scored.is_empty() {
        for row in &rows {
            let avg = (0..config.rouge_orders.len())
                .map(|col| mean(scored.iter().map(|(_, r)| r.scores[row][col])).unwrap_or(0.0))
                .collect();
            averages.insert(row.clone(), avg);
        }
    }
    let stats = compute_stats(&per_cluster, &scored, &rows, &averages, config);
    EvalReport {
        corpus: config.corpus_label(),
        rouge_orders: config.rouge_orders.clone(),
        rows,
        averages,
        scored_clusters: scored.len(),
        per_cluster,
        stats,
    }
}

fn compute_stats(
    per_cluster: &BTreeMap<String, ClusterOutcome>,
    scored: &[(&String, &ClusterRecord)],
    rows: &[String],
    averages: &BTreeMap<String, Vec<f64>>,
    config: &RunConfig,
) -> ReportStats {
    let stats_order = config.stats_order();
    let col = config
        .rouge_orders
        .iter()
        .position(|&o| o == stats_order)
        .expect("stats order is configured");
    let candidates: Vec<String> = config.systems.iter().map(|s| s.as_str().to_string()).collect();
    let names = |order: &[usize]| order.iter().map(|&i| candidates[i].clone()).collect::<Vec<_>>();

    let mut mean_pseudo_weights = BTreeMap::new();
    let (mut true_order, mut pseudo_order, mut kendall) = (Vec::new(), Vec::new(), None);
    let mut cluster_tau = BTreeMap::new();
    if candidates.len() >= 2 && !scored.is_empty() {
        let true_means: Vec<f64> = candidates.iter().map(|c| averages[c][col]).collect();
        let pseudo_means: Vec<f64> = (0..candidates.len())
            .map(|i| {
                mean(scored.iter().filter_map(|(_, r)| r.pseudo_weights.as_ref().map(|w| w[i])))
                    .unwrap_or(0.0)
            })
            .collect();
        for (c, &w) in candidates.iter().zip(&pseudo_means) {
            mean_pseudo_weights.insert(c.clone(), w);
        }
        let t = order_by_value(&true_means);
        let p = order_by_value(&pseudo_means);
        kendall = kendall_tau(&t, &p).ok();
        true_order = names(&t);
        pseudo_order = names(&p);
        for (id, r) in scored {
            if let Some(w) = &r.pseudo_weights {
                let truth: Vec<f64> = candidates.iter().map(|c| r.scores[c][col]).collect();
                if let Ok(tau) = kendall_tau(&order_by_value(&truth), &order_by_value(w)) {
                    cluster_tau.insert((*id).clone(), tau);
                }
            }
        }
    }
    let mean_cluster_tau = mean(cluster_tau.values().copied());

    let per_row = |row: &str, c: usize| -> Vec<f64> {
        scored.iter().map(|(_, r)| r.scores[row][c]).collect()
    };
    let paired = |a: &str, b: &str, c: usize| -> Option<PairedSignTest> {
        sign_test(&per_row(a, c), &per_row(b, c)).ok().map(|test| PairedSignTest {
            a: a.to_string(),
            b: b.to_string(),
            order: config.rouge_orders[c],
            test,
        })
    };
    let ranked_rows = |c: usize| -> Vec<&String> {
        let values: Vec<f64> = rows.iter().map(|r| averages[r][c]).collect();
        order_by_value(&values).into_iter().map(|i| &rows[i]).collect()
    };

    let mut focus_tests = Vec::new();
    let mut column_tests = Vec::new();
    if rows.len() >= 2 && !scored.is_empty() {
        let cwcs = AggregateMethod::Cwcs.as_str();
        let focus = rows
            .iter()
            .find(|r| r.as_str() == cwcs)
            .unwrap_or_else(|| ranked_rows(col)[0]);
        focus_tests = rows
            .iter()
            .filter(|r| *r != focus)
            .filter_map(|r| paired(focus, r, col))
            .collect();
        column_tests = (0..config.rouge_orders.len())
            .filter_map(|c| {
                let ranked = ranked_rows(c);
                paired(ranked[0], ranked[1], c)
            })
            .collect();
    }

    ReportStats {
        stats_order,
        true_order,
        pseudo_order,
        mean_pseudo_weights,
        kendall_tau: kendall,
        cluster_tau,
        mean_cluster_tau,
        focus_tests,
        column_tests,
        mean_duplicates: mean(
            per_cluster
                .values()
                .filter_map(ClusterOutcome::record)
                .map(|r| r.duplicates as f64),
        ),
    }
}

/// Writes `text` to `path`, creating parent directories.
pub(crate) fn write_file(path: &Path, text: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io)?;
    }
    std::fs::write(path, text).map_err(io)
}
