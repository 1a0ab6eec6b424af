use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use consensus_summ::consensus::{AggregateMethod, WcsConfig};
use consensus_summ::corpus::{load_corpus, CorpusFormat};
use consensus_summ::harness::{
    background_for, corpus_counts, emit_report, render_report, run_evaluation, summarize_cluster,
    ReportFormat, RunConfig,
};
use consensus_summ::summarizers::{LengthBudget, SystemId};
use log::info;

/// Consensus-based extractive multi-document summarization.
#[derive(Parser, Debug)]
#[command(name = "summ", version, about)]
struct Cli {
    /// More log output (-v info, -vv debug). RUST_LOG overrides.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate all systems and aggregators on a corpus and emit a report.
    Run(RunArgs),
    /// Print one cluster's summary to stdout.
    Summarize(SummarizeArgs),
}

/// Options shared by both subcommands. Each overrides the config file.
#[derive(Args, Debug)]
struct CommonArgs {
    /// JSON run configuration; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Corpus root (duc-dir) or file (jsonl).
    #[arg(long)]
    corpus: Option<PathBuf>,

    #[arg(long, value_parser = clap::value_parser!(CorpusFormat))]
    format: Option<CorpusFormat>,

    /// Length budget, `words:N` or `bytes:N`.
    #[arg(long, value_parser = clap::value_parser!(LengthBudget))]
    budget: Option<LengthBudget>,

    /// Comma-separated candidate systems.
    #[arg(long)]
    systems: Option<String>,

    /// WCS regularization weight in [0, 1).
    #[arg(long)]
    lambda: Option<f64>,

    /// Cosine cap for sentences in aggregate summaries.
    #[arg(long)]
    redundancy_cap: Option<f64>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Comma-separated aggregators (borda,wcs,cwcs,oracle), or `none`.
    #[arg(long)]
    aggregators: Option<String>,

    /// Comma-separated ROUGE orders.
    #[arg(long)]
    rouge: Option<String>,

    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_parser = clap::value_parser!(ReportFormat))]
    emit: Option<ReportFormat>,

    /// Worker threads (default: one per core).
    #[arg(long)]
    jobs: Option<usize>,

    /// Column label for the corpus in tables.
    #[arg(long)]
    corpus_name: Option<String>,

    /// ROUGE order maximized by the Oracle.
    #[arg(long)]
    oracle_order: Option<usize>,
}

#[derive(Args, Debug)]
struct SummarizeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Cluster id (directory name or jsonl `cluster_id`).
    #[arg(long)]
    cluster: String,

    /// Aggregator, or a single system id to print its candidate summary.
    #[arg(long, default_value = "cwcs")]
    aggregator: String,
}

/// A problem with the invocation rather than the data.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_list<T>(raw: &str, what: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr,
    T::Err: fmt::Display,
{
    if raw.trim() == "none" {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| usage(format!("bad {what} `{s}`: {e}"))))
        .collect()
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))
        .map_err(|e| usage(format!("{e:#}")))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("invalid config {}: {e}", path.display())))
}

fn apply_common(config: &mut RunConfig, args: &CommonArgs) -> Result<()> {
    if let Some(corpus) = &args.corpus {
        config.corpus = corpus.clone();
    }
    if let Some(format) = args.format {
        config.format = format;
    }
    if let Some(budget) = args.budget {
        config.summarizer.budget = budget;
    }
    if let Some(systems) = &args.systems {
        config.systems = parse_list(systems, "system")?;
    }
    if let Some(lambda) = args.lambda {
        config.wcs = WcsConfig::new(lambda, config.wcs.tol(), config.wcs.max_iter())
            .map_err(|e| usage(e.to_string()))?;
    }
    if let Some(cap) = args.redundancy_cap {
        config.redundancy_cap = Some(cap);
    }
    if config.corpus.as_os_str().is_empty() {
        return Err(usage("no corpus given (use --corpus or the config file)"));
    }
    Ok(())
}

fn validated(config: RunConfig) -> Result<RunConfig> {
    config.validate().map_err(|e| usage(e.to_string()))?;
    Ok(config)
}

fn run(args: RunArgs) -> Result<()> {
    let mut config = load_config(args.common.config.as_deref())?;
    apply_common(&mut config, &args.common)?;
    if let Some(aggregators) = &args.aggregators {
        config.aggregators = parse_list(aggregators, "aggregator")?;
    }
    if let Some(orders) = &args.rouge {
        config.rouge_orders = parse_list(orders, "ROUGE order")?;
    }
    if let Some(out) = args.out {
        config.output = Some(out);
    }
    if let Some(emit) = args.emit {
        config.emit = emit;
    }
    if let Some(jobs) = args.jobs {
        config.jobs = Some(jobs);
    }
    if let Some(name) = args.corpus_name {
        config.corpus_name = Some(name);
    }
    if let Some(n) = args.oracle_order {
        config.oracle_order = n;
    }
    let config = validated(config)?;

    let report = run_evaluation(&config)?;
    info!(
        "scored {} clusters ({} unscored, {} failed)",
        report.scored_clusters,
        report.unscored().count(),
        report.failures().count()
    );
    match &config.output {
        Some(path) => {
            emit_report(&report, config.emit, path)?;
            info!("wrote {} report to {}", config.emit, path.display());
        }
        None => print!("{}", render_report(&report, config.emit)?),
    }
    Ok(())
}

fn summarize(args: SummarizeArgs) -> Result<()> {
    let mut config = load_config(args.common.config.as_deref())?;
    apply_common(&mut config, &args.common)?;
    let target = if let Ok(m) = args.aggregator.parse::<AggregateMethod>() {
        config.aggregators = vec![m];
        Ok(m)
    } else if let Ok(s) = args.aggregator.parse::<SystemId>() {
        config.aggregators.clear();
        if !config.systems.contains(&s) {
            config.systems.push(s);
        }
        Err(s)
    } else {
        return Err(usage(format!(
            "unknown aggregator or system `{}`",
            args.aggregator
        )));
    };
    let config = validated(config)?;

    let clusters = load_corpus(&config.corpus, config.format, &config.tokenization)?;
    let cluster = clusters
        .iter()
        .find(|c| c.cluster_id == args.cluster)
        .ok_or_else(|| anyhow!(consensus_summ::Error::InvalidArgument(format!(
            "cluster `{}` not found in {}",
            args.cluster,
            config.corpus.display()
        ))))?;
    let background = background_for(&corpus_counts(&clusters), cluster);
    let run = summarize_cluster(cluster, &background, &config)?;
    let summary = match target {
        Ok(method) => {
            &run.aggregate(method)
                .ok_or(consensus_summ::Error::NoReferences)
                .with_context(|| format!("{} needs reference summaries", method.display_name()))?
                .summary
        }
        Err(system) => &run
            .candidates
            .iter()
            .find(|(s, _)| *s == system)
            .expect("system was added to the run")
            .1
            .summary,
    };
    let text = summary.text(cluster);
    if !text.is_empty() {
        println!("{text}");
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 1;
    }
    match err.downcast_ref::<consensus_summ::Error>() {
        Some(consensus_summ::Error::NoSuccessfulClusters) => 3,
        Some(consensus_summ::Error::InvalidConfig(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Summarize(args) => summarize(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
