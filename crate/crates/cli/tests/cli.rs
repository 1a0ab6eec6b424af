use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/mini")
}

fn summ(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_summ"))
        .args(args)
        .env_remove("RUST_LOG")
        .output()
        .expect("spawn summ")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_writes_csv_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let corpus = fixture();
    let o = summ(&[
        "run",
        "--corpus",
        corpus.to_str().unwrap(),
        "--format",
        "duc-dir",
        "--budget",
        "words:40",
        "--systems",
        "lexrank,textrank,centroid,freqsum,topicsum,greedykl",
        "--aggregators",
        "borda,wcs,cwcs,oracle",
        "--lambda",
        "0.5",
        "--rouge",
        "1,2,4",
        "--out",
        out.to_str().unwrap(),
        "--emit",
        "csv",
        "--jobs",
        "2",
        "--corpus-name",
        "mini",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "system,mini R-1,mini R-2,mini R-4");
    assert_eq!(lines.len(), 11);
    assert!(lines.iter().any(|l| l.starts_with("C-WCS,")));
}

#[test]
fn run_prints_to_stdout_without_out() {
    let corpus = fixture();
    let o = summ(&["run", "--corpus", corpus.to_str().unwrap(), "--aggregators", "none", "--emit", "markdown"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| System") && !l.starts_with("| ---")).count(), 6);
}

#[test]
fn json_output_is_identical_across_job_counts() {
    let corpus = fixture();
    let run = |jobs: &str| {
        let o = summ(&["run", "--corpus", corpus.to_str().unwrap(), "--emit", "json", "--jobs", jobs]);
        assert!(o.status.success());
        stdout(&o)
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let corpus = fixture();
    std::fs::write(
        &cfg,
        serde_json::json!({
            "corpus": corpus,
            "systems": ["lexrank", "freqsum"],
            "aggregators": ["borda"],
            "emit": "markdown",
        })
        .to_string(),
    )
    .unwrap();
    let o = summ(&["run", "--config", cfg.to_str().unwrap(), "--emit", "csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("\nBorda,"));
}

#[test]
fn summarize_prints_sentences() {
    let corpus = fixture();
    let o = summ(&[
        "summarize",
        "--corpus",
        corpus.to_str().unwrap(),
        "--cluster",
        "d02_election",
        "--aggregator",
        "cwcs",
        "--budget",
        "words:60",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let words: usize = text.split_whitespace().count();
    assert!(words > 0 && words <= 60);
    // every line is a sentence from the cluster's documents
    let docs: String = std::fs::read_dir(corpus.join("d02_election/docs"))
        .unwrap()
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    for line in text.lines() {
        assert!(docs.contains(line), "{line}");
    }
}

#[test]
fn exit_codes() {
    let corpus = fixture();
    let corpus = corpus.to_str().unwrap();
    assert_eq!(summ(&["--help"]).status.code(), Some(0));
    assert_eq!(summ(&["run", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(summ(&["run", "--corpus", corpus, "--budget", "lines:3"]).status.code(), Some(1));
    assert_eq!(summ(&["run", "--corpus", corpus, "--lambda", "1.0"]).status.code(), Some(1));
    assert_eq!(summ(&["run", "--corpus", corpus, "--systems", "bogus"]).status.code(), Some(1));
    assert_eq!(summ(&["run"]).status.code(), Some(1));
    assert_eq!(summ(&["run", "--corpus", "/definitely/missing"]).status.code(), Some(2));
    assert_eq!(
        summ(&["summarize", "--corpus", corpus, "--cluster", "nope"]).status.code(),
        Some(2)
    );
    // one cluster on its own has no TopicSum background
    let single = format!("{corpus}/d01_flood");
    assert_eq!(summ(&["run", "--corpus", &single]).status.code(), Some(3));
}
