//! On-disk corpus layouts.
//!
//! `duc-dir`: `<root>/<cluster_id>/docs/*.txt`, one document per file, with
//! optional `<root>/<cluster_id>/models/*.txt` references (file stem is the
//! author id).
//!
//! `jsonl`: one cluster per line,
//! `{"cluster_id": .., "documents": [{"id": .., "text": ..}], "references": [{"author": .., "text": ..}]}`.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{DocumentCluster, TokenizationConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorpusFormat {
    #[serde(rename = "duc-dir")]
    DucDir,
    #[serde(rename = "jsonl")]
    Jsonl,
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "duc-dir" => Ok(Self::DucDir),
            "jsonl" => Ok(Self::Jsonl),
            other => Err(Error::InvalidConfig(format!(
                "unknown corpus format `{other}` (expected duc-dir or jsonl)"
            ))),
        }
    }
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::DucDir => "duc-dir",
            Self::Jsonl => "jsonl",
        })
    }
}

#[derive(Deserialize)]
struct JsonDocument {
    id: String,
    text: String,
}

#[derive(Deserialize)]
struct JsonReference {
    author: String,
    text: String,
}

#[derive(Deserialize)]
struct JsonCluster {
    cluster_id: String,
    documents: Vec<JsonDocument>,
    #[serde(default)]
    references: Vec<JsonReference>,
}

fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|_| Error::InvalidUtf8 {
        path: path.to_path_buf(),
    })
}

fn read_dir_sorted(dir: &Path) -> Result<Vec<PathBuf>> {
    let io_err = |source| Error::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut entries = fs::read_dir(dir)
        .map_err(io_err)?
        .map(|e| e.map(|e| e.path()).map_err(io_err))
        .collect::<Result<Vec<_>>>()?;
    entries.sort();
    Ok(entries)
}

fn text_files(dir: &Path) -> Result<Vec<(String, String)>> {
    read_dir_sorted(dir)?
        .into_iter()
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "txt"))
        .map(|p| {
            let stem = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((stem, read_utf8(&p)?))
        })
        .collect()
}

fn load_duc_cluster(dir: &Path, config: &TokenizationConfig) -> Result<DocumentCluster> {
    let cluster_id = dir
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let docs_dir = dir.join("docs");
    if !docs_dir.is_dir() {
        return Err(Error::Io {
            path: docs_dir,
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "missing docs directory"),
        });
    }
    let documents = text_files(&docs_dir)?;
    let models_dir = dir.join("models");
    let references = if models_dir.is_dir() {
        text_files(&models_dir)?
    } else {
        Vec::new()
    };
    DocumentCluster::from_texts(cluster_id, documents, references, config)
}

fn load_jsonl(path: &Path, config: &TokenizationConfig) -> Result<Vec<DocumentCluster>> {
    let content = read_utf8(path)?;
    let mut clusters = Vec::new();
    for (idx, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonCluster = serde_json::from_str(line).map_err(|e| Error::Malformed {
            path: path.to_path_buf(),
            line: idx + 1,
            message: e.to_string(),
        })?;
        let documents = record.documents.into_iter().map(|d| (d.id, d.text));
        let references = record.references.into_iter().map(|r| (r.author, r.text));
        clusters.push(DocumentCluster::from_texts(
            record.cluster_id,
            documents,
            references,
            config,
        )?);
    }
    Ok(clusters)
}

/// Loads a single cluster: a cluster directory for `duc-dir`, or a jsonl
/// file holding exactly one record.
pub fn load_cluster(
    path: &Path,
    format: CorpusFormat,
    config: &TokenizationConfig,
) -> Result<DocumentCluster> {
    match format {
        CorpusFormat::DucDir => load_duc_cluster(path, config),
        CorpusFormat::Jsonl => {
            let mut clusters = load_jsonl(path, config)?;
            if clusters.len() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "{} holds {} clusters; expected exactly one",
                    path.display(),
                    clusters.len()
                )));
            }
            Ok(clusters.remove(0))
        }
    }
}

/// Loads every cluster of a corpus, sorted by cluster id.
///
/// For `duc-dir`, `path` is either the corpus root or a single cluster
/// directory (one containing `docs/`).
pub fn load_corpus(
    path: &Path,
    format: CorpusFormat,
    config: &TokenizationConfig,
) -> Result<Vec<DocumentCluster>> {
    let mut clusters = match format {
        CorpusFormat::Jsonl => load_jsonl(path, config)?,
        CorpusFormat::DucDir if path.join("docs").is_dir() => vec![load_duc_cluster(path, config)?],
        CorpusFormat::DucDir => read_dir_sorted(path)?
            .into_iter()
            .filter(|p| p.is_dir())
            .map(|p| load_duc_cluster(&p, config))
            .collect::<Result<Vec<_>>>()?,
    };
    clusters.sort_by(|a, b| a.cluster_id.cmp(&b.cluster_id));
    Ok(clusters)
}
