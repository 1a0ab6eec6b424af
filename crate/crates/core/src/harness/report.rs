use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{row_display_name, write_file, EvalReport};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Markdown,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "markdown" | "md" => Ok(Self::Markdown),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown report format `{other}` (expected csv, markdown or json)"
            ))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Markdown => "markdown",
            Self::Json => "json",
        })
    }
}

const SIGNIFICANCE: f64 = 0.05;

struct Column<'a> {
    report: &'a EvalReport,
    order: usize,
    header: String,
    best: Option<&'a str>,
    significant: bool,
}

impl<'a> Column<'a> {
    fn all(reports: &'a [EvalReport]) -> Vec<Column<'a>> {
        let mut out = Vec::new();
        for report in reports {
            for &n in &report.rouge_orders {
                let mut best: Option<(&str, f64)> = None;
                for row in &report.rows {
                    if let Some(v) = report.average(row, n) {
                        if best.is_none_or(|(_, b)| v > b) {
                            best = Some((row, v));
                        }
                    }
                }
                let best = best.map(|(r, _)| r);
                let significant = report.stats.column_tests.iter().any(|t| {
                    t.order == n && Some(t.a.as_str()) == best && t.test.p_value < SIGNIFICANCE
                });
                out.push(Column {
                    report,
                    order: n,
                    header: format!("{} R-{n}", report.corpus),
                    best,
                    significant,
                });
            }
        }
        out
    }

    fn value(&self, row: &str) -> Option<f64> {
        self.report.average(row, self.order)
    }
}

/// Rows of every report, first appearance first.
fn union_rows(reports: &[EvalReport]) -> Vec<&str> {
    let mut rows: Vec<&str> = Vec::new();
    for r in reports {
        for row in &r.rows {
            if !rows.contains(&row.as_str()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Renders one or more corpora side by side; each corpus contributes one
/// column per ROUGE order. JSON is only defined for a single report.
pub fn render_table(reports: &[EvalReport], format: ReportFormat) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::InvalidArgument("no reports to render".into()));
    }
    let columns = Column::all(reports);
    let rows = union_rows(reports);
    match format {
        ReportFormat::Csv => render_csv(&rows, &columns),
        ReportFormat::Markdown => Ok(render_markdown(&rows, &columns)),
        ReportFormat::Json => match reports {
            [single] => single.to_json(),
            _ => Err(Error::InvalidArgument(
                "json output holds exactly one report".into(),
            )),
        },
    }
}

pub fn render_report(report: &EvalReport, format: ReportFormat) -> Result<String> {
    render_table(std::slice::from_ref(report), format)
}

pub fn emit_report(report: &EvalReport, format: ReportFormat, path: &Path) -> Result<()> {
    write_file(path, &render_report(report, format)?)
}

fn render_csv(rows: &[&str], columns: &[Column<'_>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["system".to_string()];
    header.extend(columns.iter().map(|c| c.header.clone()));
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row_display_name(row)];
        record.extend(
            columns
                .iter()
                .map(|c| c.value(row).map(|v| format!("{v:.4}")).unwrap_or_default()),
        );
        w.write_record(&record)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv buffer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn render_markdown(rows: &[&str], columns: &[Column<'_>]) -> String {
    let mut out = String::from("| System |");
    for c in columns {
        out.push_str(&format!(" {} |", c.header));
    }
    out.push_str("\n| --- |");
    for _ in columns {
        out.push_str(" ---: |");
    }
    out.push('\n');
    for row in rows {
        out.push_str(&format!("| {} |", row_display_name(row)));
        for c in columns {
            let cell = match c.value(row) {
                None => String::new(),
                Some(v) if c.best == Some(*row) => {
                    let dagger = if c.significant { "†" } else { "" };
                    format!("**{v:.4}**{dagger}")
                }
                Some(v) => format!("{v:.4}"),
            };
            out.push_str(&format!(" {cell} |"));
        }
        out.push('\n');
    }
    out.push_str("\nBold: best in column. †: significantly better than the runner-up (two-sided sign test, p < 0.05).\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{ClusterOutcome, ClusterRecord, PairedSignTest, ReportStats, SignTest};
    use std::collections::BTreeMap;

    fn report(corpus: &str) -> EvalReport {
        let mut averages = BTreeMap::new();
        averages.insert("lexrank".to_string(), vec![0.3, 0.06, 0.01]);
        averages.insert("cwcs".to_string(), vec![0.39, 0.1, 0.02]);
        let record = ClusterRecord {
            sentences: 10,
            duplicates: 1,
            scores: averages.clone(),
            summaries: BTreeMap::new(),
            pseudo_weights: None,
            cwcs_weights: None,
            wcs: None,
            oracle_choice: None,
        };
        EvalReport {
            corpus: corpus.into(),
            rouge_orders: vec![1, 2, 4],
            rows: vec!["lexrank".into(), "cwcs".into()],
            per_cluster: [("c1".to_string(), ClusterOutcome::Scored(record))].into(),
            averages,
            scored_clusters: 1,
            stats: ReportStats {
                stats_order: 1,
                true_order: vec![],
                pseudo_order: vec![],
                mean_pseudo_weights: BTreeMap::new(),
                kendall_tau: None,
                cluster_tau: BTreeMap::new(),
                mean_cluster_tau: None,
                focus_tests: vec![],
                column_tests: vec![PairedSignTest {
                    a: "cwcs".into(),
                    b: "lexrank".into(),
                    order: 1,
                    test: SignTest {
                        p_value: 0.01,
                        wins_a: 10,
                        wins_b: 0,
                        ties: 0,
                    },
                }],
                mean_duplicates: Some(1.0),
            },
        }
    }

    #[test]
    fn csv_shape() {
        let text = render_report(&report("DUC"), ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "system,DUC R-1,DUC R-2,DUC R-4");
        assert_eq!(lines[2], "C-WCS,0.3900,0.1000,0.0200");
    }

    #[test]
    fn markdown_marks_best_and_significance() {
        let text = render_report(&report("DUC"), ReportFormat::Markdown).unwrap();
        assert!(text.contains("| C-WCS | **0.3900**† | **0.1000** | **0.0200** |"));
        assert!(text.contains("| LexRank | 0.3000 |"));
        assert_eq!(text.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| System") && !l.starts_with("| ---")).count(), 2);
    }

    #[test]
    fn two_corpora_side_by_side() {
        let text = render_table(&[report("A"), report("B")], ReportFormat::Csv).unwrap();
        assert!(text.starts_with("system,A R-1,A R-2,A R-4,B R-1,B R-2,B R-4\n"));
        assert!(render_table(&[report("A"), report("B")], ReportFormat::Json).is_err());
    }

    #[test]
    fn json_round_trip_and_emit() {
        let r = report("DUC");
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out/report.json");
        emit_report(&r, ReportFormat::Json, &path).unwrap();
        let back = EvalReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("md".parse::<ReportFormat>().unwrap(), ReportFormat::Markdown);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
