//! CSV and JSON reports.
//!
//! Each record expands to one row per algorithm, one `exact` row when the
//! exact solver ran, and one `bound:<name>` row per applicable bound. The
//! JSON report holds the same rows under `rows`, each optionally carrying
//! a note and the sampling transcript, followed by the summary.

use serde::Serialize;

use crate::bounds::format_rational;
use crate::error::{Error, Result};
use crate::harness::verify::{Summary, VerificationRecord};
use crate::randomized::SamplingTranscript;

pub const CSV_HEADER: &str = "graph_id,n_a,n_b,m,d_avg,delta_a,n0,n1,n2,n3,algorithm,guarantee,constructed,exact,optimal,pass";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::InvalidInput(format!(
                "unknown report format {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub graph_id: String,
    pub n_a: usize,
    pub n_b: usize,
    pub m: usize,
    pub d_avg: String,
    pub delta_a: usize,
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub algorithm: String,
    pub guarantee: Option<String>,
    pub constructed: Option<usize>,
    pub exact: Option<usize>,
    pub optimal: Option<bool>,
    pub pass: &'static str,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    #[serde(flatten)]
    row: &'a ReportRow,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transcript: Option<&'a SamplingTranscript>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    rows: Vec<JsonRow<'a>>,
    summary: Summary,
}

/// Rows of one record, with the note and transcript of each.
fn record_rows(
    r: &VerificationRecord,
) -> Vec<(ReportRow, Option<&str>, Option<&SamplingTranscript>)> {
    let exact = r.exact.map(|e| e.order);
    let optimal = r.exact.map(|e| e.optimal);
    let row = |algorithm: String, guarantee: Option<String>, constructed, pass| ReportRow {
        graph_id: r.graph_id.clone(),
        n_a: r.n_a,
        n_b: r.n_b,
        m: r.m,
        d_avg: format_rational(r.d_avg),
        delta_a: r.delta_a,
        n0: r.profile[0],
        n1: r.profile[1],
        n2: r.profile[2],
        n3: r.profile[3],
        algorithm,
        guarantee,
        constructed,
        exact,
        optimal,
        pass,
    };
    let mut out = Vec::new();
    for e in &r.entries {
        out.push((
            row(
                e.algorithm.tag().into(),
                e.guarantee.map(format_rational),
                e.constructed,
                e.outcome.tag(),
            ),
            e.note.as_deref(),
            e.transcript.as_ref(),
        ));
    }
    if r.exact.is_some() {
        let valid = r
            .checks
            .iter()
            .find(|c| c.name == "exact:valid")
            .map(|c| c.outcome.tag())
            .unwrap_or("skip");
        out.push((row("exact".into(), None, None, valid), None, None));
    }
    for b in &r.bounds {
        let name = format!("bound:{}", b.bound.name);
        out.push((
            row(name, Some(b.bound.value.to_string()), None, b.outcome.tag()),
            None,
            None,
        ));
    }
    out
}

pub fn report_rows(records: &[VerificationRecord]) -> Vec<ReportRow> {
    records
        .iter()
        .flat_map(|r| record_rows(r).into_iter().map(|(row, _, _)| row))
        .collect()
}

pub fn write_csv(records: &[VerificationRecord]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(true)
        .from_writer(Vec::new());
    let rows = report_rows(records);
    if rows.is_empty() {
        return Ok(format!("{CSV_HEADER}\n"));
    }
    for row in &rows {
        w.serialize(row)
            .map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn write_json(records: &[VerificationRecord], summary: Summary) -> Result<String> {
    let expanded: Vec<_> = records.iter().flat_map(record_rows).collect();
    let report = JsonReport {
        rows: expanded
            .iter()
            .map(|(row, note, transcript)| JsonRow {
                row,
                note: *note,
                transcript: *transcript,
            })
            .collect(),
        summary,
    };
    let mut text = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::InvalidInput(format!("json: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn render(
    records: &[VerificationRecord],
    summary: Summary,
    format: ReportFormat,
) -> Result<String> {
    match format {
        ReportFormat::Csv => write_csv(records),
        ReportFormat::Json => write_json(records, summary),
    }
}
