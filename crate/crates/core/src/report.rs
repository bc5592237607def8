//! Result serialization: a JSON array for machines, an aligned table for
//! humans. Row order is the miner's (descending support, then pattern).

use serde::Serialize;

use crate::dataset::NumericalDataset;
use crate::miner::{MiningOutcome, MiningResult};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Serialize)]
struct ReportItem {
    attribute: String,
    variation: String,
}

#[derive(Serialize)]
struct ReportSupport {
    numerator: u64,
    denominator: u64,
}

#[derive(Serialize)]
struct ReportRecord {
    items: Vec<ReportItem>,
    support: ReportSupport,
    witness: Vec<String>,
    closed: Option<bool>,
}

fn record<S: Scalar>(result: &MiningResult, ds: &NumericalDataset<S>) -> ReportRecord {
    let names = ds.attribute_names();
    let ids = ds.transaction_ids();
    ReportRecord {
        items: result
            .pattern
            .items()
            .iter()
            .map(|item| ReportItem {
                attribute: names[item.attribute].clone(),
                variation: item.variation.symbol().to_string(),
            })
            .collect(),
        // The chain length over n, unreduced, as the support is defined.
        support: ReportSupport {
            numerator: result.witness.len() as u64,
            denominator: ds.num_transactions() as u64,
        },
        witness: result.witness.iter().map(|&t| ids[t].clone()).collect(),
        closed: result.closed,
    }
}

pub fn to_json<S: Scalar>(outcome: &MiningOutcome, ds: &NumericalDataset<S>) -> String {
    let records: Vec<ReportRecord> = outcome.results.iter().map(|r| record(r, ds)).collect();
    let mut text =
        serde_json::to_string_pretty(&records).expect("report records always serialize");
    text.push('\n');
    text
}

pub fn to_text<S: Scalar>(outcome: &MiningOutcome, ds: &NumericalDataset<S>) -> String {
    if outcome.results.is_empty() {
        return "(no frequent patterns)\n".to_string();
    }
    let ids = ds.transaction_ids();
    let show_closed = outcome.results.iter().any(|r| r.closed.is_some());
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(outcome.results.len() + 1);
    let mut header = vec![
        "pattern".to_string(),
        "support".to_string(),
        "witness".to_string(),
    ];
    if show_closed {
        header.push("closed".to_string());
    }
    rows.push(header);
    for result in &outcome.results {
        let mut row = vec![
            result.pattern.display_with(ds.attribute_names()),
            format!("{}/{}", result.witness.len(), outcome.n),
            result
                .witness
                .iter()
                .map(|&t| ids[t].as_str())
                .collect::<Vec<_>>()
                .join(","),
        ];
        if show_closed {
            row.push(match result.closed {
                Some(true) => "yes".to_string(),
                Some(false) => "no".to_string(),
                None => "unknown".to_string(),
            });
        }
        rows.push(row);
    }
    let columns = rows[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if c + 1 < columns {
                for _ in cell.len()..widths[c] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn report<S: Scalar>(
    outcome: &MiningOutcome,
    ds: &NumericalDataset<S>,
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Json => to_json(outcome, ds),
        ReportFormat::Text => to_text(outcome, ds),
    }
}
