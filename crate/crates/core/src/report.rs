//! Machine-readable output formats.
//!
//! Dollar amounts are written with 6 decimals; [`round_money`] is the exact
//! rounding a reader observes. Ratios and predicted views are written in
//! shortest round-trip form, with `inf` for an infinite ratio.

use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::policy::{PeriodReport, PolicyDecision, PolicyKind, Verdict};
use crate::simulator::{ExperimentReport, ExperimentRow};
use crate::workload::VideoId;

pub const SUMMARY_HEADER: [&str; 6] = [
    "policy",
    "storage_dollars",
    "transcode_dollars",
    "total_dollars",
    "kept",
    "deleted",
];
pub const DECISIONS_HEADER: [&str; 4] = ["video_id", "verdict", "ratio", "predicted_views"];
pub const EXPERIMENT_HEADER: [&str; 5] = [
    "fav_fraction",
    "policy",
    "mean_total_dollars",
    "mean_storage_dollars",
    "mean_transcode_dollars",
];

pub fn format_money(x: f64) -> String {
    format!("{x:.6}")
}

pub fn round_money(x: f64) -> f64 {
    format_money(x).parse().unwrap_or(x)
}

/// A [`PeriodReport`] without its per-video decisions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodSummary {
    pub policy: PolicyKind,
    pub storage_dollars: f64,
    pub transcode_dollars: f64,
    pub total_dollars: f64,
    pub kept: usize,
    pub deleted: usize,
}

impl PeriodSummary {
    pub fn rounded(report: &PeriodReport) -> Self {
        PeriodSummary {
            policy: report.policy,
            storage_dollars: round_money(report.storage_dollars),
            transcode_dollars: round_money(report.transcode_dollars),
            total_dollars: round_money(report.total_dollars),
            kept: report.kept_count,
            deleted: report.deleted_count,
        }
    }
}

fn check_header<R: Read>(r: &mut csv::Reader<R>, expected: &[&str]) -> Result<()> {
    let found = r.headers()?;
    if found.iter().ne(expected.iter().copied()) {
        return Err(Error::Input(format!(
            "expected header `{}`, found `{}`",
            expected.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, name: &str) -> Result<T> {
    let raw = rec.get(i).unwrap_or("");
    raw.parse()
        .map_err(|_| Error::Input(format!("column {name}: cannot parse `{raw}`")))
}

fn finish<W: Write>(mut w: csv::Writer<W>) -> Result<()> {
    w.flush().map_err(|e| Error::io("<csv>", e))
}

pub fn write_summaries_csv<W: Write>(reports: &[PeriodReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for r in reports {
        w.write_record([
            r.policy.name().to_owned(),
            format_money(r.storage_dollars),
            format_money(r.transcode_dollars),
            format_money(r.total_dollars),
            r.kept_count.to_string(),
            r.deleted_count.to_string(),
        ])?;
    }
    finish(w)
}

pub fn read_summaries_csv<R: Read>(input: R) -> Result<Vec<PeriodSummary>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &SUMMARY_HEADER)?;
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok(PeriodSummary {
                policy: field(&rec, 0, "policy")?,
                storage_dollars: field(&rec, 1, "storage_dollars")?,
                transcode_dollars: field(&rec, 2, "transcode_dollars")?,
                total_dollars: field(&rec, 3, "total_dollars")?,
                kept: field(&rec, 4, "kept")?,
                deleted: field(&rec, 5, "deleted")?,
            })
        })
        .collect()
}

pub fn write_decisions_csv<W: Write>(decisions: &[PolicyDecision], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DECISIONS_HEADER)?;
    for d in decisions {
        w.write_record([
            d.video_id.as_str().to_owned(),
            d.verdict.to_string(),
            d.estimated_ratio.to_string(),
            d.predicted_views.to_string(),
        ])?;
    }
    finish(w)
}

pub fn read_decisions_csv<R: Read>(input: R) -> Result<Vec<PolicyDecision>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &DECISIONS_HEADER)?;
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok(PolicyDecision {
                video_id: VideoId::new(rec.get(0).unwrap_or("")),
                verdict: field::<Verdict>(&rec, 1, "verdict")?,
                estimated_ratio: field(&rec, 2, "ratio")?,
                predicted_views: field(&rec, 3, "predicted_views")?,
            })
        })
        .collect()
}

pub fn write_experiment_csv<W: Write>(report: &ExperimentReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EXPERIMENT_HEADER)?;
    for row in &report.rows {
        w.write_record([
            row.fav_fraction.to_string(),
            row.policy.name().to_owned(),
            format_money(row.mean_total_dollars),
            format_money(row.mean_storage_dollars),
            format_money(row.mean_transcode_dollars),
        ])?;
    }
    finish(w)
}

pub fn read_experiment_csv<R: Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, &EXPERIMENT_HEADER)?;
    r.records()
        .map(|rec| {
            let rec = rec?;
            Ok(ExperimentRow {
                fav_fraction: field(&rec, 0, "fav_fraction")?,
                policy: field(&rec, 1, "policy")?,
                mean_total_dollars: field(&rec, 2, "mean_total_dollars")?,
                mean_storage_dollars: field(&rec, 3, "mean_storage_dollars")?,
                mean_transcode_dollars: field(&rec, 4, "mean_transcode_dollars")?,
            })
        })
        .collect()
}

/// Rows as they read back from [`write_experiment_csv`].
pub fn rounded_rows(report: &ExperimentReport) -> Vec<ExperimentRow> {
    report
        .rows
        .iter()
        .map(|r| ExperimentRow {
            mean_total_dollars: round_money(r.mean_total_dollars),
            mean_storage_dollars: round_money(r.mean_storage_dollars),
            mean_transcode_dollars: round_money(r.mean_transcode_dollars),
            ..r.clone()
        })
        .collect()
}

pub fn write_cells_csv<W: Write>(report: &ExperimentReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for cell in &report.cells {
        w.serialize(cell)?;
    }
    finish(w)
}

fn policies_in_order(report: &ExperimentReport) -> Vec<PolicyKind> {
    let mut out = Vec::new();
    for r in &report.rows {
        if !out.contains(&r.policy) {
            out.push(r.policy);
        }
    }
    out
}

fn fractions_in_order(report: &ExperimentReport) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for r in &report.rows {
        if !out.contains(&r.fav_fraction) {
            out.push(r.fav_fraction);
        }
    }
    out
}

/// Whitespace table for plotting tools: a `fav_percent` column followed by
/// one mean-total column per policy.
pub fn write_plot_data<W: Write>(report: &ExperimentReport, mut out: W) -> Result<()> {
    let policies = policies_in_order(report);
    let mut s = String::from("fav_percent");
    for p in &policies {
        s.push(' ');
        s.push_str(p.name());
    }
    s.push('\n');
    for f in fractions_in_order(report) {
        let _ = write!(s, "{:.2}", f * 100.0);
        for p in &policies {
            let v = report.row(f, *p).map_or(f64::NAN, |r| r.mean_total_dollars);
            let _ = write!(s, " {}", format_money(v));
        }
        s.push('\n');
    }
    out.write_all(s.as_bytes())
        .map_err(|e| Error::io("<plot>", e))
}

/// Fixed-width table with cents, for terminals.
pub fn format_experiment_table(report: &ExperimentReport) -> String {
    let policies = policies_in_order(report);
    let mut s = format!("{:>8}", "fav %");
    for p in &policies {
        let _ = write!(s, " {:>16}", p.name());
    }
    s.push('\n');
    for f in fractions_in_order(report) {
        let _ = write!(s, "{:>8.1}", f * 100.0);
        for p in &policies {
            let v = report.row(f, *p).map_or(f64::NAN, |r| r.mean_total_dollars);
            let _ = write!(s, " {:>16.2}", v);
        }
        s.push('\n');
    }
    s
}
