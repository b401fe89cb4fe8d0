//! Sweeps the frequently-accessed fraction and scores every policy on
//! shared workloads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cost::PriceSheet;
use crate::error::{Error, Result};
use crate::policy::{run_policy, OlsForecaster, PolicyKind};
use crate::seed::{derive_seed, stream};
use crate::workload::{synthesize_catalog, synthesize_views, TraceSet, VideoAsset, WorkloadConfig};

pub const DEFAULT_FAV_SWEEP: [f64; 6] = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Template; `fav_fraction` and `seed` are overwritten per cell.
    pub workload: WorkloadConfig,
    pub fav_sweep: Vec<f64>,
    pub policies: Vec<PolicyKind>,
    pub prices: PriceSheet,
    pub replications: usize,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            workload: WorkloadConfig::default(),
            fav_sweep: DEFAULT_FAV_SWEEP.to_vec(),
            policies: PolicyKind::ALL.to_vec(),
            prices: PriceSheet::default(),
            replications: 30,
            seed: 42,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.fav_sweep.is_empty() {
            return Err(Error::config(
                "fav_sweep",
                "must list at least one fraction",
            ));
        }
        if let Some(f) = self.fav_sweep.iter().find(|f| !(0.0..=1.0).contains(*f)) {
            return Err(Error::config("fav_sweep", format!("{f} is outside [0, 1]")));
        }
        if self.policies.is_empty() {
            return Err(Error::config("policies", "must list at least one policy"));
        }
        if self.replications == 0 {
            return Err(Error::config("replications", "must be at least 1"));
        }
        self.prices.validate()?;
        self.cell_workload(0, 0).validate()
    }

    /// Policies in first-seen order with duplicates dropped.
    fn distinct_policies(&self) -> Vec<PolicyKind> {
        let mut out = Vec::new();
        for &k in &self.policies {
            if !out.contains(&k) {
                out.push(k);
            }
        }
        out
    }

    pub fn cell_seed(&self, fraction_index: usize, replication: usize) -> u64 {
        derive_seed(
            self.seed,
            &[stream::CELL, fraction_index as u64, replication as u64],
        )
    }

    pub fn cell_workload(&self, fraction_index: usize, replication: usize) -> WorkloadConfig {
        WorkloadConfig {
            fav_fraction: self.fav_sweep.get(fraction_index).copied().unwrap_or(0.0),
            seed: self.cell_seed(fraction_index, replication),
            ..self.workload.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub fav_fraction: f64,
    pub policy: PolicyKind,
    pub mean_total_dollars: f64,
    pub mean_storage_dollars: f64,
    pub mean_transcode_dollars: f64,
}

/// One synthesized workload shared by every policy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub fraction_index: usize,
    pub replication: usize,
    pub seed: u64,
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
    pub cells: Vec<CellRecord>,
}

impl ExperimentReport {
    pub fn row(&self, fav_fraction: f64, policy: PolicyKind) -> Option<&ExperimentRow> {
        self.rows
            .iter()
            .find(|r| r.fav_fraction == fav_fraction && r.policy == policy)
    }
}

/// SHA-256 over the catalog and every trace, truncated to 16 hex digits.
pub fn workload_digest(catalog: &[VideoAsset], traces: &TraceSet) -> String {
    let mut h = Sha256::new();
    for a in catalog {
        h.update(a.id.as_str().as_bytes());
        h.update([0]);
        h.update(a.size_mb.to_bits().to_le_bytes());
        h.update(a.transcode_seconds_per_view.to_bits().to_le_bytes());
    }
    let mut buf = Vec::new();
    for (id, pair) in traces {
        h.update(id.as_str().as_bytes());
        h.update([0]);
        for t in [&pair.current, &pair.next] {
            buf.clear();
            buf.extend(t.hourly_views().iter().flat_map(|v| v.to_le_bytes()));
            h.update((t.period_hours() as u64).to_le_bytes());
            h.update(&buf);
        }
    }
    h.finalize()[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

struct CellOutcome {
    record: CellRecord,
    /// (storage, transcode, total) per distinct policy.
    costs: Vec<(f64, f64, f64)>,
}

fn run_cell(
    config: &ExperimentConfig,
    policies: &[PolicyKind],
    fi: usize,
    rep: usize,
) -> Result<CellOutcome> {
    let wl = config.cell_workload(fi, rep);
    let catalog = synthesize_catalog(&wl)?;
    let traces = synthesize_views(&wl, &catalog)?;
    let digest = workload_digest(&catalog, &traces);
    let costs = policies
        .iter()
        .map(|&k| {
            run_policy(k, &catalog, &traces, &config.prices, &OlsForecaster)
                .map(|r| (r.storage_dollars, r.transcode_dollars, r.total_dollars))
        })
        .collect::<Result<_>>()?;
    Ok(CellOutcome {
        record: CellRecord {
            fraction_index: fi,
            replication: rep,
            seed: wl.seed,
            digest,
        },
        costs,
    })
}

/// Runs every (fraction, replication) cell, possibly in parallel, and
/// reduces the per-policy means in sweep, policy, replication order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let policies = config.distinct_policies();
    let cells: Vec<(usize, usize)> = (0..config.fav_sweep.len())
        .flat_map(|fi| (0..config.replications).map(move |rep| (fi, rep)))
        .collect();
    let outcomes = cells
        .par_iter()
        .map(|&(fi, rep)| run_cell(config, &policies, fi, rep))
        .collect::<Result<Vec<_>>>()?;

    let reps = config.replications as f64;
    let mut rows = Vec::with_capacity(config.fav_sweep.len() * policies.len());
    for (fi, &fraction) in config.fav_sweep.iter().enumerate() {
        let block = &outcomes[fi * config.replications..(fi + 1) * config.replications];
        for (pi, &policy) in policies.iter().enumerate() {
            let (mut s, mut t, mut tot) = (0.0, 0.0, 0.0);
            for cell in block {
                let (cs, ct, ctot) = cell.costs[pi];
                s += cs;
                t += ct;
                tot += ctot;
            }
            rows.push(ExperimentRow {
                fav_fraction: fraction,
                policy,
                mean_total_dollars: tot / reps,
                mean_storage_dollars: s / reps,
                mean_transcode_dollars: t / reps,
            });
        }
    }
    Ok(ExperimentReport {
        rows,
        cells: outcomes.into_iter().map(|c| c.record).collect(),
    })
}
