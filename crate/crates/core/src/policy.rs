//! Keep/delete decisions and realized scoring of whole-catalog policies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cost::{cost_ratio, storage_cost, transcode_cost, PriceSheet};
use crate::error::{Error, Result};
use crate::predictor::{fit_ols, predict_next_period_views};
use crate::workload::{TracePair, TraceSet, VideoAsset, VideoId, ViewTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// Store the transcoded versions for the next period.
    Keep,
    /// Drop stored versions and transcode on each request.
    Delete,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Keep => "Keep",
            Verdict::Delete => "Delete",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Keep" => Ok(Verdict::Keep),
            "Delete" => Ok(Verdict::Delete),
            other => Err(Error::Input(format!("unknown verdict `{other}`"))),
        }
    }
}

/// Invariant: `verdict == Keep` iff `estimated_ratio <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyDecision {
    pub video_id: VideoId,
    pub verdict: Verdict,
    pub estimated_ratio: f64,
    pub predicted_views: f64,
}

impl PolicyDecision {
    /// Verdict imposed without consulting costs. The ratio is pinned to 0 for
    /// Keep and `+inf` for Delete so the invariant still holds.
    fn forced(video_id: VideoId, verdict: Verdict) -> Self {
        let estimated_ratio = match verdict {
            Verdict::Keep => 0.0,
            Verdict::Delete => f64::INFINITY,
        };
        PolicyDecision {
            video_id,
            verdict,
            estimated_ratio,
            predicted_views: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PolicyKind {
    FullStore,
    FullTranscode,
    /// OLS trend forecast of next-period views.
    Predictive,
    /// Current-period views taken as the forecast.
    StaticThreshold,
    /// Hindsight: decides with the realized next-period views.
    Oracle,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 5] = [
        PolicyKind::FullStore,
        PolicyKind::FullTranscode,
        PolicyKind::Predictive,
        PolicyKind::StaticThreshold,
        PolicyKind::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PolicyKind::FullStore => "FullStore",
            PolicyKind::FullTranscode => "FullTranscode",
            PolicyKind::Predictive => "Predictive",
            PolicyKind::StaticThreshold => "StaticThreshold",
            PolicyKind::Oracle => "Oracle",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    /// Accepts `FullStore`, `full_store`, `full-store` and other casings.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .flat_map(char::to_lowercase)
            .collect();
        PolicyKind::ALL
            .into_iter()
            .find(|k| k.name().to_lowercase() == key)
            .ok_or_else(|| Error::Input(format!("unknown policy `{s}`")))
    }
}

/// Supplies the next-period view forecast from a current-period trace.
pub trait Forecaster: Sync {
    fn forecast(&self, current: &ViewTrace) -> Result<f64>;
}

impl<F> Forecaster for F
where
    F: Fn(&ViewTrace) -> Result<f64> + Sync,
{
    fn forecast(&self, current: &ViewTrace) -> Result<f64> {
        self(current)
    }
}

/// Per-video OLS fit extrapolated over the following period.
#[derive(Debug, Clone, Copy, Default)]
pub struct OlsForecaster;

impl Forecaster for OlsForecaster {
    fn forecast(&self, current: &ViewTrace) -> Result<f64> {
        let model = fit_ols(current)?;
        Ok(predict_next_period_views(&model, current.period_hours()))
    }
}

pub fn decide(asset: &VideoAsset, predicted_views: f64, prices: &PriceSheet) -> PolicyDecision {
    let storage = storage_cost(asset, prices, prices.storage_months_per_period);
    let transcode = transcode_cost(asset, predicted_views, prices);
    let ratio = cost_ratio(storage, transcode);
    PolicyDecision {
        video_id: asset.id.clone(),
        verdict: if ratio <= 1.0 {
            Verdict::Keep
        } else {
            Verdict::Delete
        },
        estimated_ratio: ratio,
        predicted_views,
    }
}

/// What one video costs once its verdict meets the realized next period.
pub fn realized_cost(
    asset: &VideoAsset,
    verdict: Verdict,
    actual_views: f64,
    prices: &PriceSheet,
) -> (f64, f64) {
    match verdict {
        Verdict::Keep => (
            storage_cost(asset, prices, prices.storage_months_per_period),
            0.0,
        ),
        Verdict::Delete => (0.0, transcode_cost(asset, actual_views, prices)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub policy: PolicyKind,
    pub storage_dollars: f64,
    pub transcode_dollars: f64,
    pub total_dollars: f64,
    pub kept_count: usize,
    pub deleted_count: usize,
    pub decisions: Vec<PolicyDecision>,
}

fn decide_one(
    kind: PolicyKind,
    asset: &VideoAsset,
    pair: &TracePair,
    prices: &PriceSheet,
    forecaster: &dyn Forecaster,
) -> Result<PolicyDecision> {
    Ok(match kind {
        PolicyKind::FullStore => PolicyDecision::forced(asset.id.clone(), Verdict::Keep),
        PolicyKind::FullTranscode => PolicyDecision::forced(asset.id.clone(), Verdict::Delete),
        PolicyKind::Predictive => decide(asset, forecaster.forecast(&pair.current)?, prices),
        PolicyKind::StaticThreshold => decide(asset, pair.current.total_views() as f64, prices),
        PolicyKind::Oracle => decide(asset, pair.next.total_views() as f64, prices),
    })
}

/// Decides every catalog video under `kind` and scores the verdicts against
/// the realized next period. Decisions and sums run in video-id order.
pub fn run_policy(
    kind: PolicyKind,
    catalog: &[VideoAsset],
    traces: &TraceSet,
    prices: &PriceSheet,
    forecaster: &dyn Forecaster,
) -> Result<PeriodReport> {
    let mut order: Vec<&VideoAsset> = catalog.iter().collect();
    order.sort_by(|a, b| a.id.cmp(&b.id));

    let mut report = PeriodReport {
        policy: kind,
        storage_dollars: 0.0,
        transcode_dollars: 0.0,
        total_dollars: 0.0,
        kept_count: 0,
        deleted_count: 0,
        decisions: Vec::with_capacity(catalog.len()),
    };
    for asset in order {
        let pair = traces
            .get(&asset.id)
            .ok_or_else(|| Error::Input(format!("no trace for video {}", asset.id)))?;
        let decision = decide_one(kind, asset, pair, prices, forecaster)?;
        let (s, t) = realized_cost(
            asset,
            decision.verdict,
            pair.next.total_views() as f64,
            prices,
        );
        match decision.verdict {
            Verdict::Keep => {
                report.kept_count += 1;
                report.storage_dollars += s;
            }
            Verdict::Delete => {
                report.deleted_count += 1;
                report.transcode_dollars += t;
            }
        }
        report.decisions.push(decision);
    }
    report.total_dollars = report.storage_dollars + report.transcode_dollars;
    Ok(report)
}
