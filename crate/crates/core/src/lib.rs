//! Decide, per video in a cloud repository, whether to keep its transcoded
//! versions stored for the next billing period or delete them and transcode
//! on demand, and measure what each choice costs.
//!
//! The predictive policy fits a least-squares line to a video's hourly views,
//! extrapolates it over the next period, and keeps the video when one month
//! of storage is no more expensive than transcoding the forecast views.
//! [`simulator::run_experiment`] compares it against fixed and hindsight
//! baselines on seeded synthetic workloads.

pub mod cost;
pub mod error;
pub mod policy;
pub mod predictor;
pub mod report;
pub mod seed;
pub mod simulator;
pub mod workload;

pub use cost::{cost_ratio, storage_cost, transcode_cost, CostBreakdown, PriceSheet};
pub use error::{Error, Result};
pub use policy::{
    decide, realized_cost, run_policy, Forecaster, OlsForecaster, PeriodReport, PolicyDecision,
    PolicyKind, Verdict,
};
pub use predictor::{fit_ols, predict_next_period_views, LinearModel};
pub use simulator::{
    run_experiment, workload_digest, CellRecord, ExperimentConfig, ExperimentReport, ExperimentRow,
};
pub use workload::{
    load_trace, synthesize_catalog, synthesize_views, write_trace, Interval, TracePair, TraceSet,
    VideoAsset, VideoId, ViewTrace, WorkloadConfig,
};
