//! Fixtures shared by the benchmarks.

use vidcost_core::{ViewTrace, WorkloadConfig};

/// The default decaying workload, resized.
pub fn workload(n_videos: usize, period_hours: usize) -> WorkloadConfig {
    WorkloadConfig {
        n_videos,
        period_hours,
        ..WorkloadConfig::default()
    }
}

/// A noiseless ramp `base + slope * h` rounded to whole views.
pub fn ramp(hours: usize, base: f64, slope: f64) -> ViewTrace {
    let views = (1..=hours)
        .map(|h| (base + slope * h as f64).max(0.0).round() as u32)
        .collect();
    ViewTrace::new("ramp", views).expect("non-empty")
}
