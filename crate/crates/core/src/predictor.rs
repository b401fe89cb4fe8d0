//! Least-squares trend fit over hourly views and next-period forecast.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::workload::ViewTrace;

/// `views(h) = slope * h + intercept`, fitted over hours `1..=n_points`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub slope: f64,
    pub intercept: f64,
    pub n_points: usize,
}

impl LinearModel {
    pub fn at(&self, hour: f64) -> f64 {
        self.slope * hour + self.intercept
    }
}

/// Ordinary least squares on the points `(h, views[h-1])`.
///
/// Hours are `1..=H`, so the centred abscissae are half-integers and
/// `Sxx = H(H^2 - 1)/12` is known in closed form; only the cross moment is
/// accumulated.
pub fn fit_ols(trace: &ViewTrace) -> Result<LinearModel> {
    let views = trace.hourly_views();
    let n = views.len();
    if n < 2 {
        return Err(Error::Input(format!(
            "trace for {} has {n} hour(s); a line needs at least 2",
            trace.video_id
        )));
    }
    let nf = n as f64;
    let h_mean = (nf + 1.0) / 2.0;
    let sxx = nf * (nf * nf - 1.0) / 12.0;

    let mut sum_v = 0.0;
    let mut sxy = 0.0;
    for (i, &v) in views.iter().enumerate() {
        let v = f64::from(v);
        sum_v += v;
        sxy += (i as f64 + 1.0 - h_mean) * v;
    }
    let slope = sxy / sxx;
    let intercept = sum_v / nf - slope * h_mean;
    Ok(LinearModel {
        slope,
        intercept,
        n_points: n,
    })
}

/// Total expected views over hours `H+1..=2H`, each hour clamped at zero
/// before summing.
pub fn predict_next_period_views(model: &LinearModel, period_hours: usize) -> f64 {
    (period_hours + 1..=2 * period_hours)
        .map(|h| model.at(h as f64).max(0.0))
        .sum()
}
