//! Storage and on-demand transcoding costs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::workload::VideoAsset;

const MB_PER_GB: f64 = 1024.0;
const SECONDS_PER_HOUR: f64 = 3600.0;

/// Cloud prices. Defaults are S3 Standard storage and an EC2 VM-hour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriceSheet {
    pub storage_price_per_gb_month: f64,
    pub vm_price_per_hour: f64,
    /// Storage months billed for a video kept through one decision period.
    #[serde(default = "one")]
    pub storage_months_per_period: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for PriceSheet {
    fn default() -> Self {
        PriceSheet {
            storage_price_per_gb_month: 0.023,
            vm_price_per_hour: 0.05,
            storage_months_per_period: 1.0,
        }
    }
}

impl PriceSheet {
    pub fn new(storage_price_per_gb_month: f64, vm_price_per_hour: f64) -> Result<Self> {
        let prices = PriceSheet {
            storage_price_per_gb_month,
            vm_price_per_hour,
            storage_months_per_period: 1.0,
        };
        prices.validate()?;
        Ok(prices)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.storage_price_per_gb_month) {
            return Err(Error::config(
                "storage_price_per_gb_month",
                "must be positive",
            ));
        }
        if !positive(self.vm_price_per_hour) {
            return Err(Error::config("vm_price_per_hour", "must be positive"));
        }
        if !(self.storage_months_per_period.is_finite() && self.storage_months_per_period >= 0.0) {
            return Err(Error::config(
                "storage_months_per_period",
                "must be non-negative",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub storage_dollars: f64,
    pub transcode_dollars: f64,
    pub total_dollars: f64,
}

impl CostBreakdown {
    pub fn new(storage_dollars: f64, transcode_dollars: f64) -> Self {
        CostBreakdown {
            storage_dollars,
            transcode_dollars,
            total_dollars: storage_dollars + transcode_dollars,
        }
    }
}

/// `P_s * size_GB * months`, with 1 GB = 1024 MB.
pub fn storage_cost(asset: &VideoAsset, prices: &PriceSheet, months: f64) -> f64 {
    prices.storage_price_per_gb_month * asset.size_mb / MB_PER_GB * months
}

/// VM time for `views` on-demand transcodes billed at the hourly VM price.
/// `views` may be fractional when pricing an expected count.
pub fn transcode_cost(asset: &VideoAsset, views: f64, prices: &PriceSheet) -> f64 {
    prices.vm_price_per_hour * (asset.transcode_seconds_per_view * views) / SECONDS_PER_HOUR
}

/// Storage over transcoding cost. Zero transcoding cost yields `+inf`
/// unless storage is also free, in which case the ratio is 0.
pub fn cost_ratio(storage_dollars: f64, transcode_dollars: f64) -> f64 {
    if transcode_dollars == 0.0 {
        if storage_dollars == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        storage_dollars / transcode_dollars
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn asset(size_mb: f64, tau: f64) -> VideoAsset {
        VideoAsset::new("a", size_mb, tau).unwrap()
    }

    #[test]
    fn storage_hand_values() {
        let p = PriceSheet::default();
        assert_eq!(storage_cost(&asset(1024.0, 1.0), &p, 0.0), 0.0);
        assert!((storage_cost(&asset(1024.0, 1.0), &p, 1.0) - 0.023).abs() < 1e-12);
        assert!((storage_cost(&asset(2048.0, 1.0), &p, 1.0) - 0.046).abs() < 1e-12);
    }

    #[test]
    fn transcode_hand_values() {
        let p = PriceSheet::default();
        assert_eq!(transcode_cost(&asset(1.0, 1.0), 0.0, &p), 0.0);
        assert!((transcode_cost(&asset(1.0, 1.0), 3600.0, &p) - 0.05).abs() < 1e-12);
        assert!((transcode_cost(&asset(1.0, 2.0), 7200.0, &p) - 0.20).abs() < 1e-12);
    }

    #[test]
    fn ratio_cases() {
        assert_eq!(cost_ratio(0.023, 0.023), 1.0);
        assert!((cost_ratio(0.046, 0.023) - 2.0).abs() < 1e-15);
        assert_eq!(cost_ratio(0.023, 0.0), f64::INFINITY);
        assert_eq!(cost_ratio(0.0, 0.0), 0.0);
        assert_eq!(cost_ratio(0.0, 1.0), 0.0);
    }

    #[test]
    fn rejects_non_positive_prices() {
        assert!(
            matches!(PriceSheet::new(0.0, 0.05), Err(Error::Config { ref key, .. }) if key == "storage_price_per_gb_month")
        );
        assert!(
            matches!(PriceSheet::new(0.023, -1.0), Err(Error::Config { ref key, .. }) if key == "vm_price_per_hour")
        );
    }

    #[test]
    fn breakdown_total() {
        let b = CostBreakdown::new(0.25, 0.5);
        assert_eq!(b.total_dollars, 0.75);
    }

    proptest! {
        #[test]
        fn storage_is_homogeneous_in_price(size in 1.0f64..1e5, price in 1e-4f64..10.0, k in 1e-3f64..1e3) {
            let a = asset(size, 1.0);
            let p = PriceSheet { storage_price_per_gb_month: price, ..PriceSheet::default() };
            let pk = PriceSheet { storage_price_per_gb_month: price * k, ..p };
            let base = storage_cost(&a, &p, 1.0);
            prop_assert!((storage_cost(&a, &pk, 1.0) - k * base).abs() <= 1e-12 * k * base);
        }

        #[test]
        fn transcode_is_homogeneous_in_price(views in 0.0f64..1e7, price in 1e-4f64..10.0, k in 1e-3f64..1e3) {
            let a = asset(100.0, 1.5);
            let p = PriceSheet { vm_price_per_hour: price, ..PriceSheet::default() };
            let pk = PriceSheet { vm_price_per_hour: price * k, ..p };
            let base = transcode_cost(&a, views, &p);
            prop_assert!((transcode_cost(&a, views, &pk) - k * base).abs() <= 1e-12 * k * base);
        }

        #[test]
        fn storage_is_additive_over_months(size in 1.0f64..1e5, m1 in 0.0f64..24.0, m2 in 0.0f64..24.0) {
            let a = asset(size, 1.0);
            let p = PriceSheet::default();
            let sum = storage_cost(&a, &p, m1) + storage_cost(&a, &p, m2);
            let joint = storage_cost(&a, &p, m1 + m2);
            prop_assert!((joint - sum).abs() <= 4.0 * f64::EPSILON * joint.max(sum));
        }

        #[test]
        fn transcode_is_additive_over_views(v1 in 0.0f64..1e6, v2 in 0.0f64..1e6, tau in 0.1f64..10.0) {
            let a = asset(100.0, tau);
            let p = PriceSheet::default();
            let sum = transcode_cost(&a, v1, &p) + transcode_cost(&a, v2, &p);
            let joint = transcode_cost(&a, v1 + v2, &p);
            prop_assert!((joint - sum).abs() <= 8.0 * f64::EPSILON * joint.max(sum));
        }

        #[test]
        fn ratio_reciprocity(a in 1e-9f64..1e6, b in 1e-9f64..1e6) {
            prop_assert!((cost_ratio(a, b) * cost_ratio(b, a) - 1.0).abs() <= 1e-12);
        }
    }
}
