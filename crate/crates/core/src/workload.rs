//! Synthetic video catalogs, hourly view traces, and the text formats used
//! to exchange them.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{rng_for, stream};

/// Opaque video identifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VideoId(String);

impl VideoId {
    pub fn new(id: impl Into<String>) -> Self {
        VideoId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VideoId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VideoId {
    fn from(s: &str) -> Self {
        VideoId(s.to_owned())
    }
}

/// Per-video metadata that drives both cost formulas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VideoAsset {
    pub id: VideoId,
    pub size_mb: f64,
    /// Compute time needed to transcode one view on demand.
    pub transcode_seconds_per_view: f64,
}

impl VideoAsset {
    pub fn new(
        id: impl Into<VideoId>,
        size_mb: f64,
        transcode_seconds_per_view: f64,
    ) -> Result<Self> {
        let asset = VideoAsset {
            id: id.into(),
            size_mb,
            transcode_seconds_per_view,
        };
        asset.validate()?;
        Ok(asset)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.size_mb.is_finite() && self.size_mb > 0.0) {
            return Err(Error::Input(format!(
                "video {}: size_mb must be positive, got {}",
                self.id, self.size_mb
            )));
        }
        if !(self.transcode_seconds_per_view.is_finite() && self.transcode_seconds_per_view > 0.0) {
            return Err(Error::Input(format!(
                "video {}: transcode_seconds_per_view must be positive, got {}",
                self.id, self.transcode_seconds_per_view
            )));
        }
        Ok(())
    }
}

impl From<String> for VideoId {
    fn from(s: String) -> Self {
        VideoId(s)
    }
}

/// Hourly view counts of one video over one period. `hourly_views[h - 1]`
/// holds the views received during hour `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViewTrace {
    pub video_id: VideoId,
    hourly_views: Vec<u32>,
}

impl ViewTrace {
    pub fn new(video_id: impl Into<VideoId>, hourly_views: Vec<u32>) -> Result<Self> {
        if hourly_views.is_empty() {
            return Err(Error::Input("a view trace needs at least one hour".into()));
        }
        Ok(ViewTrace {
            video_id: video_id.into(),
            hourly_views,
        })
    }

    pub fn hourly_views(&self) -> &[u32] {
        &self.hourly_views
    }

    pub fn period_hours(&self) -> usize {
        self.hourly_views.len()
    }

    pub fn total_views(&self) -> u64 {
        self.hourly_views.iter().map(|&v| u64::from(v)).sum()
    }
}

/// Current-period trace plus the held-out next period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePair {
    pub current: ViewTrace,
    pub next: ViewTrace,
}

pub type TraceSet = BTreeMap<VideoId, TracePair>;

/// Closed interval `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    pub const fn new(min: f64, max: f64) -> Self {
        Interval { min, max }
    }

    pub const fn point(v: f64) -> Self {
        Interval { min: v, max: v }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        // Always consume one draw so the stream layout does not depend on the width.
        let u: f64 = rng.random();
        self.min + (self.max - self.min) * u
    }

    fn validate(&self, min_key: &str, max_key: &str) -> Result<()> {
        if !self.min.is_finite() {
            return Err(Error::config(min_key, "must be finite"));
        }
        if !self.max.is_finite() {
            return Err(Error::config(max_key, "must be finite"));
        }
        if self.min > self.max {
            return Err(Error::config(
                min_key,
                format!("{} exceeds {max_key} = {}", self.min, self.max),
            ));
        }
        Ok(())
    }
}

/// Parameters of the synthetic workload.
///
/// Sizes are log-normal. Each class (frequently accessed or cold) spreads its
/// mean rate over its members with Zipf weights `r^-s`, normalized so the
/// class mean equals the configured base rate. The expected rate in hour `h`
/// (counted across both periods, `1..=2H`) is `max(0, base + slope * h)` and
/// each hour's count is Poisson around it, or the rounded rate when `noise`
/// is off.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkloadConfig {
    pub n_videos: usize,
    pub fav_fraction: f64,
    pub period_hours: usize,
    pub seed: u64,
    pub size_log_mean: f64,
    pub size_log_sd: f64,
    pub zipf_exponent: f64,
    /// Per-hour drift of frequently accessed videos.
    pub trend_slope_range: Interval,
    /// Per-hour drift of cold videos.
    pub cold_trend_slope_range: Interval,
    pub base_rate_fav: f64,
    pub base_rate_cold: f64,
    pub transcode_seconds_range: Interval,
    pub noise: bool,
}

impl Default for WorkloadConfig {
    /// A decaying-popularity repository: frequently accessed videos lose
    /// views hour over hour while cold videos stay flat.
    fn default() -> Self {
        WorkloadConfig {
            n_videos: 1000,
            fav_fraction: 0.10,
            period_hours: 720,
            seed: 42,
            size_log_mean: 6.2,
            size_log_sd: 0.5,
            zipf_exponent: 0.8,
            trend_slope_range: Interval::new(-0.06, -0.02),
            cold_trend_slope_range: Interval::point(0.0),
            base_rate_fav: 20.0,
            base_rate_cold: 1.0,
            transcode_seconds_range: Interval::point(1.0),
            noise: true,
        }
    }
}

impl WorkloadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_videos == 0 {
            return Err(Error::config("n_videos", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.fav_fraction) {
            return Err(Error::config(
                "fav_fraction",
                format!("{} is outside [0, 1]", self.fav_fraction),
            ));
        }
        if self.period_hours < 2 {
            return Err(Error::config("period_hours", "must be at least 2"));
        }
        if !self.size_log_mean.is_finite() {
            return Err(Error::config("size_log_mean", "must be finite"));
        }
        if !(self.size_log_sd.is_finite() && self.size_log_sd >= 0.0) {
            return Err(Error::config(
                "size_log_sd",
                "must be a non-negative number",
            ));
        }
        if !(self.zipf_exponent.is_finite() && self.zipf_exponent > 0.0) {
            return Err(Error::config("zipf_exponent", "must be positive"));
        }
        self.trend_slope_range
            .validate("trend_slope_min", "trend_slope_max")?;
        self.cold_trend_slope_range
            .validate("cold_trend_slope_min", "cold_trend_slope_max")?;
        if !(self.base_rate_cold.is_finite() && self.base_rate_cold >= 0.0) {
            return Err(Error::config("base_rate_cold", "must be non-negative"));
        }
        if !(self.base_rate_fav.is_finite() && self.base_rate_fav > self.base_rate_cold) {
            return Err(Error::config(
                "base_rate_fav",
                format!("must exceed base_rate_cold ({})", self.base_rate_cold),
            ));
        }
        self.transcode_seconds_range
            .validate("transcode_seconds_min", "transcode_seconds_max")?;
        if self.transcode_seconds_range.min <= 0.0 {
            return Err(Error::config("transcode_seconds_min", "must be positive"));
        }
        Ok(())
    }

    /// Number of frequently accessed videos in a catalog of `n` videos.
    pub fn fav_count(&self, n: usize) -> usize {
        ((self.fav_fraction * n as f64).round() as usize).min(n)
    }
}

pub fn video_id_for_index(index: usize) -> VideoId {
    VideoId(format!("v{index:06}"))
}

pub fn synthesize_catalog(config: &WorkloadConfig) -> Result<Vec<VideoAsset>> {
    config.validate()?;
    let catalog = (0..config.n_videos)
        .map(|i| {
            let mut rng = rng_for(config.seed, &[stream::CATALOG, i as u64]);
            let z: f64 = StandardNormal.sample(&mut rng);
            let size_mb = (config.size_log_mean + config.size_log_sd * z).exp();
            let tau = config.transcode_seconds_range.sample(&mut rng);
            VideoAsset {
                id: video_id_for_index(i),
                size_mb,
                transcode_seconds_per_view: tau,
            }
        })
        .collect();
    Ok(catalog)
}

/// Rate parameters assigned to one video.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateProfile {
    pub frequently_accessed: bool,
    pub base_rate: f64,
    pub slope: f64,
}

impl RateProfile {
    /// Expected views in hour `h`, counted from the start of the current period.
    pub fn expected_rate(&self, hour: usize) -> f64 {
        (self.base_rate + self.slope * hour as f64).max(0.0)
    }
}

fn zipf_weights(n: usize, exponent: f64) -> Vec<f64> {
    let raw: Vec<f64> = (1..=n).map(|r| (r as f64).powf(-exponent)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w * n as f64 / total).collect()
}

/// Class membership, base rate and slope of each catalog entry, in catalog order.
pub fn rate_profiles(config: &WorkloadConfig, n: usize) -> Vec<RateProfile> {
    let n_fav = config.fav_count(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng_for(config.seed, &[stream::CLASSES]));

    let fav_weights = zipf_weights(n_fav, config.zipf_exponent);
    let cold_weights = zipf_weights(n - n_fav, config.zipf_exponent);
    let mut profiles = vec![
        RateProfile {
            frequently_accessed: false,
            base_rate: 0.0,
            slope: 0.0,
        };
        n
    ];
    for (pos, &video) in order.iter().enumerate() {
        let (fav, base) = if pos < n_fav {
            (true, config.base_rate_fav * fav_weights[pos])
        } else {
            (false, config.base_rate_cold * cold_weights[pos - n_fav])
        };
        profiles[video].frequently_accessed = fav;
        profiles[video].base_rate = base;
    }
    for (i, p) in profiles.iter_mut().enumerate() {
        let mut rng = rng_for(config.seed, &[stream::VIEWS, i as u64]);
        let range = if p.frequently_accessed {
            config.trend_slope_range
        } else {
            config.cold_trend_slope_range
        };
        p.slope = range.sample(&mut rng);
    }
    profiles
}

fn draw_count(rate: f64, noise: bool, rng: &mut ChaCha8Rng) -> u32 {
    if rate <= 0.0 {
        return 0;
    }
    if !noise {
        return rate.round() as u32;
    }
    match Poisson::new(rate) {
        Ok(d) => d.sample(rng) as u32,
        Err(_) => rate.round() as u32,
    }
}

/// Generates the current and next period trace of every catalog entry.
pub fn synthesize_views(config: &WorkloadConfig, catalog: &[VideoAsset]) -> Result<TraceSet> {
    config.validate()?;
    if catalog.is_empty() {
        return Err(Error::config("n_videos", "catalog is empty"));
    }
    let hours = config.period_hours;
    let profiles = rate_profiles(config, catalog.len());
    let mut traces = TraceSet::new();
    for (i, (asset, profile)) in catalog.iter().zip(&profiles).enumerate() {
        // Continue the stream that drew the slope.
        let mut rng = rng_for(config.seed, &[stream::VIEWS, i as u64]);
        let _: f64 = rng.random();
        let counts: Vec<u32> = (1..=2 * hours)
            .map(|h| draw_count(profile.expected_rate(h), config.noise, &mut rng))
            .collect();
        let (cur, next) = counts.split_at(hours);
        let pair = TracePair {
            current: ViewTrace::new(asset.id.clone(), cur.to_vec())?,
            next: ViewTrace::new(asset.id.clone(), next.to_vec())?,
        };
        if traces.insert(asset.id.clone(), pair).is_some() {
            return Err(Error::Input(format!("duplicate video id {}", asset.id)));
        }
    }
    Ok(traces)
}

/// Parses the `h v` trace format. `path` is only used in diagnostics and
/// the file stem becomes the video id.
pub fn parse_trace(text: &str, path: &Path) -> Result<ViewTrace> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, header)) if header.split_whitespace().eq(["h", "v"]) => {}
        Some((n, _)) => return Err(parse_err(n, "expected header `h v`".into())),
        None => return Err(parse_err(1, "empty file".into())),
    }

    let mut views = Vec::new();
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                n,
                format!("expected 2 columns, found {}", fields.len()),
            ));
        }
        let hour: u64 = fields[0]
            .parse()
            .map_err(|_| parse_err(n, format!("hour `{}` is not a positive integer", fields[0])))?;
        let v: u32 = fields[1].parse().map_err(|_| {
            parse_err(
                n,
                format!("views `{}` is not a non-negative integer", fields[1]),
            )
        })?;
        let expected = views.len() as u64 + 1;
        if hour != expected {
            let message = if hour < expected {
                format!("line {n}: hour {hour} is duplicated or out of order")
            } else {
                format!("line {n}: hours {expected}..{} are missing", hour - 1)
            };
            return Err(Error::Structure {
                path: path.to_path_buf(),
                message,
            });
        }
        views.push(v);
    }
    if views.is_empty() {
        return Err(Error::Structure {
            path: path.to_path_buf(),
            message: "no data rows".into(),
        });
    }
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    ViewTrace::new(id, views)
}

pub fn load_trace(path: &Path) -> Result<ViewTrace> {
    let mut text = String::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    parse_trace(&text, path)
}

pub fn write_trace<W: Write>(trace: &ViewTrace, mut out: W) -> io::Result<()> {
    let mut buf = String::with_capacity(8 * trace.period_hours() + 4);
    buf.push_str("h v\n");
    for (h, v) in trace.hourly_views().iter().enumerate() {
        use std::fmt::Write as _;
        let _ = writeln!(buf, "{} {}", h + 1, v);
    }
    out.write_all(buf.as_bytes())
}

pub fn write_catalog_csv<W: Write>(catalog: &[VideoAsset], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for asset in catalog {
        w.serialize(asset)?;
    }
    w.flush().map_err(|e| Error::io("<catalog>", e))?;
    Ok(())
}

pub fn read_catalog_csv<R: Read>(input: R) -> Result<Vec<VideoAsset>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers
        .iter()
        .ne(["id", "size_mb", "transcode_seconds_per_view"])
    {
        return Err(Error::Input(format!(
            "catalog header must be `id,size_mb,transcode_seconds_per_view`, got `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut catalog = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for row in r.deserialize() {
        let asset: VideoAsset = row?;
        asset.validate()?;
        if !seen.insert(asset.id.clone()) {
            return Err(Error::Input(format!("duplicate video id {}", asset.id)));
        }
        catalog.push(asset);
    }
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::path::PathBuf;

    fn small(n: usize) -> WorkloadConfig {
        WorkloadConfig {
            n_videos: n,
            period_hours: 48,
            ..WorkloadConfig::default()
        }
    }

    fn p() -> PathBuf {
        PathBuf::from("t.dat")
    }

    #[test]
    fn catalog_has_requested_size() {
        let cat = synthesize_catalog(&small(100)).unwrap();
        assert_eq!(cat.len(), 100);
        let ids: std::collections::HashSet<_> = cat.iter().map(|a| a.id.clone()).collect();
        assert_eq!(ids.len(), 100);
    }

    #[test]
    fn catalog_is_deterministic() {
        assert_eq!(
            synthesize_catalog(&small(50)).unwrap(),
            synthesize_catalog(&small(50)).unwrap()
        );
    }

    #[test]
    fn zero_spread_gives_constant_sizes() {
        let cfg = WorkloadConfig {
            size_log_sd: 0.0,
            ..small(20)
        };
        for a in synthesize_catalog(&cfg).unwrap() {
            assert_eq!(a.size_mb, cfg.size_log_mean.exp());
        }
    }

    #[test]
    fn rejects_invalid_configs() {
        let bad = [
            WorkloadConfig {
                n_videos: 0,
                ..small(1)
            },
            WorkloadConfig {
                fav_fraction: 1.5,
                ..small(1)
            },
            WorkloadConfig {
                period_hours: 1,
                ..small(1)
            },
            WorkloadConfig {
                size_log_sd: -1.0,
                ..small(1)
            },
            WorkloadConfig {
                zipf_exponent: 0.0,
                ..small(1)
            },
            WorkloadConfig {
                base_rate_fav: 0.5,
                base_rate_cold: 1.0,
                ..small(1)
            },
            WorkloadConfig {
                trend_slope_range: Interval::new(1.0, 0.0),
                ..small(1)
            },
            WorkloadConfig {
                transcode_seconds_range: Interval::point(0.0),
                ..small(1)
            },
        ];
        for cfg in bad {
            assert!(
                matches!(synthesize_catalog(&cfg), Err(Error::Config { .. })),
                "{cfg:?}"
            );
        }
        assert!(matches!(
            synthesize_views(&small(1), &[]),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn flat_noiseless_trace_is_constant() {
        let cfg = WorkloadConfig {
            n_videos: 1,
            fav_fraction: 1.0,
            base_rate_fav: 10.0,
            base_rate_cold: 0.0,
            trend_slope_range: Interval::point(0.0),
            noise: false,
            ..small(1)
        };
        let cat = synthesize_catalog(&cfg).unwrap();
        let traces = synthesize_views(&cfg, &cat).unwrap();
        let pair = &traces[&cat[0].id];
        assert!(pair.current.hourly_views().iter().all(|&v| v == 10));
        assert!(pair.next.hourly_views().iter().all(|&v| v == 10));
        assert_eq!(pair.current.period_hours(), 48);
    }

    #[test]
    fn views_are_deterministic() {
        let cfg = small(30);
        let cat = synthesize_catalog(&cfg).unwrap();
        assert_eq!(
            synthesize_views(&cfg, &cat).unwrap(),
            synthesize_views(&cfg, &cat).unwrap()
        );
    }

    #[test]
    fn strong_decay_lowers_next_period() {
        let cfg = WorkloadConfig {
            n_videos: 1,
            fav_fraction: 1.0,
            period_hours: 720,
            base_rate_fav: 50.0,
            trend_slope_range: Interval::point(-0.05),
            ..WorkloadConfig::default()
        };
        // Expected totals from the linear rate: 50 - 0.05 h hits zero at h = 1000.
        let profile = rate_profiles(&cfg, 1)[0];
        let expected_cur: f64 = (1..=720).map(|h| profile.expected_rate(h)).sum();
        let expected_next: f64 = (721..=1440).map(|h| profile.expected_rate(h)).sum();
        assert!((expected_cur - (50.0 * 720.0 - 0.05 * 720.0 * 721.0 / 2.0)).abs() < 1e-6);
        assert!((expected_next - 0.05 * 279.0 * 280.0 / 2.0).abs() < 1e-6);
        assert!(expected_next < expected_cur);

        let cat = synthesize_catalog(&cfg).unwrap();
        let pair = &synthesize_views(&cfg, &cat).unwrap()[&cat[0].id];
        assert!(pair.next.total_views() < pair.current.total_views());
    }

    #[test]
    fn fav_share_is_exact() {
        for (n, frac) in [(1000, 0.05), (7, 0.5), (3, 1.0), (10, 0.0), (333, 0.3)] {
            let cfg = WorkloadConfig {
                fav_fraction: frac,
                ..small(n)
            };
            let favs = rate_profiles(&cfg, n)
                .iter()
                .filter(|p| p.frequently_accessed)
                .count();
            assert_eq!(favs, (frac * n as f64).round() as usize);
        }
    }

    #[test]
    fn zipf_class_mean_matches_base_rate() {
        let w = zipf_weights(250, 0.8);
        let mean = w.iter().sum::<f64>() / 250.0;
        assert!((mean - 1.0).abs() < 1e-12);
        assert_eq!(zipf_weights(1, 0.8), vec![1.0]);
        assert!(w.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn generated_traces_satisfy_invariants() {
        for seed in 0..1000u64 {
            let cfg = WorkloadConfig {
                seed,
                n_videos: 2,
                period_hours: 24,
                fav_fraction: 0.5,
                cold_trend_slope_range: Interval::new(-0.5, 0.5),
                ..WorkloadConfig::default()
            };
            let cat = synthesize_catalog(&cfg).unwrap();
            let traces = synthesize_views(&cfg, &cat).unwrap();
            assert_eq!(traces.len(), 2);
            for (id, pair) in &traces {
                for t in [&pair.current, &pair.next] {
                    assert_eq!(&t.video_id, id);
                    assert_eq!(t.period_hours(), 24);
                    assert_eq!(
                        t.total_views(),
                        t.hourly_views().iter().map(|&v| v as u64).sum::<u64>()
                    );
                }
            }
        }
    }

    #[test]
    fn parses_trace_file() {
        let t = parse_trace("h v\n1 5\n2 7\n3 6\n", &p()).unwrap();
        assert_eq!(t.hourly_views(), &[5, 7, 6]);
        assert_eq!(t.period_hours(), 3);
        assert_eq!(t.video_id.as_str(), "t");
        let tabs = parse_trace("h v\n1\t5\n2  \t7\n", &p()).unwrap();
        assert_eq!(tabs.hourly_views(), &[5, 7]);
    }

    #[test]
    fn negative_views_name_the_line() {
        match parse_trace("h v\n1 5\n2 -1\n", &p()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_trace("h v\n1 2.5\n", &p()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_trace("x y\n1 2\n", &p()),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn gaps_and_duplicates_are_structural() {
        assert!(matches!(
            parse_trace("h v\n1 5\n3 6\n", &p()),
            Err(Error::Structure { .. })
        ));
        assert!(matches!(
            parse_trace("h v\n1 5\n1 6\n", &p()),
            Err(Error::Structure { .. })
        ));
        assert!(matches!(
            parse_trace("h v\n", &p()),
            Err(Error::Structure { .. })
        ));
    }

    #[test]
    fn missing_file_is_io() {
        assert!(matches!(
            load_trace(Path::new("/nonexistent/trace.dat")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn catalog_csv_round_trip() {
        let cat = synthesize_catalog(&small(10)).unwrap();
        let mut buf = Vec::new();
        write_catalog_csv(&cat, &mut buf).unwrap();
        assert!(buf.starts_with(b"id,size_mb,transcode_seconds_per_view\n"));
        assert_eq!(read_catalog_csv(&buf[..]).unwrap(), cat);
    }

    proptest! {
        #[test]
        fn trace_format_round_trip(views in proptest::collection::vec(any::<u32>(), 1..200)) {
            let trace = ViewTrace::new("t", views).unwrap();
            let mut buf = Vec::new();
            write_trace(&trace, &mut buf).unwrap();
            let back = parse_trace(std::str::from_utf8(&buf).unwrap(), &p()).unwrap();
            prop_assert_eq!(back, trace);
        }
    }
}
