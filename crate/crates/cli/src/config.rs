//! Flat TOML configuration shared by every subcommand.
//!
//! Values resolve as: `--set key=value` (and `--seed`) over the config file
//! over built-in defaults. Every key lives at the top level of the file.

use std::fs;
use std::path::Path;

use toml::Value;
use vidcost_core::{ExperimentConfig, PolicyKind};

use crate::CliError;

/// Documented keys with a one-line description each.
pub const KEYS: &[(&str, &str)] = &[
    ("n_videos", "videos per synthesized catalog"),
    (
        "fav_fraction",
        "share of frequently accessed videos for `synth`",
    ),
    ("period_hours", "hours per decision period"),
    ("seed", "base seed for every random stream"),
    ("size_log_mean", "mean of ln(size in MB)"),
    ("size_log_sd", "standard deviation of ln(size in MB)"),
    ("zipf_exponent", "rank skew of base rates within a class"),
    (
        "trend_slope_min",
        "lower per-hour drift of frequently accessed videos",
    ),
    (
        "trend_slope_max",
        "upper per-hour drift of frequently accessed videos",
    ),
    (
        "cold_trend_slope_min",
        "lower per-hour drift of cold videos",
    ),
    (
        "cold_trend_slope_max",
        "upper per-hour drift of cold videos",
    ),
    (
        "base_rate_fav",
        "mean views/hour of frequently accessed videos",
    ),
    ("base_rate_cold", "mean views/hour of cold videos"),
    (
        "transcode_seconds_min",
        "lower transcoding seconds per view",
    ),
    (
        "transcode_seconds_max",
        "upper transcoding seconds per view",
    ),
    (
        "noise",
        "Poisson hourly counts (false: rounded expected rate)",
    ),
    ("storage_price_per_gb_month", "storage price, $/GB-month"),
    ("vm_price_per_hour", "transcoding VM price, $/hour"),
    (
        "storage_months_per_period",
        "storage months billed per decision period",
    ),
    ("fav_sweep", "fractions swept by `simulate`"),
    ("policies", "policies scored by `simulate`"),
    ("replications", "workloads per sweep point"),
];

fn is_known(key: &str) -> bool {
    KEYS.iter().any(|(k, _)| *k == key)
}

fn bad(key: &str, message: impl Into<String>) -> CliError {
    CliError::Config(format!("`{key}`: {}", message.into()))
}

fn as_f64(key: &str, v: &Value) -> Result<f64, CliError> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        other => Err(bad(
            key,
            format!("expected a number, got {}", other.type_str()),
        )),
    }
}

fn as_u64(key: &str, v: &Value) -> Result<u64, CliError> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        // Seeds above i64::MAX cannot be TOML integers; accept them quoted.
        Value::String(s) => s
            .parse()
            .map_err(|_| bad(key, format!("`{s}` is not an unsigned integer"))),
        other => Err(bad(
            key,
            format!("expected a non-negative integer, got {other}"),
        )),
    }
}

fn as_usize(key: &str, v: &Value) -> Result<usize, CliError> {
    as_u64(key, v).map(|n| n as usize)
}

fn as_bool(key: &str, v: &Value) -> Result<bool, CliError> {
    v.as_bool()
        .ok_or_else(|| bad(key, format!("expected true or false, got {}", v.type_str())))
}

fn as_array<'a>(key: &str, v: &'a Value) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| bad(key, format!("expected an array, got {}", v.type_str())))
}

fn apply(cfg: &mut ExperimentConfig, key: &str, v: &Value) -> Result<(), CliError> {
    let wl = &mut cfg.workload;
    match key {
        "n_videos" => wl.n_videos = as_usize(key, v)?,
        "fav_fraction" => wl.fav_fraction = as_f64(key, v)?,
        "period_hours" => wl.period_hours = as_usize(key, v)?,
        "seed" => {
            let seed = as_u64(key, v)?;
            wl.seed = seed;
            cfg.seed = seed;
        }
        "size_log_mean" => wl.size_log_mean = as_f64(key, v)?,
        "size_log_sd" => wl.size_log_sd = as_f64(key, v)?,
        "zipf_exponent" => wl.zipf_exponent = as_f64(key, v)?,
        "trend_slope_min" => wl.trend_slope_range.min = as_f64(key, v)?,
        "trend_slope_max" => wl.trend_slope_range.max = as_f64(key, v)?,
        "cold_trend_slope_min" => wl.cold_trend_slope_range.min = as_f64(key, v)?,
        "cold_trend_slope_max" => wl.cold_trend_slope_range.max = as_f64(key, v)?,
        "base_rate_fav" => wl.base_rate_fav = as_f64(key, v)?,
        "base_rate_cold" => wl.base_rate_cold = as_f64(key, v)?,
        "transcode_seconds_min" => wl.transcode_seconds_range.min = as_f64(key, v)?,
        "transcode_seconds_max" => wl.transcode_seconds_range.max = as_f64(key, v)?,
        "noise" => wl.noise = as_bool(key, v)?,
        "storage_price_per_gb_month" => cfg.prices.storage_price_per_gb_month = as_f64(key, v)?,
        "vm_price_per_hour" => cfg.prices.vm_price_per_hour = as_f64(key, v)?,
        "storage_months_per_period" => cfg.prices.storage_months_per_period = as_f64(key, v)?,
        "fav_sweep" => {
            cfg.fav_sweep = as_array(key, v)?
                .iter()
                .map(|x| as_f64(key, x))
                .collect::<Result<_, _>>()?
        }
        "policies" => {
            cfg.policies = as_array(key, v)?
                .iter()
                .map(|x| {
                    x.as_str()
                        .ok_or_else(|| bad(key, "policy names must be strings"))?
                        .parse::<PolicyKind>()
                        .map_err(|e| bad(key, e.to_string()))
                })
                .collect::<Result<_, _>>()?
        }
        "replications" => cfg.replications = as_usize(key, v)?,
        other => return Err(bad(other, "unknown key")),
    }
    Ok(())
}

/// Current value of a documented key.
pub fn get(cfg: &ExperimentConfig, key: &str) -> Option<Value> {
    let wl = &cfg.workload;
    let f = |x: f64| Some(Value::Float(x));
    let int = |x: u64| Some(Value::Integer(x as i64));
    match key {
        "n_videos" => int(wl.n_videos as u64),
        "fav_fraction" => f(wl.fav_fraction),
        "period_hours" => int(wl.period_hours as u64),
        "seed" => int(cfg.seed),
        "size_log_mean" => f(wl.size_log_mean),
        "size_log_sd" => f(wl.size_log_sd),
        "zipf_exponent" => f(wl.zipf_exponent),
        "trend_slope_min" => f(wl.trend_slope_range.min),
        "trend_slope_max" => f(wl.trend_slope_range.max),
        "cold_trend_slope_min" => f(wl.cold_trend_slope_range.min),
        "cold_trend_slope_max" => f(wl.cold_trend_slope_range.max),
        "base_rate_fav" => f(wl.base_rate_fav),
        "base_rate_cold" => f(wl.base_rate_cold),
        "transcode_seconds_min" => f(wl.transcode_seconds_range.min),
        "transcode_seconds_max" => f(wl.transcode_seconds_range.max),
        "noise" => Some(Value::Boolean(wl.noise)),
        "storage_price_per_gb_month" => f(cfg.prices.storage_price_per_gb_month),
        "vm_price_per_hour" => f(cfg.prices.vm_price_per_hour),
        "storage_months_per_period" => f(cfg.prices.storage_months_per_period),
        "fav_sweep" => Some(Value::Array(
            cfg.fav_sweep.iter().map(|&x| Value::Float(x)).collect(),
        )),
        "policies" => Some(Value::Array(
            cfg.policies
                .iter()
                .map(|p| Value::String(p.name().into()))
                .collect(),
        )),
        "replications" => int(cfg.replications as u64),
        _ => None,
    }
}

/// Parses the right-hand side of `--set key=value`: TOML syntax when it
/// parses, otherwise the raw text as a string.
fn parse_override(raw: &str) -> Result<(String, Value), CliError> {
    let (key, value) = raw
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("--set expects key=value, got `{raw}`")))?;
    let key = key.trim();
    let value = value.trim();
    let parsed = toml::from_str::<toml::Table>(&format!("v = {value}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(value.to_owned()));
    Ok((key.to_owned(), parsed))
}

pub fn from_str_with_overrides(
    text: Option<&str>,
    overrides: &[String],
    seed: Option<u64>,
) -> Result<ExperimentConfig, CliError> {
    let mut table = match text {
        Some(t) => toml::from_str::<toml::Table>(t)
            .map_err(|e| CliError::Config(format!("config file: {}", e.message())))?,
        None => toml::Table::new(),
    };
    for raw in overrides {
        let (k, v) = parse_override(raw)?;
        table.insert(k, v);
    }
    if let Some(seed) = seed {
        table.insert("seed".into(), Value::String(seed.to_string()));
    }

    let mut cfg = ExperimentConfig::default();
    // A fixed order keeps interval bounds and the seed independent of file order.
    if let Some(unknown) = table.keys().find(|k| !is_known(k)) {
        return Err(bad(unknown, "unknown key"));
    }
    for (key, _) in KEYS {
        if let Some(v) = table.get(*key) {
            apply(&mut cfg, key, v)?;
        }
    }
    cfg.validate().map_err(|e| match e {
        vidcost_core::Error::Config { key, message } => bad(&key, message),
        other => CliError::Config(other.to_string()),
    })?;
    Ok(cfg)
}

pub fn load(
    path: Option<&Path>,
    overrides: &[String],
    seed: Option<u64>,
) -> Result<ExperimentConfig, CliError> {
    let text = match path {
        Some(p) => Some(
            fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
        ),
        None => None,
    };
    from_str_with_overrides(text.as_deref(), overrides, seed)
}

/// The built-in defaults rendered as a config file.
pub fn default_file() -> String {
    let cfg = ExperimentConfig::default();
    let mut out = String::new();
    for (key, doc) in KEYS {
        let v = get(&cfg, key).expect("documented key");
        out.push_str(&format!("# {doc}\n{key} = {v}\n"));
    }
    out
}
