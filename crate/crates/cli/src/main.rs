mod config;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;
use vidcost_core::report::{
    format_experiment_table, format_money, write_cells_csv, write_decisions_csv,
    write_experiment_csv, write_plot_data, write_summaries_csv,
};
use vidcost_core::workload::{read_catalog_csv, write_catalog_csv};
use vidcost_core::{
    decide, fit_ols, load_trace, predict_next_period_views, run_experiment, run_policy,
    synthesize_catalog, synthesize_views, write_trace, OlsForecaster, PolicyDecision, PolicyKind,
    TracePair, TraceSet, Verdict, VideoAsset,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Run(#[from] vidcost_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Config(_) => 3,
            CliError::Run(vidcost_core::Error::Config { .. }) => 3,
            CliError::Run(_) | CliError::Io { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DecidePolicy {
    Predictive,
    StaticThreshold,
}

/// Keep-or-retranscode cost simulator for cloud video repositories.
#[derive(Debug, Parser)]
#[command(name = "vidcost", version)]
struct Cli {
    /// Flat TOML config file; built-in defaults apply to missing keys.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory that receives every output file.
    #[arg(long = "out", global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Override a config key (repeatable), e.g. `--set n_videos=200`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Override the base seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic catalog plus current and next period traces.
    Synth,
    /// Fit a trend line to a trace file and forecast the next period.
    Fit { trace: PathBuf },
    /// Decide keep/delete for each catalog video from its current trace.
    Decide {
        #[arg(long)]
        catalog: PathBuf,
        /// Directory holding `<video_id>.dat` current-period traces.
        #[arg(long)]
        traces: PathBuf,
        /// Directory of realized next-period traces; adds a per-policy cost summary.
        #[arg(long)]
        next: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "predictive")]
        policy: DecidePolicy,
    },
    /// Sweep the frequently accessed fraction and compare all policies.
    Simulate,
    /// Print the built-in defaults as a config file.
    DefaultConfig,
}

/// Writes to a temporary sibling and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut v = serde_json::to_vec_pretty(value).map_err(vidcost_core::Error::from)?;
    v.push(b'\n');
    Ok(v)
}

/// Fixed six decimals without a stray minus sign on zero.
fn fixed6(x: f64) -> String {
    let s = format_money(x);
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        s.trim_start_matches('-').to_owned()
    } else {
        s
    }
}

fn cmd_synth(cli: &Cli) -> Result<(), CliError> {
    let cfg = config::load(cli.config.as_deref(), &cli.overrides, cli.seed)?;
    let catalog = synthesize_catalog(&cfg.workload)?;
    let traces = synthesize_views(&cfg.workload, &catalog)?;

    let mut buf = Vec::new();
    write_catalog_csv(&catalog, &mut buf)?;
    write_atomic(&cli.out.join("catalog.csv"), &buf)?;
    for (id, pair) in &traces {
        for (dir, trace) in [("current", &pair.current), ("next", &pair.next)] {
            let mut buf = Vec::new();
            write_trace(trace, &mut buf).expect("in-memory write");
            write_atomic(
                &cli.out.join("traces").join(dir).join(format!("{id}.dat")),
                &buf,
            )?;
        }
    }
    println!(
        "wrote {} videos ({} frequently accessed) to {}",
        catalog.len(),
        cfg.workload.fav_count(catalog.len()),
        cli.out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct FitOutput {
    slope: f64,
    intercept: f64,
    n_points: usize,
    forecast: f64,
}

fn cmd_fit(cli: &Cli, path: &Path) -> Result<(), CliError> {
    let trace = load_trace(path)?;
    let model = fit_ols(&trace)?;
    let forecast = predict_next_period_views(&model, trace.period_hours());
    match cli.format {
        Format::Csv => {
            println!("slope {}", fixed6(model.slope));
            println!("intercept {}", fixed6(model.intercept));
            println!("forecast {}", fixed6(forecast));
        }
        Format::Json => {
            let out = FitOutput {
                slope: model.slope,
                intercept: model.intercept,
                n_points: model.n_points,
                forecast,
            };
            print!("{}", String::from_utf8(json(&out)?).expect("utf8"));
        }
    }
    Ok(())
}

fn load_traces_for(
    catalog: &[VideoAsset],
    dir: &Path,
) -> Result<Vec<vidcost_core::ViewTrace>, CliError> {
    catalog
        .iter()
        .map(|a| Ok(load_trace(&dir.join(format!("{}.dat", a.id)))?))
        .collect()
}

fn cmd_decide(
    cli: &Cli,
    catalog_path: &Path,
    traces_dir: &Path,
    next_dir: Option<&Path>,
    policy: DecidePolicy,
) -> Result<(), CliError> {
    let cfg = config::load(cli.config.as_deref(), &cli.overrides, cli.seed)?;
    let prices = cfg.prices;
    let file = fs::File::open(catalog_path).map_err(|e| CliError::Io {
        path: catalog_path.to_path_buf(),
        source: e,
    })?;
    let catalog = read_catalog_csv(file)?;
    let current = load_traces_for(&catalog, traces_dir)?;

    let mut decisions: Vec<PolicyDecision> = catalog
        .iter()
        .zip(&current)
        .map(|(asset, trace)| {
            let forecast = match policy {
                DecidePolicy::Predictive => {
                    predict_next_period_views(&fit_ols(trace)?, trace.period_hours())
                }
                DecidePolicy::StaticThreshold => trace.total_views() as f64,
            };
            Ok(decide(asset, forecast, &prices))
        })
        .collect::<Result<_, CliError>>()?;
    decisions.sort_by(|a, b| a.video_id.cmp(&b.video_id));

    match cli.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_decisions_csv(&decisions, &mut buf)?;
            write_atomic(&cli.out.join("decisions.csv"), &buf)?;
        }
        Format::Json => write_atomic(&cli.out.join("decisions.json"), &json(&decisions)?)?,
    }
    let kept = decisions
        .iter()
        .filter(|d| d.verdict == Verdict::Keep)
        .count();
    println!("kept {kept}, deleted {}", decisions.len() - kept);

    if let Some(next_dir) = next_dir {
        let next = load_traces_for(&catalog, next_dir)?;
        let traces: TraceSet = catalog
            .iter()
            .zip(current.into_iter().zip(next))
            .map(|(a, (current, next))| (a.id.clone(), TracePair { current, next }))
            .collect();
        let reports = PolicyKind::ALL
            .iter()
            .map(|&k| run_policy(k, &catalog, &traces, &prices, &OlsForecaster))
            .collect::<Result<Vec<_>, _>>()?;
        match cli.format {
            Format::Csv => {
                let mut buf = Vec::new();
                write_summaries_csv(&reports, &mut buf)?;
                write_atomic(&cli.out.join("summary.csv"), &buf)?;
            }
            Format::Json => {
                let summaries: Vec<_> = reports
                    .iter()
                    .map(vidcost_core::report::PeriodSummary::rounded)
                    .collect();
                write_atomic(&cli.out.join("summary.json"), &json(&summaries)?)?;
            }
        }
        for r in &reports {
            println!("{:>16} ${:.2}", r.policy.name(), r.total_dollars);
        }
    }
    Ok(())
}

fn cmd_simulate(cli: &Cli) -> Result<(), CliError> {
    let cfg = config::load(cli.config.as_deref(), &cli.overrides, cli.seed)?;
    let report = run_experiment(&cfg)?;
    match cli.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_experiment_csv(&report, &mut buf)?;
            write_atomic(&cli.out.join("report.csv"), &buf)?;
        }
        Format::Json => {
            let rows = vidcost_core::report::rounded_rows(&report);
            write_atomic(&cli.out.join("report.json"), &json(&rows)?)?;
        }
    }
    let mut buf = Vec::new();
    write_cells_csv(&report, &mut buf)?;
    write_atomic(&cli.out.join("cells.csv"), &buf)?;
    let mut buf = Vec::new();
    write_plot_data(&report, &mut buf)?;
    write_atomic(&cli.out.join("plot.dat"), &buf)?;
    print!("{}", format_experiment_table(&report));
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Synth => cmd_synth(cli),
        Command::Fit { trace } => cmd_fit(cli, trace),
        Command::Decide {
            catalog,
            traces,
            next,
            policy,
        } => cmd_decide(cli, catalog, traces, next.as_deref(), *policy),
        Command::Simulate => cmd_simulate(cli),
        Command::DefaultConfig => std::io::stdout()
            .write_all(config::default_file().as_bytes())
            .map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                source: e,
            }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vidcost: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
