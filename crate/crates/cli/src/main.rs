//! `zakzc`: runs the configured experiment and writes a CSV table plus a
//! `<out>.meta.json` sidecar holding the resolved configuration.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use zakzc_core::experiment::{self, ExperimentConfig, Preset};

#[derive(Parser)]
#[command(name = "zakzc", version, about = "Zak-OTFS delay-Doppler experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML file; its keys override the subcommand defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Master seed (overrides the config)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output CSV path [default: <subcommand>.csv]
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Monte Carlo trial count (overrides the config)
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Worker threads
    #[arg(long, global = true, env = "ZAKZC_THREADS")]
    threads: Option<usize>,

    /// Suppress progress output
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Self- or cross-ambiguity surface of ZC pilots: k, l, magnitude
    Ambiguity,
    /// PAPR of the transmit-shaped pilots: pilot, papr_db
    Papr,
    /// Channel-estimation NMSE against PDR: pdr_db, nmse_db, pilot
    Nmse,
    /// Uncoded 4-QAM BER against PDR per turbo iteration count
    Ber,
    /// Preamble missed-detection probability against user SNR
    Rach,
}

impl Command {
    fn preset(self) -> Preset {
        match self {
            Command::Ambiguity => Preset::Ambiguity,
            Command::Papr => Preset::Papr,
            Command::Nmse => Preset::Nmse,
            Command::Ber => Preset::Ber,
            Command::Rach => Preset::Rach,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Command::Ambiguity => "ambiguity",
            Command::Papr => "papr",
            Command::Nmse => "nmse",
            Command::Ber => "ber",
            Command::Rach => "rach",
        }
    }
}

#[derive(Serialize)]
struct Metadata<'a> {
    command: &'a str,
    library: &'a str,
    version: &'a str,
    rows: usize,
    config: &'a ExperimentConfig,
}

fn resolve_config(cli: &Cli) -> Result<ExperimentConfig> {
    let base = ExperimentConfig::preset(cli.command.preset());
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            ExperimentConfig::from_toml_over(&text, &base)
                .with_context(|| format!("config {}", path.display()))?
        }
        None => base,
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    out.with_file_name(name)
}

fn progress_printer(label: &'static str, quiet: bool) -> impl Fn(usize, usize) + Sync {
    move |done, total| {
        if quiet {
            return;
        }
        let step = (total / 100).max(1);
        if done % step == 0 || done == total {
            let mut err = std::io::stderr().lock();
            let _ = write!(err, "\r{label}: {done}/{total} trials");
            if done == total {
                let _ = writeln!(err);
            }
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let cfg = resolve_config(cli)?;
    let name = cli.command.name();
    let out = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{name}.csv")));
    let progress = progress_printer(name, cli.quiet);
    let rows = match cli.command {
        Command::Ambiguity => {
            let rows = experiment::run_ambiguity(&cfg)?;
            write_csv(&out, &rows)?;
            rows.len()
        }
        Command::Papr => {
            let rows = experiment::run_papr(&cfg)?;
            write_csv(&out, &rows)?;
            rows.len()
        }
        Command::Nmse => {
            let rows = experiment::run_nmse(&cfg, &progress)?;
            write_csv(&out, &rows)?;
            rows.len()
        }
        Command::Ber => {
            let rows = experiment::run_ber(&cfg, &progress)?;
            write_csv(&out, &rows)?;
            rows.len()
        }
        Command::Rach => {
            let rows = experiment::run_rach(&cfg, &progress)?;
            write_csv(&out, &rows)?;
            rows.len()
        }
    };
    let meta = Metadata {
        command: name,
        library: "zakzc-core",
        version: env!("CARGO_PKG_VERSION"),
        rows,
        config: &cfg,
    };
    let side = sidecar_path(&out);
    fs::write(&side, serde_json::to_string_pretty(&meta)? + "\n")
        .with_context(|| format!("writing {}", side.display()))?;
    if !cli.quiet {
        eprintln!("{name}: wrote {rows} rows to {}", out.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
