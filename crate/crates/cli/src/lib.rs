//! Experiment front end: configuration, CSV artifacts, and the
//! `simulate` / `identify` / `search` / `noise-table` commands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub mod commands;
pub mod config;
pub mod csvio;

pub use config::ExperimentConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] fracsysid::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for configuration errors, 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fracsysid", version, about = "Identify 1/(a1 s^α + a2 s^β + a3) from step-response data")]
pub struct Cli {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Base profile: `standard` (T = 0.001) or `fast` (T = 0.01).
    #[arg(long, global = true, default_value = "standard")]
    pub profile: String,

    /// `key=value` override applied after the config file; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate the configured model's step response, clean and corrupted.
    Simulate,
    /// Solve for (a1, a2, a3) at fixed powers.
    Identify {
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        /// Measured `time,value` record instead of synthetic data.
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Search the (alpha, beta) plane with algorithm 1 or 2.
    Search {
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Differintegrals of independent noise records at t = L.
    NoiseTable,
    /// Print the effective configuration.
    ShowConfig,
}

impl Cli {
    pub fn experiment(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = ExperimentConfig::profile(&self.profile)?;
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            cfg.apply_text(&text)?;
        }
        for o in &self.overrides {
            cfg.apply_override(o)?;
        }
        Ok(cfg)
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = cli.experiment()?;
    match &cli.command {
        Command::Simulate => commands::simulate(&cfg, out).map(drop),
        Command::Identify {
            alpha,
            beta,
            record,
        } => commands::identify(&cfg, *alpha, *beta, record.as_deref(), out),
        Command::Search { record } => commands::search(&cfg, record.as_deref(), out).map(drop),
        Command::NoiseTable => commands::noise_table(&cfg, out).map(drop),
        Command::ShowConfig => {
            cfg.validate()?;
            write!(out, "{}", cfg.to_text())?;
            Ok(())
        }
    }
}
