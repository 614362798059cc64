//! Command-line interface.

pub mod commands;
pub mod config;

use std::net::IpAddr;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};

use config::{Config, ConfigFile, Overrides, PriorSpec};
use sixbox_core::Format;

#[derive(Debug, Parser)]
#[command(
    name = "sixbox",
    version,
    about = "Sequential Bayesian inference for the six-box urn game"
)]
pub struct Cli {
    /// Balls per box; the model has m + 1 boxes [default: 5]
    #[arg(long, global = true)]
    pub m: Option<u32>,

    /// Output format for tables: csv or json [default: csv]
    #[arg(long, global = true, value_parser = parse_format)]
    pub format: Option<Format>,

    /// Prior over boxes: "uniform" or comma-separated weights [default: uniform]
    #[arg(long, global = true, value_parser = PriorSpec::parse)]
    pub prior: Option<PriorSpec>,

    /// TOML file with defaults for m, seed, run_length, format and prior
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a sequence from one box and write it as a 0/1 file
    Generate {
        /// Box index, 0..=m
        #[arg(long = "box")]
        index: usize,
        /// Number of draws
        #[arg(long, short)]
        n: usize,
        /// Generator seed [default: 20160715]
        #[arg(long, env = "SIXBOX_SEED")]
        seed: Option<u64>,
        /// Destination file
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Belief trajectories and final state for a sequence file and each run
    Analyze {
        /// Sequence file: one 0/1 per line, or CSV with an x column
        input: PathBuf,
        /// Directory for the output files
        #[arg(long)]
        out_dir: PathBuf,
        /// Draws per run [default: 100]
        #[arg(long)]
        run_length: Option<usize>,
    },
    /// Uniform-prior posterior, binomial and sequence likelihood per box for n draws with x whites
    Anatomy { n: u64, x: u64 },
    /// Bayes-Turing factors for every pair of boxes
    Odds { n: u64, x: u64 },
    /// Exact versus closed-form posterior and predictive after 1..=MAX_N blacks, uniform prior
    Approx {
        #[arg(value_name = "MAX_N")]
        max_n: u64,
    },
    /// Probability that a standard normal draw rounds to VALUE at DECIMALS places
    Gaussian {
        #[arg(allow_hyphen_values = true)]
        value: f64,
        #[arg(default_value_t = 12)]
        decimals: u32,
    },
    /// Run the live game HTTP service
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Directory of static web assets served at /
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Append-only session journal, replayed at startup
        #[arg(long)]
        journal: Option<PathBuf>,
    },
}

impl Cli {
    fn config(&self) -> Result<Config> {
        let file = self.config.as_deref().map(ConfigFile::load).transpose()?;
        let (seed, run_length) = match &self.command {
            Command::Generate { seed, .. } => (*seed, None),
            Command::Analyze { run_length, .. } => (None, *run_length),
            _ => (None, None),
        };
        Config::resolve(
            Overrides {
                m: self.m,
                seed,
                run_length,
                format: self.format,
                prior: self.prior.clone(),
            },
            file,
        )
    }
}

/// Runs the parsed command and returns what should go to standard output.
pub fn run(cli: Cli) -> Result<String> {
    let cfg = cli.config()?;
    match cli.command {
        Command::Generate { index, n, out, .. } => commands::generate(&cfg, index, n, &out),
        Command::Analyze { input, out_dir, .. } => commands::analyze(&cfg, &input, &out_dir),
        Command::Anatomy { n, x } => commands::anatomy_table(&cfg, n, x),
        Command::Odds { n, x } => commands::odds(&cfg, n, x),
        Command::Approx { max_n } => commands::approx(&cfg, max_n),
        Command::Gaussian { value, decimals } => commands::gaussian(&cfg, value, decimals),
        Command::Serve {
            host,
            port,
            static_dir,
            journal,
        } => commands::serve(&cfg, host, port, static_dir, journal).map(|_| String::new()),
    }
}
