//! Settings shared by all subcommands: flags, then the optional config file,
//! then built-in defaults.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use sixbox_core::{BoxModel, Format, LogPosterior, RunPartition};

pub const DEFAULT_SEED: u64 = 20160715;

/// Prior over boxes.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum PriorSpec {
    #[default]
    Uniform,
    /// Non-negative weights, normalized when the prior is built.
    Weights(Vec<f64>),
}

impl PriorSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("uniform") {
            return Ok(PriorSpec::Uniform);
        }
        let weights = s
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<f64>()
                    .with_context(|| format!("bad prior weight {w:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PriorSpec::Weights(weights))
    }

    pub fn build(&self, model: BoxModel) -> Result<LogPosterior> {
        Ok(match self {
            PriorSpec::Uniform => LogPosterior::uniform(model),
            PriorSpec::Weights(w) => LogPosterior::from_weights(model, w)?,
        })
    }
}

/// Contents of a `--config` TOML file; every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub m: Option<u32>,
    pub seed: Option<u64>,
    pub run_length: Option<usize>,
    pub format: Option<String>,
    pub prior: Option<PriorValue>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PriorValue {
    Name(String),
    Weights(Vec<f64>),
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub model: BoxModel,
    pub seed: u64,
    pub run_length: usize,
    pub format: Format,
    pub prior: PriorSpec,
}

/// Values given on the command line (or through the environment).
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub m: Option<u32>,
    pub seed: Option<u64>,
    pub run_length: Option<usize>,
    pub format: Option<Format>,
    pub prior: Option<PriorSpec>,
}

impl Config {
    pub fn resolve(flags: Overrides, file: Option<ConfigFile>) -> Result<Config> {
        let file = file.unwrap_or_default();
        let m = flags.m.or(file.m).unwrap_or(BoxModel::DEFAULT_BALLS);
        let file_format = file
            .format
            .map(|f| f.parse::<Format>().map_err(anyhow::Error::msg))
            .transpose()?;
        let file_prior = match file.prior {
            None => None,
            Some(PriorValue::Name(n)) => Some(PriorSpec::parse(&n)?),
            Some(PriorValue::Weights(w)) => Some(PriorSpec::Weights(w)),
        };
        let run_length = flags
            .run_length
            .or(file.run_length)
            .unwrap_or(RunPartition::DEFAULT_RUN_LENGTH);
        if run_length == 0 {
            bail!("run length must be at least 1");
        }
        let config = Config {
            model: BoxModel::new(m)?,
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            run_length,
            format: flags.format.or(file_format).unwrap_or_default(),
            prior: flags.prior.or(file_prior).unwrap_or_default(),
        };
        // fail early on a prior that does not fit the model
        config.prior.build(config.model)?;
        Ok(config)
    }
}
