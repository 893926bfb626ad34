//! Experiment config: one TOML file, `version = 1`, one table per subcommand.

use serde::Deserialize;

use crate::error::CliError;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub version: u32,
    #[serde(default)]
    pub seed: u64,
    pub budget: Option<u64>,
    pub catalog: Option<CatalogConfig>,
    pub dist: Option<DistConfig>,
    pub tower: Option<TowerConfig>,
    pub entropy: Option<EntropyConfig>,
    pub validate: Option<ValidateConfig>,
    pub genprof: Option<GenprofConfig>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Config = toml::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
        if cfg.version != CONFIG_VERSION {
            return Err(CliError::Input(format!(
                "config version {} is not supported (expected {CONFIG_VERSION})",
                cfg.version
            )));
        }
        Ok(cfg)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogConfig {
    pub entries: Vec<String>,
    /// Words whose fix ratios are listed per entry.
    #[serde(default)]
    pub words: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct StrategyConfig {
    /// `exhaustive` or `local`.
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
    #[serde(default = "default_moves")]
    pub max_moves: usize,
}

fn default_mode() -> String {
    "exhaustive".into()
}

fn default_restarts() -> usize {
    4
}

fn default_moves() -> usize {
    10_000
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistConfig {
    /// `inf`, `sup` or `sym`.
    pub kind: String,
    pub a: String,
    pub b: String,
    pub words: Vec<String>,
    pub k: Option<usize>,
    /// Partition of `a`, for `inf`.
    pub partition: Option<String>,
    #[serde(default)]
    pub outer: Option<StrategyConfig>,
    #[serde(default)]
    pub inner: Option<StrategyConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerConfig {
    pub tower: String,
    pub words: Vec<String>,
    pub k: usize,
    #[serde(default)]
    pub outer: Option<StrategyConfig>,
    #[serde(default)]
    pub inner: Option<StrategyConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyConfig {
    pub source: String,
    pub xi: String,
    pub alphas: Vec<String>,
    pub words: Vec<Vec<String>>,
    pub deltas: Vec<String>,
    pub sigma: Vec<String>,
    /// `exact` or `monte-carlo`.
    #[serde(default = "default_method")]
    pub method: String,
    #[serde(default = "default_samples")]
    pub samples: u64,
}

fn default_method() -> String {
    "exact".into()
}

fn default_samples() -> u64 {
    10_000
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSequence {
    pub generators: usize,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateConfig {
    /// All levels of a tower, in order.
    pub tower: Option<String>,
    /// Explicit action references.
    pub actions: Option<Vec<String>>,
    /// Uniform random permutations, seeded by the run seed.
    pub random: Option<RandomSequence>,
    #[serde(default)]
    pub kernel: Vec<String>,
    pub probes: Option<Vec<String>>,
    #[serde(default = "default_lo")]
    pub lo: f64,
    #[serde(default = "default_hi")]
    pub hi: f64,
}

fn default_lo() -> f64 {
    0.30
}

fn default_hi() -> f64 {
    0.70
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenprofConfig {
    pub tower: String,
    pub eps: f64,
    pub depth: Option<usize>,
}
