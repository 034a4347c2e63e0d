//! Experiment configuration: a TOML file with full command-line override.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: u64,
    pub p: Vec<f64>,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub manifest: Option<PathBuf>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
    /// Failures per point before stopping early at a chunk boundary.
    #[serde(default = "default_max_failures")]
    pub max_failures: u64,
    pub code: CodeSource,
    #[serde(rename = "decoder")]
    pub decoders: Vec<DecoderEntry>,
}

fn default_jobs() -> usize {
    1
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

fn default_max_failures() -> u64 {
    100
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", deny_unknown_fields)]
pub enum CodeSource {
    /// Hypergraph product of two alist parity-check matrices.
    Hp { h1: PathBuf, h2: PathBuf },
    /// Lifted product of two QC weight matrices.
    Lp { w1: PathBuf, w2: PathBuf },
}

/// One decoder to score. `bias-transfer` runs the VV/CC-scheduled min-sum
/// with a classical per-edge bias (`bias-scale` times the channel LLR on
/// the factor graph) copied onto every factor-graph copy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DecoderEntry {
    pub name: String,
    pub kind: DecoderKindName,
    #[serde(default)]
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub w: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub bias_scale: Option<f64>,
    #[serde(default)]
    pub members: Option<Vec<DecoderEntry>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKindName {
    Bf,
    Tsbf,
    TsbfRandomTiebreak,
    Minsum,
    MinsumScheduled,
    BiasTransfer,
    Diversity,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
