//! Iterative syndrome decoders: bit-flipping, trapping-set-aware
//! bit-flipping (with an optional random tie-break), per-edge-biased
//! normalized min-sum, its VV/CC-scheduled variant, and a diversity
//! ensemble that keeps the lightest converged estimate.

mod bf;
mod minsum;

pub use bf::{bf_decode, tsbf_decode, tsbf_random_tiebreak_decode};
pub use minsum::{minsum_decode, minsum_scheduled_decode};

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::tanner::TannerGraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    Bf,
    Tsbf,
    TsbfRandomTiebreak,
    Minsum,
    MinsumScheduled,
}

/// Configuration shared by all decoders; min-sum reads `w` and the biases,
/// the tie-break variant reads `rng_seed`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub kind: DecoderKind,
    pub max_iters: usize,
    /// Normalization applied to the sum of check messages (min-sum only).
    pub w: f64,
    /// Per-edge biases, indexed by Tanner edge id; absent edges fall back.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_bias: Option<Vec<f64>>,
    /// Bias used where `edge_bias` is absent, typically `ln((1-p)/p)`.
    pub default_bias: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rng_seed: Option<u64>,
    #[serde(default)]
    pub record_trace: bool,
}

impl DecoderConfig {
    pub fn new(kind: DecoderKind, max_iters: usize) -> Self {
        Self {
            kind,
            max_iters,
            w: 0.75,
            edge_bias: None,
            default_bias: 1.0,
            rng_seed: None,
            record_trace: false,
        }
    }

    /// Sets the uniform bias from the depolarizing rate: `ln((1-p)/p)`.
    pub fn with_channel(mut self, p: f64) -> Self {
        self.default_bias = ((1.0 - p) / p).ln();
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = Some(seed);
        self
    }

    pub(crate) fn validate(&self, graph: &TannerGraph) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidDecoderConfig("max_iters must be at least 1"));
        }
        if matches!(self.kind, DecoderKind::Minsum | DecoderKind::MinsumScheduled) {
            if !(self.w.is_finite() && self.w > 0.0) {
                return Err(Error::InvalidDecoderConfig("w must be finite and positive"));
            }
            if !self.default_bias.is_finite() {
                return Err(Error::NonFiniteMessage);
            }
            if let Some(biases) = &self.edge_bias {
                if biases.len() != graph.edge_count() {
                    return Err(Error::DimensionMismatch {
                        expected: graph.edge_count(),
                        got: biases.len(),
                    });
                }
                if biases.iter().any(|b| !b.is_finite()) {
                    return Err(Error::NonFiniteMessage);
                }
            }
        }
        Ok(())
    }
}

/// Result of a decoding attempt. `converged` holds exactly when the
/// estimate reproduces the input syndrome.
#[derive(Clone, Debug)]
pub struct DecodeOutcome {
    pub estimate: BitVec,
    pub converged: bool,
    pub iters_used: usize,
    /// Estimate after each iteration, when tracing was requested.
    pub trace: Option<Vec<BitVec>>,
}

/// Runs the decoder selected by `cfg.kind`.
pub fn decode(graph: &TannerGraph, sigma: &BitVec, cfg: &DecoderConfig) -> Result<DecodeOutcome> {
    match cfg.kind {
        DecoderKind::Bf => bf_decode(graph, sigma, cfg),
        DecoderKind::Tsbf => tsbf_decode(graph, sigma, cfg),
        DecoderKind::TsbfRandomTiebreak => tsbf_random_tiebreak_decode(graph, sigma, cfg),
        DecoderKind::Minsum => minsum_decode(graph, sigma, cfg),
        DecoderKind::MinsumScheduled => minsum_scheduled_decode(graph, sigma, cfg),
    }
}

/// Runs every member and returns the converged estimate of least Hamming
/// weight, ties broken by member order. With no convergence, member 0's
/// outcome is returned.
pub fn diversity_decode(
    graph: &TannerGraph,
    sigma: &BitVec,
    members: &[DecoderConfig],
) -> Result<DecodeOutcome> {
    if members.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let mut fallback: Option<DecodeOutcome> = None;
    let mut best: Option<(usize, DecodeOutcome)> = None;
    for cfg in members {
        let outcome = decode(graph, sigma, cfg)?;
        if fallback.is_none() {
            fallback = Some(outcome.clone());
        }
        if outcome.converged {
            let weight = outcome.estimate.weight();
            let better = match &best {
                None => true,
                Some((best_weight, _)) => weight < *best_weight,
            };
            if better {
                best = Some((weight, outcome));
            }
        }
    }
    Ok(match best {
        Some((_, outcome)) => outcome,
        None => fallback.expect("at least one member ran"),
    })
}

pub(crate) fn check_sigma_len(graph: &TannerGraph, sigma: &BitVec) -> Result<()> {
    if sigma.len() != graph.check_count() {
        return Err(Error::DimensionMismatch {
            expected: graph.check_count(),
            got: sigma.len(),
        });
    }
    Ok(())
}
