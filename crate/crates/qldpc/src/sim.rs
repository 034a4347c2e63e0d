//! Monte Carlo logical-error-rate estimation over the depolarizing channel.
//!
//! X-error correction is simulated by decoding the Z-side syndrome; a trial
//! fails when the decoder does not converge or the residual is a nontrivial
//! logical, i.e. outside the row space of H_X. Per-trial RNG streams derive
//! from the master seed, so failure counts are independent of the
//! parallelism level; early stopping is decided at fixed chunk boundaries
//! for the same reason.

use crate::channel::{sample_depolarizing, trial_rng};
use crate::code::CssCode;
use crate::decoder::{decode, diversity_decode, DecodeOutcome, DecoderConfig};
use crate::error::{Error, Result};
use crate::gf2::{BitVec, RowSpace};
use crate::tanner::TannerGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// A single decoder or a diversity ensemble scored as one decoder.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderSpec {
    Single(DecoderConfig),
    Diversity(Vec<DecoderConfig>),
}

impl DecoderSpec {
    pub fn run(&self, graph: &TannerGraph, sigma: &BitVec) -> Result<DecodeOutcome> {
        match self {
            DecoderSpec::Single(cfg) => decode(graph, sigma, cfg),
            DecoderSpec::Diversity(members) => diversity_decode(graph, sigma, members),
        }
    }
}

/// Outcome of one Monte Carlo trial.
#[derive(Clone, Copy, Debug)]
pub struct TrialResult {
    pub failed: bool,
    pub converged: bool,
    pub residual_weight: usize,
}

/// One point of a logical-error-rate sweep.
#[derive(Clone, Debug, Serialize)]
pub struct LerPoint {
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub ler: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Simulation controls; `max_failures` bounds the failures collected per
/// point before stopping early at a chunk boundary.
#[derive(Clone, Debug)]
pub struct SimOptions {
    pub trials: u64,
    pub master_seed: u64,
    pub parallelism: usize,
    pub max_failures: u64,
    pub chunk: u64,
}

impl SimOptions {
    pub fn new(trials: u64, master_seed: u64) -> Self {
        Self {
            trials,
            master_seed,
            parallelism: 1,
            max_failures: 100,
            chunk: 1000,
        }
    }
}

/// True iff correcting `e_x` with `estimate` leaves a logical fault:
/// a syndrome mismatch or a residual outside the row space of H_X.
pub fn logical_failure(
    code: &CssCode,
    x_row_space: &RowSpace,
    e_x: &BitVec,
    estimate: &BitVec,
) -> Result<bool> {
    if e_x.len() != estimate.len() {
        return Err(Error::DimensionMismatch {
            expected: e_x.len(),
            got: estimate.len(),
        });
    }
    let mut residual = e_x.clone();
    residual.xor_assign(estimate);
    if !code.h_z().mul_vec(&residual)?.is_zero() {
        return Ok(true);
    }
    Ok(!x_row_space.contains(&residual)?)
}

#[allow(clippy::too_many_arguments)]
fn run_trial(
    code: &CssCode,
    graph: &TannerGraph,
    x_row_space: &RowSpace,
    spec: &DecoderSpec,
    p: f64,
    point_index: usize,
    master_seed: u64,
    trial_index: u64,
) -> Result<TrialResult> {
    let mut rng = trial_rng(master_seed, point_index, trial_index);
    let error = sample_depolarizing(code.n(), p, &mut rng)?;
    let sigma = code.h_z().mul_vec(&error.e_x)?;
    let outcome = spec.run(graph, &sigma)?;
    let mut residual = error.e_x.clone();
    residual.xor_assign(&outcome.estimate);
    let failed = logical_failure(code, x_row_space, &error.e_x, &outcome.estimate)?;
    Ok(TrialResult {
        failed,
        converged: outcome.converged,
        residual_weight: residual.weight(),
    })
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.96f64;
    let n = trials as f64;
    let phat = failures as f64 / n;
    let denom = 1.0 + z * z / n;
    let center = (phat + z * z / (2.0 * n)) / denom;
    let margin = (z / denom) * (phat * (1.0 - phat) / n + z * z / (4.0 * n * n)).sqrt();
    ((center - margin).max(0.0), (center + margin).min(1.0))
}

/// Sweeps the depolarizing probabilities, decoding the X side at each
/// point. The decoder spec is rebuilt per point through `spec_for_p`, so
/// channel-dependent biases track the swept probability. Failure counts
/// depend only on `(master_seed, p_list, trials)`, never on `parallelism`.
pub fn estimate_ler<F>(
    code: &CssCode,
    spec_for_p: F,
    p_list: &[f64],
    opts: &SimOptions,
) -> Result<Vec<LerPoint>>
where
    F: Fn(f64) -> Result<DecoderSpec>,
{
    if opts.trials == 0 {
        return Err(Error::InvalidDecoderConfig("trials must be at least 1"));
    }
    let graph = TannerGraph::z_graph(code);
    let x_row_space = code.h_x().row_space();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.parallelism.max(1))
        .build()
        .expect("thread pool construction");

    let mut points = Vec::with_capacity(p_list.len());
    for (point_index, &p) in p_list.iter().enumerate() {
        let spec = spec_for_p(p)?;
        let mut failures = 0u64;
        let mut done = 0u64;
        while done < opts.trials {
            let batch = opts.chunk.min(opts.trials - done);
            let spec = &spec;
            let results: Result<Vec<TrialResult>> = pool.install(|| {
                (done..done + batch)
                    .into_par_iter()
                    .map(|trial| {
                        run_trial(
                            code,
                            &graph,
                            &x_row_space,
                            spec,
                            p,
                            point_index,
                            opts.master_seed,
                            trial,
                        )
                    })
                    .collect()
            });
            failures += results?.iter().filter(|r| r.failed).count() as u64;
            done += batch;
            if failures >= opts.max_failures {
                break;
            }
        }
        let ler = failures as f64 / done as f64;
        let (ci_lo, ci_hi) = wilson_interval(failures, done);
        points.push(LerPoint {
            p,
            trials: done,
            failures,
            ler,
            ci_lo,
            ci_hi,
        });
    }
    Ok(points)
}

/// SHA-256 over the code's parity checks and qubit split, for run manifests.
pub fn code_fingerprint(code: &CssCode) -> String {
    let mut hasher = Sha256::new();
    for m in [code.h_x(), code.h_z()] {
        hasher.update((m.rows() as u64).to_le_bytes());
        hasher.update((m.cols() as u64).to_le_bytes());
        for r in 0..m.rows() {
            for c in m.row_ones(r) {
                hasher.update((c as u64).to_le_bytes());
            }
            hasher.update(u64::MAX.to_le_bytes());
        }
    }
    hasher.update((code.n_vv() as u64).to_le_bytes());
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}
