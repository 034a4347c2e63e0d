//! Normalized min-sum decoding with per-edge biases.
//!
//! Check update: `m_cv(e) = (-1)^{sigma_c} * prod_{e'} sign(m_vc(e')) *
//! min_{e'} |m_vc(e')|` over the other edges of the check. Variable update:
//! `m_vc(e) = b(e) + w * sum_{e'} m_cv(e')` over the other edges of the
//! variable. The hard decision takes the sign of the per-variable bias plus
//! all incoming check messages, with the variable bias taken as the mean of
//! its edge biases. Messages are clipped to +-64.
//!
//! The scheduled variant withholds variable-to-check updates from CC-type
//! variables on odd iterations and from VV-type variables on even ones, so
//! the two sides of a stabilizer-induced subgraph never move in lockstep.

use super::{check_sigma_len, DecodeOutcome, DecoderConfig};
use crate::error::Result;
use crate::gf2::BitVec;
use crate::tanner::TannerGraph;

const CLIP: f64 = 64.0;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Schedule {
    Flooding,
    VvCcAlternating,
}

#[inline]
fn clip(x: f64) -> f64 {
    x.clamp(-CLIP, CLIP)
}

#[inline]
fn sign_of(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

fn minsum_impl(
    graph: &TannerGraph,
    sigma: &BitVec,
    cfg: &DecoderConfig,
    schedule: Schedule,
) -> Result<DecodeOutcome> {
    check_sigma_len(graph, sigma)?;
    cfg.validate(graph)?;
    let edge_count = graph.edge_count();
    let bias = |e: usize| -> f64 {
        cfg.edge_bias
            .as_ref()
            .map_or(cfg.default_bias, |biases| biases[e])
    };
    // Per-variable bias for the hard decision: mean of its edge biases.
    let var_bias: Vec<f64> = (0..graph.var_count())
        .map(|v| {
            let edges = graph.var_edges(v);
            if edges.is_empty() {
                cfg.default_bias
            } else {
                edges.iter().map(|&e| bias(e as usize)).sum::<f64>() / edges.len() as f64
            }
        })
        .collect();

    let mut m_vc: Vec<f64> = (0..edge_count).map(bias).collect();
    let mut m_cv = vec![0.0f64; edge_count];
    let mut estimate = vec![false; graph.var_count()];
    let mut trace = cfg.record_trace.then(Vec::new);

    let syndrome_matches = |estimate: &[bool]| -> bool {
        (0..graph.check_count()).all(|c| {
            let parity = graph
                .check_edges(c)
                .iter()
                .filter(|&&e| estimate[graph.edge(e as usize).0])
                .count()
                & 1
                == 1;
            parity == sigma.get(c)
        })
    };

    if syndrome_matches(&estimate) {
        return Ok(DecodeOutcome {
            estimate: BitVec::from_bools(&estimate),
            converged: true,
            iters_used: 0,
            trace,
        });
    }

    let mut converged = false;
    let mut iters = 0;
    for t in 1..=cfg.max_iters {
        // Check-to-variable pass with the two-minimum trick.
        for c in 0..graph.check_count() {
            let edges = graph.check_edges(c);
            let mut sign_product = if sigma.get(c) { -1.0 } else { 1.0 };
            let mut min1 = f64::INFINITY;
            let mut min2 = f64::INFINITY;
            let mut min1_edge = usize::MAX;
            for &e in edges {
                let m = m_vc[e as usize];
                sign_product *= sign_of(m);
                let mag = m.abs();
                if mag < min1 {
                    min2 = min1;
                    min1 = mag;
                    min1_edge = e as usize;
                } else if mag < min2 {
                    min2 = mag;
                }
            }
            for &e in edges {
                let e = e as usize;
                let other_min = if e == min1_edge { min2 } else { min1 };
                let other_min = if other_min.is_finite() { other_min } else { CLIP };
                m_cv[e] = sign_product * sign_of(m_vc[e]) * other_min;
            }
        }

        // Variable-to-check pass, hard decision, and stopping test.
        let active = |v: usize| match schedule {
            Schedule::Flooding => true,
            Schedule::VvCcAlternating => graph.is_vv(v) == (t % 2 == 1),
        };
        for v in 0..graph.var_count() {
            let total: f64 = graph
                .var_edges(v)
                .iter()
                .map(|&e| m_cv[e as usize])
                .sum();
            if active(v) {
                for &e in graph.var_edges(v) {
                    let e = e as usize;
                    m_vc[e] = clip(bias(e) + cfg.w * (total - m_cv[e]));
                }
            }
            estimate[v] = var_bias[v] + total < 0.0;
        }
        iters = t;
        if let Some(tr) = trace.as_mut() {
            tr.push(BitVec::from_bools(&estimate));
        }
        if syndrome_matches(&estimate) {
            converged = true;
            break;
        }
    }

    Ok(DecodeOutcome {
        estimate: BitVec::from_bools(&estimate),
        converged,
        iters_used: iters,
        trace,
    })
}

/// Per-edge-biased normalized min-sum with a flooding schedule.
pub fn minsum_decode(
    graph: &TannerGraph,
    sigma: &BitVec,
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome> {
    minsum_impl(graph, sigma, cfg, Schedule::Flooding)
}

/// Min-sum with variable updates alternating between VV-type variables
/// (odd iterations) and CC-type variables (even iterations).
pub fn minsum_scheduled_decode(
    graph: &TannerGraph,
    sigma: &BitVec,
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome> {
    minsum_impl(graph, sigma, cfg, Schedule::VvCcAlternating)
}
