//! Bit-flipping decoders.
//!
//! The plain decoder flips every variable whose count of mismatched
//! neighboring checks exceeds half its degree, with all flips in an
//! iteration applied simultaneously. The trapping-set-aware variant splits
//! each round into a VV phase and a CC phase so the two halves of a
//! stabilizer-induced subgraph are never flipped together. Its random
//! tie-break extension handles even degrees, where a phase can deadlock
//! with every candidate sitting exactly at the flipping threshold.

use super::{check_sigma_len, DecodeOutcome, DecoderConfig};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::tanner::TannerGraph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct BfState<'g> {
    graph: &'g TannerGraph,
    estimate: Vec<bool>,
    /// Per-check flag: current estimate syndrome differs from the target.
    mismatch: Vec<bool>,
    mismatch_count: usize,
}

impl<'g> BfState<'g> {
    fn new(graph: &'g TannerGraph, sigma: &BitVec) -> Self {
        let mismatch: Vec<bool> = (0..graph.check_count()).map(|c| sigma.get(c)).collect();
        let mismatch_count = mismatch.iter().filter(|&&m| m).count();
        Self {
            graph,
            estimate: vec![false; graph.var_count()],
            mismatch,
            mismatch_count,
        }
    }

    fn converged(&self) -> bool {
        self.mismatch_count == 0
    }

    fn unsat_count(&self, var: usize) -> usize {
        self.graph
            .var_edges(var)
            .iter()
            .filter(|&&e| self.mismatch[self.graph.edge(e as usize).1])
            .count()
    }

    fn flip(&mut self, var: usize) {
        self.estimate[var] = !self.estimate[var];
        for &e in self.graph.var_edges(var) {
            let check = self.graph.edge(e as usize).1;
            if self.mismatch[check] {
                self.mismatch_count -= 1;
            } else {
                self.mismatch_count += 1;
            }
            self.mismatch[check] = !self.mismatch[check];
        }
    }

    /// Flips every variable in `vars` with strictly more than deg/2
    /// mismatched checks; returns how many were flipped.
    fn flip_above_threshold(&mut self, vars: std::ops::Range<usize>) -> usize {
        let flips: Vec<usize> = vars
            .filter(|&v| 2 * self.unsat_count(v) > self.graph.var_degree(v))
            .collect();
        for &v in &flips {
            self.flip(v);
        }
        flips.len()
    }

    fn estimate_bits(&self) -> BitVec {
        BitVec::from_bools(&self.estimate)
    }

    fn outcome(&self, iters_used: usize, trace: Option<Vec<BitVec>>) -> DecodeOutcome {
        DecodeOutcome {
            estimate: self.estimate_bits(),
            converged: self.converged(),
            iters_used,
            trace,
        }
    }
}

/// Plain bit-flipping decoding. Stops at convergence, at a fixed point
/// (an iteration that flips nothing), or at the iteration cap.
pub fn bf_decode(graph: &TannerGraph, sigma: &BitVec, cfg: &DecoderConfig) -> Result<DecodeOutcome> {
    check_sigma_len(graph, sigma)?;
    cfg.validate(graph)?;
    let mut state = BfState::new(graph, sigma);
    let mut trace = cfg.record_trace.then(Vec::new);
    let mut iters = 0;
    while !state.converged() && iters < cfg.max_iters {
        let flipped = state.flip_above_threshold(0..graph.var_count());
        iters += 1;
        if let Some(t) = trace.as_mut() {
            t.push(state.estimate_bits());
        }
        if flipped == 0 {
            break;
        }
    }
    Ok(state.outcome(iters, trace))
}

fn tsbf_impl(
    graph: &TannerGraph,
    sigma: &BitVec,
    cfg: &DecoderConfig,
    mut rng: Option<ChaCha8Rng>,
) -> Result<DecodeOutcome> {
    check_sigma_len(graph, sigma)?;
    cfg.validate(graph)?;
    let n_vv = graph.vv_split();
    let n = graph.var_count();
    let mut state = BfState::new(graph, sigma);
    let mut trace = cfg.record_trace.then(Vec::new);
    let mut iters = 0;

    'outer: while !state.converged() && iters < cfg.max_iters {
        let mut flips_this_pass = 0;
        for range in [0..n_vv, n_vv..n] {
            if state.converged() {
                break;
            }
            let mut flipped = state.flip_above_threshold(range.clone());
            if flipped == 0 && !state.converged() {
                if let Some(rng) = rng.as_mut() {
                    flipped = tie_break_flip(&mut state, range, rng);
                }
            }
            flips_this_pass += flipped;
            iters += 1;
            if let Some(t) = trace.as_mut() {
                t.push(state.estimate_bits());
            }
            if iters >= cfg.max_iters {
                break 'outer;
            }
        }
        if flips_this_pass == 0 {
            break; // fixed point with residual mismatch
        }
    }
    Ok(state.outcome(iters, trace))
}

/// One tie-break flip: engaged only when the regular rule flipped nothing,
/// picking uniformly among variables of the active type that sit exactly
/// at floor(deg/2) mismatched checks.
fn tie_break_flip(state: &mut BfState, range: std::ops::Range<usize>, rng: &mut ChaCha8Rng) -> usize {
    let candidates: Vec<usize> = range
        .filter(|&v| {
            let unsat = state.unsat_count(v);
            unsat >= 1 && unsat == state.graph.var_degree(v) / 2
        })
        .collect();
    if candidates.is_empty() {
        return 0;
    }
    let pick = candidates[rng.random_range(0..candidates.len())];
    state.flip(pick);
    1
}

/// Trapping-set-aware bit-flipping: alternates a VV-only and a CC-only
/// flipping phase, revising the check status in between. Each phase counts
/// as one iteration against the cap.
pub fn tsbf_decode(
    graph: &TannerGraph,
    sigma: &BitVec,
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome> {
    tsbf_impl(graph, sigma, cfg, None)
}

/// The tie-break variant for even degrees: when a phase would flip nothing
/// but some active-type variable meets floor(deg/2) mismatched checks
/// exactly, one such variable chosen uniformly at random is flipped.
pub fn tsbf_random_tiebreak_decode(
    graph: &TannerGraph,
    sigma: &BitVec,
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome> {
    let seed = cfg.rng_seed.ok_or(Error::MissingSeed)?;
    tsbf_impl(graph, sigma, cfg, Some(ChaCha8Rng::seed_from_u64(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::hypergraph_product;
    use crate::decoder::DecoderKind;
    use crate::gf2::BinaryMatrix;

    fn five_qubit() -> (crate::code::CssCode, TannerGraph) {
        let h = BinaryMatrix::from_dense(&[vec![1, 1]]);
        let code = hypergraph_product(&h, &h).unwrap();
        let graph = TannerGraph::z_graph(&code);
        (code, graph)
    }

    #[test]
    fn zero_syndrome_means_zero_estimate_and_no_iterations() {
        let (_, graph) = five_qubit();
        let sigma = BitVec::zeros(graph.check_count());
        for kind in [DecoderKind::Bf, DecoderKind::Tsbf] {
            let cfg = DecoderConfig::new(kind, 5);
            let out = super::super::decode(&graph, &sigma, &cfg).unwrap();
            assert!(out.converged);
            assert!(out.estimate.is_zero());
            assert_eq!(out.iters_used, 0);
        }
        let cfg = DecoderConfig::new(DecoderKind::TsbfRandomTiebreak, 5).with_seed(1);
        let out = tsbf_random_tiebreak_decode(&graph, &sigma, &cfg).unwrap();
        assert!(out.converged && out.estimate.is_zero());
    }

    #[test]
    fn tiebreak_without_seed_is_rejected() {
        let (_, graph) = five_qubit();
        let sigma = BitVec::zeros(graph.check_count());
        let cfg = DecoderConfig::new(DecoderKind::TsbfRandomTiebreak, 5);
        assert!(matches!(
            tsbf_random_tiebreak_decode(&graph, &sigma, &cfg),
            Err(Error::MissingSeed)
        ));
    }

    #[test]
    fn sigma_length_mismatch_is_rejected() {
        let (_, graph) = five_qubit();
        let cfg = DecoderConfig::new(DecoderKind::Bf, 5);
        assert!(bf_decode(&graph, &BitVec::zeros(7), &cfg).is_err());
    }

    #[test]
    fn weight_two_qubit_error_decodes_up_to_stabilizer() {
        // Exhausting the five weight-1 errors: only the error on the
        // degree-2 qubit converges. The four degree-1 qubits come in
        // symmetric pairs that any symmetric update rule flips together,
        // which oscillates.
        let (code, graph) = five_qubit();
        let row_space = code.h_x().row_space();
        let cfg = DecoderConfig::new(DecoderKind::Bf, 20);
        let e = BitVec::from_support(code.n(), &[4]);
        let sigma = code.h_z().mul_vec(&e).unwrap();
        let out = bf_decode(&graph, &sigma, &cfg).unwrap();
        assert!(out.converged);
        let mut residual = out.estimate.clone();
        residual.xor_assign(&e);
        assert!(row_space.contains(&residual).unwrap());
        for q in 0..4 {
            let e = BitVec::from_support(code.n(), &[q]);
            let sigma = code.h_z().mul_vec(&e).unwrap();
            assert!(!bf_decode(&graph, &sigma, &cfg).unwrap().converged);
        }
    }

    #[test]
    fn two_cc_errors_on_a_generator_converge_to_that_generator() {
        // Two erroneous CC-type members of a stabilizer-generator subgraph:
        // the type-aware decoder flips all VV members, then the remaining
        // clean CC member, landing exactly on the generator row.
        use crate::classical::array_qc;
        use crate::trapset::induced_subgraph;
        let h = array_qc(3, 4, 5).lift();
        let code = hypergraph_product(&h, &h).unwrap();
        let graph = TannerGraph::z_graph(&code);
        let cfg = DecoderConfig::new(DecoderKind::Tsbf, 100);
        for g in (0..code.h_x().rows()).step_by(23) {
            let sub = induced_subgraph(&code, &[g]).unwrap();
            let error = BitVec::from_support(code.n(), &sub.cc_members()[..2]);
            let sigma = code.h_z().mul_vec(&error).unwrap();
            let out = tsbf_decode(&graph, &sigma, &cfg).unwrap();
            assert!(out.converged && out.iters_used <= 3, "generator {g}");
            let mut residual = out.estimate.clone();
            residual.xor_assign(&error);
            assert_eq!(residual, code.h_x().row_as_bitvec(g), "generator {g}");
        }
    }

    #[test]
    fn exclusive_cc_error_on_four_combined_generators_converges_degenerately() {
        // Errors spread across a four-generator union: the decoder exploits
        // degeneracy and settles on a stabilizer within a few phases.
        use crate::classical::array_qc;
        use crate::trapset::{enumerate_generator_combos, induced_subgraph};
        let h = array_qc(3, 4, 5).lift();
        let code = hypergraph_product(&h, &h).unwrap();
        let graph = TannerGraph::z_graph(&code);
        let row_space = code.h_x().row_space();
        let combos = enumerate_generator_combos(&code, 4).unwrap();
        let four = combos
            .iter()
            .find(|rows| rows.len() == 4)
            .expect("a four-generator union");
        let sub = induced_subgraph(&code, four).unwrap();
        let gamma: Vec<usize> = sub.exclusive_cc().iter().flatten().copied().collect();
        assert!(!gamma.is_empty());
        let error = BitVec::from_support(code.n(), &gamma);
        let sigma = code.h_z().mul_vec(&error).unwrap();
        let cfg = DecoderConfig::new(DecoderKind::Tsbf, 100);
        let out = tsbf_decode(&graph, &sigma, &cfg).unwrap();
        assert!(out.converged, "stalled after {} phases", out.iters_used);
        assert!(out.iters_used <= 6);
        let mut residual = out.estimate.clone();
        residual.xor_assign(&error);
        assert!(row_space.contains(&residual).unwrap());
    }

    #[test]
    fn determinism_of_tiebreak_with_fixed_seed() {
        let (code, graph) = five_qubit();
        let e = BitVec::from_support(code.n(), &[2]);
        let sigma = code.h_z().mul_vec(&e).unwrap();
        let cfg = DecoderConfig::new(DecoderKind::TsbfRandomTiebreak, 30).with_seed(99);
        let a = tsbf_random_tiebreak_decode(&graph, &sigma, &cfg).unwrap();
        let b = tsbf_random_tiebreak_decode(&graph, &sigma, &cfg).unwrap();
        assert_eq!(a.estimate, b.estimate);
        assert_eq!(a.iters_used, b.iters_used);
    }
}
