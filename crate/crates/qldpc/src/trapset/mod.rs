//! Stabilizer-induced subgraph extraction and oracle-based trapping-set
//! classification.
//!
//! A trapping set is operationalized by bounded-horizon simulation: a
//! repeated decoder state proves non-convergence, a flip-free pass with
//! residual mismatch is a stall, and a horizon hit without a repeat is
//! reported as inconclusive rather than asserted either way.

mod replicas;

pub use replicas::{
    build_bias_transfer, classical_ts_replicas, induced_degree_profile, lp_ts_copies, Factor,
};

use crate::code::{CssCode, Provenance};
use crate::decoder::{decode, DecoderConfig};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::tanner::{validate_four_cycle_free_factors, TannerGraph};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Default cap on exhaustive pattern enumeration (2^20 patterns).
pub const DEFAULT_BUDGET_LOG2: u32 = 20;

/// The subgraph of the Z Tanner graph induced by a set of X-stabilizer
/// generators, with per-generator exclusive node sets.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    generators: Vec<usize>,
    vv_members: Vec<usize>,
    cc_members: Vec<usize>,
    internal_checks: Vec<usize>,
    /// External variables adjacent to internal checks, with those checks.
    boundary: BTreeMap<usize, Vec<usize>>,
    /// Per generator: VV members in no other generator's subgraph.
    exclusive_vv: Vec<Vec<usize>>,
    /// Per generator: CC members in no other generator's subgraph.
    exclusive_cc: Vec<Vec<usize>>,
}

impl InducedSubgraph {
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn vv_members(&self) -> &[usize] {
        &self.vv_members
    }

    pub fn cc_members(&self) -> &[usize] {
        &self.cc_members
    }

    pub fn qubits(&self) -> Vec<usize> {
        let mut q = self.vv_members.clone();
        q.extend(&self.cc_members);
        q.sort_unstable();
        q
    }

    pub fn internal_checks(&self) -> &[usize] {
        &self.internal_checks
    }

    pub fn boundary(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.boundary
    }

    pub fn exclusive_vv(&self) -> &[Vec<usize>] {
        &self.exclusive_vv
    }

    pub fn exclusive_cc(&self) -> &[Vec<usize>] {
        &self.exclusive_cc
    }
}

/// Builds the subgraph induced by the union of the supports of the listed
/// X-check rows. Factor graphs must be four-cycle-free; the structural
/// guarantees the analysis relies on assume it.
pub fn induced_subgraph(code: &CssCode, generators: &[usize]) -> Result<InducedSubgraph> {
    validate_four_cycle_free_factors(code)?;
    induced_subgraph_unchecked(code, generators)
}

/// Subgraph construction without the four-cycle validation, for copy
/// counting on codes whose factors are allowed short cycles.
pub(crate) fn induced_subgraph_unchecked(
    code: &CssCode,
    generators: &[usize],
) -> Result<InducedSubgraph> {
    if generators.is_empty() {
        return Err(Error::EmptyGeneratorSet);
    }
    for &g in generators {
        if g >= code.h_x().rows() {
            return Err(Error::IndexOutOfRange {
                index: g,
                dim: code.h_x().rows(),
            });
        }
    }

    let per_generator: Vec<BTreeSet<usize>> = generators
        .iter()
        .map(|&g| code.h_x().row_ones(g).collect())
        .collect();
    let mut qubits: BTreeSet<usize> = BTreeSet::new();
    for support in &per_generator {
        qubits.extend(support);
    }
    let (vv_members, cc_members): (Vec<usize>, Vec<usize>) =
        qubits.iter().partition(|&&q| q < code.n_vv());

    let mut internal_checks = Vec::new();
    let mut boundary: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in 0..code.h_z().rows() {
        let touches: Vec<usize> = code.h_z().row_ones(r).collect();
        if touches.iter().any(|q| qubits.contains(q)) {
            internal_checks.push(r);
            for q in touches {
                if !qubits.contains(&q) {
                    boundary.entry(q).or_default().push(r);
                }
            }
        }
    }

    let exclusive = |pick: &dyn Fn(usize) -> bool| -> Vec<Vec<usize>> {
        per_generator
            .iter()
            .enumerate()
            .map(|(gi, support)| {
                support
                    .iter()
                    .copied()
                    .filter(|&q| {
                        pick(q)
                            && per_generator
                                .iter()
                                .enumerate()
                                .all(|(gj, other)| gi == gj || !other.contains(&q))
                    })
                    .collect()
            })
            .collect()
    };
    let n_vv = code.n_vv();
    let exclusive_vv = exclusive(&|q| q < n_vv);
    let exclusive_cc = exclusive(&|q| q >= n_vv);

    Ok(InducedSubgraph {
        generators: generators.to_vec(),
        vv_members,
        cc_members,
        internal_checks,
        boundary,
        exclusive_vv,
        exclusive_cc,
    })
}

/// A structural violation found by `validate_generator_structure`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    CcCountMismatch { expected: usize, got: usize },
    VvCountMismatch { expected: usize, got: usize },
    CheckDegreeNotTwo { check: usize, degree: usize },
    CheckTypeImbalance { check: usize },
    SharedCheckWithinType { check: usize },
    BoundaryVariableTouchesTwice { variable: usize },
}

/// Verifies the structure of a single-generator induced subgraph: the CC
/// count equals the VV degree and vice versa, all internal checks have
/// degree two with one neighbor of each type, no two same-type members
/// share a check, and no external variable touches two internal checks.
pub fn validate_generator_structure(
    code: &CssCode,
    sub: &InducedSubgraph,
) -> std::result::Result<(), StructureViolation> {
    let graph = TannerGraph::z_graph(code);
    let vv_degree = sub
        .vv_members
        .first()
        .map_or(0, |&v| graph.var_degree(v));
    let cc_degree = sub
        .cc_members
        .first()
        .map_or(0, |&c| graph.var_degree(c));
    if sub.cc_members.len() != vv_degree {
        return Err(StructureViolation::CcCountMismatch {
            expected: vv_degree,
            got: sub.cc_members.len(),
        });
    }
    if sub.vv_members.len() != cc_degree {
        return Err(StructureViolation::VvCountMismatch {
            expected: cc_degree,
            got: sub.vv_members.len(),
        });
    }
    let members: BTreeSet<usize> = sub.qubits().into_iter().collect();
    let mut seen_pairs: HashSet<(usize, usize)> = HashSet::new();
    for &check in &sub.internal_checks {
        let inside: Vec<usize> = code
            .h_z()
            .row_ones(check)
            .filter(|q| members.contains(q))
            .collect();
        if inside.len() != 2 {
            return Err(StructureViolation::CheckDegreeNotTwo {
                check,
                degree: inside.len(),
            });
        }
        let vv_inside = inside.iter().filter(|&&q| q < code.n_vv()).count();
        if vv_inside != 1 {
            return Err(StructureViolation::CheckTypeImbalance { check });
        }
        // One VV and one CC: a repeated pair would mean two same-type
        // members share a second check elsewhere, caught via pair dedup.
        let pair = (inside[0], inside[1]);
        if !seen_pairs.insert(pair) {
            return Err(StructureViolation::SharedCheckWithinType { check });
        }
    }
    for (&var, checks) in &sub.boundary {
        if checks.len() >= 2 {
            return Err(StructureViolation::BoundaryVariableTouchesTwice { variable: var });
        }
    }
    Ok(())
}

/// Sufficient condition for a multi-generator subgraph to trap the
/// bit-flipping decoder: every member generator keeps enough exclusive
/// CC and VV nodes to push both node types past their flip thresholds.
pub fn sufficient_condition_check(code: &CssCode, sub: &InducedSubgraph) -> bool {
    let graph = TannerGraph::z_graph(code);
    sub.generators.iter().enumerate().all(|(gi, _)| {
        let lambda = &sub.exclusive_vv[gi];
        let gamma = &sub.exclusive_cc[gi];
        if lambda.is_empty() || gamma.is_empty() {
            return false;
        }
        let vv_ok = lambda
            .iter()
            .all(|&v| gamma.len() > graph.var_degree(v) / 2);
        let cc_ok = gamma
            .iter()
            .all(|&c| lambda.len() > graph.var_degree(c) / 2);
        vv_ok && cc_ok
    })
}

/// Decoder dynamics of a trapping-set witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TsDynamics {
    /// The estimate revisits an earlier state, so it cycles forever.
    Oscillates,
    /// A flip-free pass left a residual mismatch.
    Stalls,
    /// Every supported pattern converged.
    ConvergesAll,
    /// The horizon was reached without a repeated state.
    Inconclusive,
}

/// Outcome of probing one induced subgraph against one decoder.
#[derive(Clone, Debug)]
pub struct TsClassification {
    pub is_trapping: bool,
    pub witness: Option<BitVec>,
    pub dynamics: TsDynamics,
    /// Whether every supported pattern was enumerated.
    pub exhaustive: bool,
    pub patterns_tested: usize,
}

/// Decodes one pattern from its true syndrome; `None` means it converged.
fn pattern_dynamics(
    graph: &TannerGraph,
    code: &CssCode,
    sub_checks: &BTreeSet<usize>,
    error: &BitVec,
    cfg: &DecoderConfig,
) -> Result<Option<TsDynamics>> {
    let sigma = code.h_z().mul_vec(error)?;
    let mut traced = cfg.clone();
    traced.record_trace = true;
    let outcome = decode(graph, &sigma, &traced)?;
    if outcome.converged {
        return Ok(None);
    }
    // Mismatch must stay confined to the subgraph for Definition-1 status.
    let mut mismatch = code.h_z().mul_vec(&outcome.estimate)?;
    mismatch.xor_assign(&sigma);
    if mismatch.ones().any(|c| !sub_checks.contains(&c)) {
        return Ok(Some(TsDynamics::Inconclusive));
    }
    let trace = outcome.trace.as_deref().unwrap_or(&[]);
    let mut seen: HashSet<&BitVec> = HashSet::new();
    let zero = BitVec::zeros(graph.var_count());
    seen.insert(&zero);
    let mut repeated = false;
    for state in trace {
        if !seen.insert(state) {
            repeated = true;
            break;
        }
    }
    Ok(Some(if repeated {
        TsDynamics::Oscillates
    } else if outcome.iters_used < cfg.max_iters {
        // The decoder gave up before the horizon: a fixed point.
        TsDynamics::Stalls
    } else {
        TsDynamics::Inconclusive
    }))
}

/// Exhaustively enumerates error patterns supported on the subgraph's
/// qubits and probes the decoder from each pattern's true syndrome. The
/// first definite non-convergence is recorded as the witness.
///
/// When `2^|qubits|` exceeds the budget, the structurally motivated
/// candidate patterns (all-CC, all-VV, the exclusive unions, the full
/// support) are probed instead; a witness among them still proves the set
/// is trapping, but absence of one is reported as a budget error rather
/// than a verdict.
pub fn classify_ts(
    code: &CssCode,
    sub: &InducedSubgraph,
    cfg: &DecoderConfig,
    budget_log2: u32,
) -> Result<TsClassification> {
    let graph = TannerGraph::z_graph(code);
    let qubits = sub.qubits();
    let sub_checks: BTreeSet<usize> = sub.internal_checks.iter().copied().collect();
    let n = code.n();
    let mut tested = 0usize;

    if (qubits.len() as u32) <= budget_log2 {
        let mut inconclusive = false;
        for mask in 1u64..(1u64 << qubits.len()) {
            let support: Vec<usize> = qubits
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &q)| q)
                .collect();
            let error = BitVec::from_support(n, &support);
            tested += 1;
            match pattern_dynamics(&graph, code, &sub_checks, &error, cfg)? {
                None => {}
                Some(TsDynamics::Inconclusive) => inconclusive = true,
                Some(dynamics) => {
                    return Ok(TsClassification {
                        is_trapping: true,
                        witness: Some(error),
                        dynamics,
                        exhaustive: false,
                        patterns_tested: tested,
                    });
                }
            }
        }
        return Ok(TsClassification {
            is_trapping: false,
            witness: None,
            dynamics: if inconclusive {
                TsDynamics::Inconclusive
            } else {
                TsDynamics::ConvergesAll
            },
            exhaustive: true,
            patterns_tested: tested,
        });
    }

    // Over budget: probe the structurally motivated candidates; a definite
    // witness among them still settles the question.
    let mut candidates: Vec<Vec<usize>> = vec![
        sub.cc_members.clone(),
        sub.vv_members.clone(),
        sub.exclusive_cc.iter().flatten().copied().collect(),
        sub.exclusive_vv.iter().flatten().copied().collect(),
        qubits.clone(),
    ];
    candidates.extend(sub.exclusive_cc.iter().cloned());
    candidates.extend(sub.exclusive_vv.iter().cloned());
    for support in candidates {
        if support.is_empty() {
            continue;
        }
        let error = BitVec::from_support(n, &support);
        tested += 1;
        if let Some(dynamics @ (TsDynamics::Oscillates | TsDynamics::Stalls)) =
            pattern_dynamics(&graph, code, &sub_checks, &error, cfg)?
        {
            return Ok(TsClassification {
                is_trapping: true,
                witness: Some(error),
                dynamics,
                exhaustive: false,
                patterns_tested: tested,
            });
        }
    }
    Err(Error::BudgetExceeded {
        qubits: qubits.len(),
        budget_log2,
    })
}

/// JSON-serializable classification record for one generator combination.
#[derive(Serialize)]
pub struct ClassificationReport {
    pub generators: Vec<usize>,
    pub vv_count: usize,
    pub cc_count: usize,
    pub internal_check_count: usize,
    pub is_trapping: bool,
    pub dynamics: TsDynamics,
    pub exhaustive: bool,
    pub patterns_tested: usize,
    pub witness_support: Option<Vec<usize>>,
}

impl ClassificationReport {
    pub fn new(sub: &InducedSubgraph, class: &TsClassification) -> Self {
        Self {
            generators: sub.generators().to_vec(),
            vv_count: sub.vv_members().len(),
            cc_count: sub.cc_members().len(),
            internal_check_count: sub.internal_checks().len(),
            is_trapping: class.is_trapping,
            dynamics: class.dynamics,
            exhaustive: class.exhaustive,
            patterns_tested: class.patterns_tested,
            witness_support: class.witness.as_ref().map(|w| w.ones().collect()),
        }
    }
}

/// Enumerates the X-row index sets of connected generator combinations
/// with at most `max_generators` members, following the product structure:
/// connected check subsets of the first factor crossed with connected
/// variable subsets of the second.
pub fn enumerate_generator_combos(code: &CssCode, max_generators: usize) -> Result<Vec<Vec<usize>>> {
    let Provenance::HypergraphProduct { h1, h2 } = code.provenance() else {
        return Err(Error::WrongProvenance {
            required: "hypergraph product",
            actual: code.provenance().name(),
        });
    };
    let n2 = h2.cols();

    // Check-side adjacency in factor 1: checks sharing a variable.
    let m1 = h1.rows();
    let mut check_adj = vec![BTreeSet::new(); m1];
    for a in 0..m1 {
        let row_a = h1.row_as_bitvec(a);
        for b in (a + 1)..m1 {
            if h1.row_ones(b).any(|c| row_a.get(c)) {
                check_adj[a].insert(b);
                check_adj[b].insert(a);
            }
        }
    }
    // Variable-side adjacency in factor 2: variables sharing a check.
    let mut var_adj = vec![BTreeSet::new(); n2];
    for r in 0..h2.rows() {
        let support: Vec<usize> = h2.row_ones(r).collect();
        for (i, &a) in support.iter().enumerate() {
            for &b in &support[i + 1..] {
                var_adj[a].insert(b);
                var_adj[b].insert(a);
            }
        }
    }

    let check_sets = connected_subsets(&check_adj, max_generators);
    let var_sets = connected_subsets(&var_adj, max_generators);
    let mut combos = Vec::new();
    for cs in &check_sets {
        for vs in &var_sets {
            if cs.len() * vs.len() <= max_generators {
                let mut rows: Vec<usize> = cs
                    .iter()
                    .flat_map(|&a| vs.iter().map(move |&b| a * n2 + b))
                    .collect();
                rows.sort_unstable();
                combos.push(rows);
            }
        }
    }
    combos.sort();
    combos.dedup();
    Ok(combos)
}

/// All connected node subsets of size 1..=k in an adjacency structure.
fn connected_subsets(adj: &[BTreeSet<usize>], k: usize) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<BTreeSet<usize>> = (0..adj.len()).map(|v| BTreeSet::from([v])).collect();
    while let Some(set) = stack.pop() {
        let as_vec: Vec<usize> = set.iter().copied().collect();
        if !out.insert(as_vec) {
            continue;
        }
        if set.len() == k {
            continue;
        }
        let frontier: BTreeSet<usize> = set
            .iter()
            .flat_map(|&v| adj[v].iter().copied())
            .filter(|v| !set.contains(v))
            .collect();
        for v in frontier {
            let mut next = set.clone();
            next.insert(v);
            stack.push(next);
        }
    }
    out.into_iter().collect()
}
