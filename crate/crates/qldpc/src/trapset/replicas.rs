//! Isomorphic-copy bookkeeping: lifted copies of base-graph subgraphs,
//! replicas of classical trapping sets inside product codes, and the bias
//! transfer that carries a classical decoder's per-edge biases onto every
//! copy of the factor graph inside the Z Tanner graph.

use super::{induced_subgraph_unchecked, InducedSubgraph};
use crate::code::{CssCode, Provenance};
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::tanner::TannerGraph;

/// Which classical factor a trapping set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    One,
    Two,
}

/// The lifted images of one base-graph X-check: exactly gamma subgraphs of
/// the Z Tanner graph, one per copy of the base generator.
pub fn lp_ts_copies(code: &CssCode, base_generator: usize) -> Result<Vec<InducedSubgraph>> {
    let Provenance::LiftedProduct { w1, w2 } = code.provenance() else {
        return Err(Error::WrongProvenance {
            required: "lifted product",
            actual: code.provenance().name(),
        });
    };
    let gamma = w1.gamma();
    let base_rows = w1.rows() * w2.cols();
    if base_generator >= base_rows {
        return Err(Error::IndexOutOfRange {
            index: base_generator,
            dim: base_rows,
        });
    }
    (0..gamma)
        .map(|t| induced_subgraph_unchecked(code, &[base_generator * gamma + t]))
        .collect()
}

/// Qubit-index images of a classical trapping set inside the product code.
///
/// For a factor-2 set the replicas live in the Z graph (one per factor-1
/// variable, and per cyclic shift for lifted products); factor-1 sets
/// mirror into the X graph. `ts_vars` indexes variables of the factor's
/// Tanner graph (the lifted graph for LP codes).
pub fn classical_ts_replicas(
    code: &CssCode,
    ts_vars: &[usize],
    which: Factor,
) -> Result<Vec<Vec<usize>>> {
    match code.provenance() {
        Provenance::HypergraphProduct { h1, h2 } => {
            let (n1, n2) = (h1.cols(), h2.cols());
            let (bound, replicas) = match which {
                Factor::Two => (n2, n1),
                Factor::One => (n1, n2),
            };
            if let Some(&v) = ts_vars.iter().find(|&&v| v >= bound) {
                return Err(Error::IndexOutOfRange { index: v, dim: bound });
            }
            Ok((0..replicas)
                .map(|copy| {
                    ts_vars
                        .iter()
                        .map(|&v| match which {
                            // VV qubit (i, j) sits at column i*n2 + j.
                            Factor::Two => copy * n2 + v,
                            Factor::One => v * n2 + copy,
                        })
                        .collect()
                })
                .collect())
        }
        Provenance::LiftedProduct { w1, w2 } => {
            let gamma = w1.gamma();
            let (nb1, nb2) = (w1.cols(), w2.cols());
            let bound = match which {
                Factor::Two => nb2 * gamma,
                Factor::One => nb1 * gamma,
            };
            if let Some(&v) = ts_vars.iter().find(|&&v| v >= bound) {
                return Err(Error::IndexOutOfRange { index: v, dim: bound });
            }
            let copies = match which {
                Factor::Two => nb1,
                Factor::One => nb2,
            };
            let mut out = Vec::with_capacity(copies * gamma);
            for copy in 0..copies {
                for shift in 0..gamma {
                    out.push(
                        ts_vars
                            .iter()
                            .map(|&v| {
                                let (block, s) = (v / gamma, v % gamma);
                                let shifted = (s + shift) % gamma;
                                match which {
                                    // VV column ((i*nb2 + j2)*gamma + s)
                                    Factor::Two => (copy * nb2 + block) * gamma + shifted,
                                    Factor::One => (block * nb2 + copy) * gamma + shifted,
                                }
                            })
                            .collect(),
                    );
                }
            }
            Ok(out)
        }
        Provenance::Explicit => Err(Error::WrongProvenance {
            required: "product",
            actual: "explicit",
        }),
    }
}

/// Degree profile of the subgraph induced by a variable set: the sorted
/// full-graph variable degrees and the sorted induced check degrees.
/// Replicas of a trapping set must reproduce the classical profile.
pub fn induced_degree_profile(h: &BinaryMatrix, vars: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let set: std::collections::BTreeSet<usize> = vars.iter().copied().collect();
    let mut var_degrees: Vec<usize> = vars.iter().map(|&v| h.col_weight(v)).collect();
    var_degrees.sort_unstable();
    let mut check_degrees: Vec<usize> = (0..h.rows())
        .filter_map(|r| {
            let inside = h.row_ones(r).filter(|q| set.contains(q)).count();
            (inside > 0).then_some(inside)
        })
        .collect();
    check_degrees.sort_unstable();
    (var_degrees, check_degrees)
}

/// Copies a classical decoder's per-edge biases onto each copy of the
/// factor-2 graph inside the Z Tanner graph; every other edge gets the
/// channel bias `ln((1-p)/p)`.
///
/// `classical_edge_bias` is indexed by the factor graph's stable edge ids
/// (the lifted graph for LP codes). The returned vector is indexed by the
/// Z graph's edge ids.
pub fn build_bias_transfer(
    code: &CssCode,
    classical_edge_bias: &[f64],
    p: f64,
) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let (factor_h, copies) = match code.provenance() {
        Provenance::HypergraphProduct { h1, h2 } => (h2.clone(), h1.cols()),
        Provenance::LiftedProduct { w1, w2 } => (w2.lift(), w1.cols()),
        Provenance::Explicit => {
            return Err(Error::WrongProvenance {
                required: "product",
                actual: "explicit",
            })
        }
    };
    let factor_graph = TannerGraph::from_matrix(&factor_h, factor_h.cols());
    if classical_edge_bias.len() != factor_graph.edge_count() {
        return Err(Error::DimensionMismatch {
            expected: factor_graph.edge_count(),
            got: classical_edge_bias.len(),
        });
    }
    let (n2, m2) = (factor_h.cols(), factor_h.rows());
    let z_graph = TannerGraph::z_graph(code);
    let default = ((1.0 - p) / p).ln();
    let mut biases = vec![default; z_graph.edge_count()];
    for copy in 0..copies {
        for (e, &bias) in classical_edge_bias.iter().enumerate() {
            let (j, l) = factor_graph.edge(e);
            let qubit = copy * n2 + j;
            let check = copy * m2 + l;
            let image = z_graph
                .check_edges(check)
                .iter()
                .find(|&&ze| z_graph.edge(ze as usize).0 == qubit)
                .copied()
                .expect("factor edge image missing from product graph");
            biases[image as usize] = bias;
        }
    }
    Ok(biases)
}
