//! Bipartite graph view of a parity-check matrix.
//!
//! Edge indices are assigned in row-major bit order and are the canonical
//! identity for per-edge decoder biases, so they must be stable across runs.

use crate::code::{CssCode, Provenance};
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use std::io::Write;

/// Node classification in a product code graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Vv,
    Cc,
    XCheck,
    ZCheck,
}

/// A node's kind plus its product coordinates: the pair of factor-graph
/// indices the node arose from, present when the code is a product. For
/// lifted products the first coordinate indexes the base graph of factor 1
/// and the second the lifted graph of factor 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeLabel {
    pub kind: NodeKind,
    pub coords: Option<(usize, usize)>,
}

fn product_widths(code: &CssCode) -> Option<(usize, usize, usize)> {
    // (variable width, X-check width, Z-check width) of the factor-2 part.
    match code.provenance() {
        Provenance::HypergraphProduct { h2, .. } => Some((h2.cols(), h2.cols(), h2.rows())),
        Provenance::LiftedProduct { w1, w2 } => {
            let g = w1.gamma();
            Some((w2.cols() * g, w2.cols() * g, w2.rows() * g))
        }
        Provenance::Explicit => None,
    }
}

/// Label of qubit `q`: VV or CC, with factor coordinates for products.
pub fn qubit_label(code: &CssCode, q: usize) -> Result<NodeLabel> {
    if q >= code.n() {
        return Err(Error::IndexOutOfRange { index: q, dim: code.n() });
    }
    let widths = product_widths(code);
    if q < code.n_vv() {
        Ok(NodeLabel {
            kind: NodeKind::Vv,
            coords: widths.map(|(vw, _, _)| (q / vw, q % vw)),
        })
    } else {
        let q = q - code.n_vv();
        Ok(NodeLabel {
            kind: NodeKind::Cc,
            coords: widths.map(|(_, _, zw)| (q / zw, q % zw)),
        })
    }
}

/// Label of X-check row `r`: a (factor-1 check, factor-2 variable) pair.
pub fn x_check_label(code: &CssCode, r: usize) -> Result<NodeLabel> {
    if r >= code.h_x().rows() {
        return Err(Error::IndexOutOfRange { index: r, dim: code.h_x().rows() });
    }
    Ok(NodeLabel {
        kind: NodeKind::XCheck,
        coords: product_widths(code).map(|(_, xw, _)| (r / xw, r % xw)),
    })
}

/// Label of Z-check row `r`: a (factor-1 variable, factor-2 check) pair.
pub fn z_check_label(code: &CssCode, r: usize) -> Result<NodeLabel> {
    if r >= code.h_z().rows() {
        return Err(Error::IndexOutOfRange { index: r, dim: code.h_z().rows() });
    }
    Ok(NodeLabel {
        kind: NodeKind::ZCheck,
        coords: product_widths(code).map(|(_, _, zw)| (r / zw, r % zw)),
    })
}

/// A Tanner graph with stable edge indices and the VV/CC variable split.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    var_count: usize,
    check_count: usize,
    vv_split: usize,
    /// `(variable, check)` per edge, in row-major bit order of the matrix.
    edges: Vec<(u32, u32)>,
    var_edges: Vec<Vec<u32>>,
    check_edges: Vec<Vec<u32>>,
}

impl TannerGraph {
    /// Builds the graph of `h`, one edge per set bit. Variables below
    /// `vv_split` are VV-type, the rest CC-type.
    pub fn from_matrix(h: &BinaryMatrix, vv_split: usize) -> Self {
        assert!(vv_split <= h.cols(), "vv_split exceeds column count");
        let mut edges = Vec::new();
        let mut var_edges = vec![Vec::new(); h.cols()];
        let mut check_edges = vec![Vec::new(); h.rows()];
        for (check, adjacent) in check_edges.iter_mut().enumerate() {
            for var in h.row_ones(check) {
                let id = edges.len() as u32;
                edges.push((var as u32, check as u32));
                var_edges[var].push(id);
                adjacent.push(id);
            }
        }
        Self {
            var_count: h.cols(),
            check_count: h.rows(),
            vv_split,
            edges,
            var_edges,
            check_edges,
        }
    }

    /// Decoding graph of `H_Z` with the code's VV/CC split.
    pub fn z_graph(code: &CssCode) -> Self {
        Self::from_matrix(code.h_z(), code.n_vv())
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn check_count(&self) -> usize {
        self.check_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vv_split(&self) -> usize {
        self.vv_split
    }

    pub fn is_vv(&self, var: usize) -> bool {
        var < self.vv_split
    }

    #[inline]
    pub fn edge(&self, id: usize) -> (usize, usize) {
        let (v, c) = self.edges[id];
        (v as usize, c as usize)
    }

    #[inline]
    pub fn var_edges(&self, var: usize) -> &[u32] {
        &self.var_edges[var]
    }

    #[inline]
    pub fn check_edges(&self, check: usize) -> &[u32] {
        &self.check_edges[check]
    }

    pub fn var_degree(&self, var: usize) -> usize {
        self.var_edges[var].len()
    }

    pub fn check_degree(&self, check: usize) -> usize {
        self.check_edges[check].len()
    }

    /// DOT rendering of the graph (or a subgraph restricted to the given
    /// nodes) with node-kind styling.
    pub fn to_dot(&self, vars: Option<&[usize]>, checks: Option<&[usize]>) -> String {
        let var_set: Option<std::collections::BTreeSet<usize>> =
            vars.map(|v| v.iter().copied().collect());
        let check_set: Option<std::collections::BTreeSet<usize>> =
            checks.map(|c| c.iter().copied().collect());
        let keep_var = |v: usize| var_set.as_ref().is_none_or(|s| s.contains(&v));
        let keep_check = |c: usize| check_set.as_ref().is_none_or(|s| s.contains(&c));

        let mut out = Vec::new();
        writeln!(out, "graph tanner {{").unwrap();
        for v in 0..self.var_count {
            if !keep_var(v) {
                continue;
            }
            let (shape, label) = if self.is_vv(v) {
                ("circle", format!("vv{v}"))
            } else {
                ("doublecircle", format!("cc{v}"))
            };
            writeln!(out, "  v{v} [shape={shape}, label=\"{label}\"];").unwrap();
        }
        for c in 0..self.check_count {
            if !keep_check(c) {
                continue;
            }
            writeln!(out, "  c{c} [shape=box, label=\"z{c}\"];").unwrap();
        }
        for &(v, c) in &self.edges {
            let (v, c) = (v as usize, c as usize);
            if keep_var(v) && keep_check(c) {
                writeln!(out, "  v{v} -- c{c};").unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        String::from_utf8(out).unwrap()
    }
}

/// Support of X-check row `x_check`, split into its VV and CC members.
pub fn x_check_neighborhood(code: &CssCode, x_check: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if x_check >= code.h_x().rows() {
        return Err(Error::IndexOutOfRange {
            index: x_check,
            dim: code.h_x().rows(),
        });
    }
    let mut vv = Vec::new();
    let mut cc = Vec::new();
    for q in code.h_x().row_ones(x_check) {
        if q < code.n_vv() {
            vv.push(q);
        } else {
            cc.push(q);
        }
    }
    Ok((vv, cc))
}

/// True iff two rows of `h` share two or more columns.
pub fn has_four_cycle(h: &BinaryMatrix) -> bool {
    for a in 0..h.rows() {
        let row_a = h.row_as_bitvec(a);
        for b in (a + 1)..h.rows() {
            let mut common = 0usize;
            for c in h.row_ones(b) {
                if row_a.get(c) {
                    common += 1;
                    if common >= 2 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Validates that both factor graphs of a product code are four-cycle-free,
/// the regime in which generator subgraphs have their clean pairwise
/// structure.
pub fn validate_four_cycle_free_factors(code: &CssCode) -> Result<()> {
    match code.provenance() {
        Provenance::HypergraphProduct { h1, h2 } => {
            if has_four_cycle(h1) || has_four_cycle(h2) {
                return Err(Error::FourCycle);
            }
            Ok(())
        }
        Provenance::LiftedProduct { w1, w2 } => {
            if has_four_cycle(&w1.lift()) || has_four_cycle(&w2.lift()) {
                return Err(Error::FourCycle);
            }
            Ok(())
        }
        Provenance::Explicit => Err(Error::WrongProvenance {
            required: "product",
            actual: "explicit",
        }),
    }
}
