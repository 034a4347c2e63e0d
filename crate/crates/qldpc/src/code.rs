//! CSS code construction from classical parity-check matrices.
//!
//! Both product constructions fix the column ordering as the VV block
//! followed by the CC block; the type-aware decoders and the trapping-set
//! analysis rely on that split.

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::qc::QcMatrix;

/// How a code was built; product analysis needs the factors back.
#[derive(Clone, Debug)]
pub enum Provenance {
    /// Matrices supplied directly.
    Explicit,
    /// Hypergraph product of two binary matrices.
    HypergraphProduct { h1: BinaryMatrix, h2: BinaryMatrix },
    /// Lifted product of two weight matrices over the circulant ring.
    LiftedProduct { w1: QcMatrix, w2: QcMatrix },
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Explicit => "explicit",
            Provenance::HypergraphProduct { .. } => "hypergraph product",
            Provenance::LiftedProduct { .. } => "lifted product",
        }
    }
}

/// A CSS code: paired X/Z parity checks with the VV/CC qubit partition.
#[derive(Clone, Debug)]
pub struct CssCode {
    h_x: BinaryMatrix,
    h_z: BinaryMatrix,
    n_vv: usize,
    n_cc: usize,
    k: usize,
    provenance: Provenance,
}

impl CssCode {
    /// Validates the CSS condition and computes the logical count.
    pub fn new(
        h_x: BinaryMatrix,
        h_z: BinaryMatrix,
        n_vv: usize,
        provenance: Provenance,
    ) -> Result<Self> {
        if h_x.cols() != h_z.cols() {
            return Err(Error::DimensionMismatch {
                expected: h_x.cols(),
                got: h_z.cols(),
            });
        }
        if n_vv > h_x.cols() {
            return Err(Error::IndexOutOfRange {
                index: n_vv,
                dim: h_x.cols(),
            });
        }
        if !h_x.orthogonal_rows(&h_z) {
            return Err(Error::CssViolation);
        }
        let n = h_x.cols();
        let k = n - h_x.rank() - h_z.rank();
        Ok(Self {
            h_x,
            h_z,
            n_vv,
            n_cc: n - n_vv,
            k,
            provenance,
        })
    }

    pub fn h_x(&self) -> &BinaryMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BinaryMatrix {
        &self.h_z
    }

    /// Physical qubit count.
    pub fn n(&self) -> usize {
        self.h_x.cols()
    }

    /// Logical qubit count, `n - rank(H_X) - rank(H_Z)`.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_vv(&self) -> usize {
        self.n_vv
    }

    pub fn n_cc(&self) -> usize {
        self.n_cc
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `(n, k)` as reported by construction tools.
    pub fn parameters(&self) -> (usize, usize) {
        (self.n(), self.k)
    }

    /// Swaps the X and Z matrix roles, turning Z-error correction into the
    /// default X-side simulation path. Product provenance does not survive
    /// the swap, so the result carries none.
    pub fn role_swapped(&self) -> CssCode {
        CssCode {
            h_x: self.h_z.clone(),
            h_z: self.h_x.clone(),
            n_vv: self.n_vv,
            n_cc: self.n_cc,
            k: self.k,
            provenance: Provenance::Explicit,
        }
    }
}

/// Hypergraph product of two classical parity-check matrices:
/// `H_X = [h1 x I_n2 | I_m1 x h2^T]`, `H_Z = [I_n1 x h2 | h1^T x I_m2]`.
///
/// X-check `a*n2 + b` pairs check `a` of the first factor with variable `b`
/// of the second; VV qubit `(i, j)` sits at column `i*n2 + j` and CC qubit
/// `(a, l)` at column `n1*n2 + a*m2 + l`.
pub fn hypergraph_product(h1: &BinaryMatrix, h2: &BinaryMatrix) -> Result<CssCode> {
    let (m1, n1) = (h1.rows(), h1.cols());
    let (m2, n2) = (h2.rows(), h2.cols());
    let h_x = h1
        .kron(&BinaryMatrix::identity(n2))
        .hconcat(&BinaryMatrix::identity(m1).kron(&h2.transposed()));
    let h_z = BinaryMatrix::identity(n1)
        .kron(h2)
        .hconcat(&h1.transposed().kron(&BinaryMatrix::identity(m2)));
    CssCode::new(
        h_x,
        h_z,
        n1 * n2,
        Provenance::HypergraphProduct {
            h1: h1.clone(),
            h2: h2.clone(),
        },
    )
}

/// Weight matrices of the lifted product:
/// `W_X = [w1 x I | I x w2*]`, `W_Z = [I x w2 | w1* x I]`,
/// where `*` is transpose with entrywise circulant conjugation.
pub fn lifted_product_weights(w1: &QcMatrix, w2: &QcMatrix) -> Result<(QcMatrix, QcMatrix)> {
    if w1.gamma() != w2.gamma() {
        return Err(Error::GammaMismatch(w1.gamma(), w2.gamma()));
    }
    if !w1.is_monomial() || !w2.is_monomial() {
        return Err(Error::NonMonomial);
    }
    let gamma = w1.gamma();
    let w_x = w1
        .kron(&QcMatrix::identity(w2.cols(), gamma))?
        .hconcat(&QcMatrix::identity(w1.rows(), gamma).kron(&w2.star_transpose()?)?)?;
    let w_z = QcMatrix::identity(w1.cols(), gamma)
        .kron(w2)?
        .hconcat(&w1.star_transpose()?.kron(&QcMatrix::identity(w2.rows(), gamma))?)?;
    Ok((w_x, w_z))
}

/// Lifted product of two weight matrices: lifts the product weight matrices
/// and validates the CSS condition on the result.
pub fn lifted_product(w1: &QcMatrix, w2: &QcMatrix) -> Result<CssCode> {
    let (w_x, w_z) = lifted_product_weights(w1, w2)?;
    let n_vv = w1.gamma() * w1.cols() * w2.cols();
    CssCode::new(
        w_x.lift(),
        w_z.lift(),
        n_vv,
        Provenance::LiftedProduct {
            w1: w1.clone(),
            w2: w2.clone(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qc::QcPolynomial;

    pub(crate) fn five_qubit_hp() -> CssCode {
        let h = BinaryMatrix::from_dense(&[vec![1, 1]]);
        hypergraph_product(&h, &h).unwrap()
    }

    #[test]
    fn smallest_hp_instance() {
        let h = BinaryMatrix::from_dense(&[vec![1]]);
        let code = hypergraph_product(&h, &h).unwrap();
        assert_eq!(code.h_x(), &BinaryMatrix::from_dense(&[vec![1, 1]]));
        assert_eq!(code.h_z(), &BinaryMatrix::from_dense(&[vec![1, 1]]));
        assert_eq!(code.parameters(), (2, 0));
    }

    #[test]
    fn five_qubit_hp_matrices_and_parameters() {
        let code = five_qubit_hp();
        let h_x = BinaryMatrix::from_dense(&[vec![1, 0, 1, 0, 1], vec![0, 1, 0, 1, 1]]);
        let h_z = BinaryMatrix::from_dense(&[vec![1, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]]);
        assert_eq!(code.h_x(), &h_x);
        assert_eq!(code.h_z(), &h_z);
        assert_eq!(code.h_x().rank(), 2);
        assert_eq!(code.parameters(), (5, 1));
        assert_eq!((code.n_vv(), code.n_cc()), (4, 1));
    }

    #[test]
    fn hp_dimension_arithmetic() {
        let h1 = BinaryMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let h2 = BinaryMatrix::from_dense(&[vec![1, 0, 1], vec![1, 1, 0]]);
        let code = hypergraph_product(&h1, &h2).unwrap();
        assert_eq!(code.h_x().rows(), 6);
        assert_eq!(code.h_x().cols(), 13);
        assert_eq!(code.h_z().rows(), 6);
        assert_eq!((code.n_vv(), code.n_cc()), (9, 4));
    }

    #[test]
    fn example_lift_reproduces_quoted_matrix() {
        let w = QcMatrix::from_entries(
            2,
            &[
                vec![Some(vec![0]), Some(vec![1]), Some(vec![0])],
                vec![Some(vec![1]), Some(vec![0]), Some(vec![1])],
            ],
        );
        let expected = BinaryMatrix::from_dense(&[
            vec![1, 0, 0, 1, 1, 0],
            vec![0, 1, 1, 0, 0, 1],
            vec![0, 1, 1, 0, 0, 1],
            vec![1, 0, 0, 1, 1, 0],
        ]);
        assert_eq!(w.lift(), expected);
    }

    #[test]
    fn lp_with_trivial_lift_reduces_to_hp() {
        let grid = vec![
            vec![Some(vec![0]), Some(vec![0]), None],
            vec![None, Some(vec![0]), Some(vec![0])],
        ];
        let w = QcMatrix::from_entries(1, &grid);
        let b = BinaryMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let lp = lifted_product(&w, &w).unwrap();
        let hp = hypergraph_product(&b, &b).unwrap();
        assert_eq!(lp.h_x(), hp.h_x());
        assert_eq!(lp.h_z(), hp.h_z());
        assert_eq!(lp.n_vv(), hp.n_vv());
    }

    #[test]
    fn lp_dimensions_follow_gamma_scaling() {
        let w1 = QcMatrix::from_entries(
            2,
            &[
                vec![Some(vec![1]), Some(vec![0]), None],
                vec![None, Some(vec![0]), Some(vec![1])],
            ],
        );
        let w2 = QcMatrix::from_entries(
            2,
            &[
                vec![Some(vec![0]), Some(vec![1]), Some(vec![0])],
                vec![Some(vec![1]), Some(vec![0]), Some(vec![1])],
            ],
        );
        let code = lifted_product(&w1, &w2).unwrap();
        // n = gamma (n1 n2 + m1 m2), m_X = gamma m1 n2
        assert_eq!(code.n(), 2 * (9 + 4));
        assert_eq!(code.h_x().rows(), 2 * 2 * 3);
        assert_eq!(code.n_vv(), 2 * 9);
    }

    #[test]
    fn role_swap_exchanges_matrices_and_keeps_parameters() {
        let code = five_qubit_hp();
        let swapped = code.role_swapped();
        assert_eq!(swapped.h_x(), code.h_z());
        assert_eq!(swapped.h_z(), code.h_x());
        assert_eq!(swapped.parameters(), code.parameters());
    }

    #[test]
    fn lp_rejects_gamma_mismatch() {
        let w1 = QcMatrix::identity(2, 2);
        let w2 = QcMatrix::identity(2, 3);
        assert!(matches!(
            lifted_product(&w1, &w2),
            Err(Error::GammaMismatch(2, 3))
        ));
    }

    #[test]
    fn lp_rejects_multi_term_weights() {
        let mut w = QcMatrix::identity(2, 4);
        *w.entry_mut(0, 1) = QcPolynomial::from_exponents(&[0, 2], 4);
        assert!(matches!(
            lifted_product(&w, &w),
            Err(Error::NonMonomial)
        ));
    }
}
