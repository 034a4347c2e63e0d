//! Constructors for the classical parity-check matrices used as product
//! factors: repetition checks, array-type quasi-cyclic codes, and randomized
//! regular QC codes with four-cycle rejection.

use crate::gf2::BinaryMatrix;
use crate::qc::QcMatrix;
use crate::tanner::has_four_cycle;
use rand::Rng;

/// The (n-1) x n repetition-code parity-check matrix.
pub fn repetition_code(n: usize) -> BinaryMatrix {
    let mut h = BinaryMatrix::zeros(n.saturating_sub(1), n);
    for i in 0..n.saturating_sub(1) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    h
}

/// Array-type QC weight matrix: all-ones base with shift `i*j mod gamma`.
/// For prime `gamma` exceeding the base dimensions the lift is
/// four-cycle-free and (rows, cols)-regular.
pub fn array_qc(block_rows: usize, block_cols: usize, gamma: usize) -> QcMatrix {
    let grid: Vec<Vec<Option<Vec<usize>>>> = (0..block_rows)
        .map(|i| {
            (0..block_cols)
                .map(|j| Some(vec![(i * j) % gamma]))
                .collect()
        })
        .collect();
    QcMatrix::from_entries(gamma, &grid)
}

/// Random all-ones-base QC weight matrix whose lift is four-cycle-free,
/// or `None` when no attempt succeeds. The lift is a
/// (block_rows, block_cols)-regular LDPC code.
pub fn random_regular_qc(
    block_rows: usize,
    block_cols: usize,
    gamma: usize,
    rng: &mut impl Rng,
    attempts: usize,
) -> Option<QcMatrix> {
    for _ in 0..attempts {
        let grid: Vec<Vec<Option<Vec<usize>>>> = (0..block_rows)
            .map(|_| {
                (0..block_cols)
                    .map(|_| Some(vec![rng.random_range(0..gamma)]))
                    .collect()
            })
            .collect();
        let w = QcMatrix::from_entries(gamma, &grid);
        if !has_four_cycle(&w.lift()) {
            return Some(w);
        }
    }
    None
}
