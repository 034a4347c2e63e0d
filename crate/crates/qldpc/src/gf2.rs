//! Exact linear algebra over GF(2) with bit-packed storage.
//!
//! Rows are stored as contiguous 64-bit words so that row XOR, rank, and
//! row-space membership run word-parallel, while `row_ones` gives the sparse
//! view the graph and decoder code iterates over. Both views address the same
//! bits.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A bit vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of the given length with ones at `positions`.
    pub fn from_support(len: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in positions {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Iterates over the positions of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b))
            .count_ones()
            & 1
            == 1
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// A dense bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from dense 0/1 entries, row by row.
    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &bit) in row.iter().enumerate() {
                if bit & 1 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from per-row lists of set-bit positions.
    pub fn from_row_support(rows: usize, cols: usize, support: &[Vec<usize>]) -> Self {
        assert_eq!(support.len(), rows);
        let mut m = Self::zeros(rows, cols);
        for (i, row) in support.iter().enumerate() {
            for &j in row {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let mask = 1u64 << (c % WORD_BITS);
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Sparse view of row `r`: positions of its set bits, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    pub fn row_as_bitvec(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_row_from(&mut self, dst: usize, src: usize) {
        let (lo, hi) = if dst < src {
            let (a, b) = self.data.split_at_mut(src * self.stride);
            (
                &mut a[dst * self.stride..(dst + 1) * self.stride],
                &b[..self.stride],
            )
        } else {
            let (a, b) = self.data.split_at_mut(dst * self.stride);
            (
                &mut b[..self.stride],
                &a[src * self.stride..(src + 1) * self.stride],
            )
        };
        for (d, s) in lo.iter_mut().zip(hi) {
            *d ^= s;
        }
    }

    pub fn transposed(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Kronecker product: entry `((i*b.rows+k), (j*b.cols+l)) = a(i,j) * b(k,l)`.
    pub fn kron(&self, other: &BinaryMatrix) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                for k in 0..other.rows {
                    for l in other.row_ones(k) {
                        out.set(i * other.rows + k, j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`; row counts must agree.
    pub fn hconcat(&self, other: &BinaryMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hconcat with unequal row counts");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                out.set(r, c, true);
            }
            for c in other.row_ones(r) {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BinaryMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in self.row_ones(r) {
                let (dst, src) = (r, k);
                let dst_base = dst * out.stride;
                let src_base = src * other.stride;
                for w in 0..other.stride {
                    out.data[dst_base + w] ^= other.data[src_base + w];
                }
            }
        }
        out
    }

    /// `self * v^T` over GF(2).
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(&v.words)
                .fold(0u64, |acc, (a, b)| acc ^ (a & b))
                .count_ones()
                & 1;
            if parity == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// True iff `self * other^T = 0`, without materializing the product.
    pub fn orthogonal_rows(&self, other: &BinaryMatrix) -> bool {
        assert_eq!(self.cols, other.cols);
        (0..self.rows).all(|i| {
            let a = self.row_as_bitvec(i);
            (0..other.rows).all(|j| !a.dot(&other.row_as_bitvec(j)))
        })
    }

    /// Rank over GF(2) by row reduction with first-set-bit pivoting.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col));
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for w in 0..m.stride {
                    m.data.swap(rank * m.stride + w, pivot * m.stride + w);
                }
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.xor_row_from(r, rank);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Reduced row-echelon basis of the row space.
    pub fn row_space(&self) -> RowSpace {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, col));
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for w in 0..m.stride {
                    m.data.swap(rank * m.stride + w, pivot * m.stride + w);
                }
            }
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.xor_row_from(r, rank);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        let basis = (0..rank).map(|r| m.row_as_bitvec(r)).collect();
        RowSpace {
            cols: self.cols,
            basis,
            pivots,
        }
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Row-reduced basis of a row space, used for degeneracy checks.
pub struct RowSpace {
    cols: usize,
    basis: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    /// True iff `v` is a GF(2) combination of the basis rows.
    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut residue = v.clone();
        for (row, &pivot) in self.basis.iter().zip(&self.pivots) {
            if residue.get(pivot) {
                residue.xor_assign(row);
            }
        }
        Ok(residue.is_zero())
    }
}
