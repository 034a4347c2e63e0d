//! Quasi-cyclic matrices over the quotient ring `F_2[x]/(x^gamma - 1)`.
//!
//! An entry is a set of exponents modulo the lifting size; the empty set is
//! the zero element. Lifting expands each entry into a sum of gamma x gamma
//! circulant permutation matrices, with `x^rho` placing ones at
//! `(t, (t + rho) mod gamma)`.

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use std::io::{BufRead, Write};

/// An element of the quotient polynomial ring, stored as sorted exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QcPolynomial {
    terms: Vec<usize>,
}

impl QcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exponent: usize) -> Self {
        Self {
            terms: vec![exponent],
        }
    }

    /// Builds a polynomial from exponents, reducing duplicates mod 2.
    pub fn from_exponents(exponents: &[usize], gamma: usize) -> Self {
        let mut terms: Vec<usize> = Vec::new();
        for &e in exponents {
            let e = e % gamma.max(1);
            match terms.binary_search(&e) {
                Ok(pos) => {
                    terms.remove(pos);
                }
                Err(pos) => terms.insert(pos, e),
            }
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    /// Ring product modulo `x^gamma - 1`.
    pub fn mul(&self, other: &QcPolynomial, gamma: usize) -> QcPolynomial {
        let sums: Vec<usize> = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().map(move |b| (a + b) % gamma))
            .collect();
        QcPolynomial::from_exponents(&sums, gamma)
    }

    /// The conjugate `x^a -> x^((gamma - a) mod gamma)`; zero maps to zero.
    ///
    /// Only monomials carry a well-defined inverse here, so multi-term
    /// entries are rejected.
    pub fn star(&self, gamma: usize) -> Result<QcPolynomial> {
        if self.is_zero() {
            return Ok(QcPolynomial::zero());
        }
        if !self.is_monomial() {
            return Err(Error::NonMonomial);
        }
        Ok(QcPolynomial::monomial((gamma - self.terms[0] % gamma) % gamma))
    }
}

/// A matrix over the quotient ring; the compact form of a QC binary matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcMatrix {
    rows: usize,
    cols: usize,
    gamma: usize,
    entries: Vec<QcPolynomial>,
}

impl QcMatrix {
    pub fn zeros(rows: usize, cols: usize, gamma: usize) -> Self {
        assert!(gamma >= 1, "lifting size must be at least 1");
        Self {
            rows,
            cols,
            gamma,
            entries: vec![QcPolynomial::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, gamma: usize) -> Self {
        let mut m = Self::zeros(n, n, gamma);
        for i in 0..n {
            *m.entry_mut(i, i) = QcPolynomial::monomial(0);
        }
        m
    }

    /// Builds a matrix from entries given as exponent lists; `None` is zero.
    pub fn from_entries(gamma: usize, grid: &[Vec<Option<Vec<usize>>>]) -> Self {
        let rows = grid.len();
        let cols = grid.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows, cols, gamma);
        for (i, row) in grid.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, cell) in row.iter().enumerate() {
                if let Some(exps) = cell {
                    *m.entry_mut(i, j) = QcPolynomial::from_exponents(exps, gamma);
                }
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

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn entry(&self, r: usize, c: usize) -> &QcPolynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut QcPolynomial {
        &mut self.entries[r * self.cols + c]
    }

    /// True iff every nonzero entry is a single monomial.
    pub fn is_monomial(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.is_monomial())
    }

    /// Kronecker product over the ring.
    pub fn kron(&self, other: &QcMatrix) -> Result<QcMatrix> {
        if self.gamma != other.gamma {
            return Err(Error::GammaMismatch(self.gamma, other.gamma));
        }
        let mut out = QcMatrix::zeros(self.rows * other.rows, self.cols * other.cols, self.gamma);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.entry(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        *out.entry_mut(i * other.rows + k, j * other.cols + l) =
                            a.mul(b, self.gamma);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Transpose with entrywise conjugation, `M*(i,j) = (M(j,i))*`.
    pub fn star_transpose(&self) -> Result<QcMatrix> {
        let mut out = QcMatrix::zeros(self.cols, self.rows, self.gamma);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(j, i) = self.entry(i, j).star(self.gamma)?;
            }
        }
        Ok(out)
    }

    pub fn hconcat(&self, other: &QcMatrix) -> Result<QcMatrix> {
        if self.gamma != other.gamma {
            return Err(Error::GammaMismatch(self.gamma, other.gamma));
        }
        assert_eq!(self.rows, other.rows, "hconcat with unequal row counts");
        let mut out = QcMatrix::zeros(self.rows, self.cols + other.cols, self.gamma);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(i, j) = self.entry(i, j).clone();
            }
            for j in 0..other.cols {
                *out.entry_mut(i, self.cols + j) = other.entry(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Expands the compact form into the binary parity-check matrix.
    pub fn lift(&self) -> BinaryMatrix {
        let g = self.gamma;
        let mut out = BinaryMatrix::zeros(self.rows * g, self.cols * g);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for &rho in self.entry(i, j).terms() {
                    for t in 0..g {
                        out.set(i * g + t, j * g + (t + rho) % g, true);
                    }
                }
            }
        }
        out
    }

    /// Parses the QC text format: a `rows cols gamma` header, then one line
    /// per row of whitespace-separated cells, each `-` or comma-separated
    /// exponents.
    pub fn read_from(reader: impl std::io::Read) -> Result<QcMatrix> {
        let reader = std::io::BufReader::new(reader);
        let mut lines = reader
            .lines()
            .map(|l| l.map_err(Error::Io))
            .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedQc("empty file".into()))??;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::MalformedQc(format!("bad header token {t:?}")))
            })
            .collect::<Result<_>>()?;
        let [rows, cols, gamma] = dims[..] else {
            return Err(Error::MalformedQc("header must be `rows cols gamma`".into()));
        };
        if gamma == 0 {
            return Err(Error::MalformedQc("gamma must be positive".into()));
        }
        let mut m = QcMatrix::zeros(rows, cols, gamma);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::MalformedQc(format!("missing row {i}")))??;
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != cols {
                return Err(Error::MalformedQc(format!(
                    "row {i} has {} cells, expected {cols}",
                    cells.len()
                )));
            }
            for (j, cell) in cells.iter().enumerate() {
                if *cell == "-" {
                    continue;
                }
                let exps: Vec<usize> = cell
                    .split(',')
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::MalformedQc(format!("bad exponent {t:?}")))
                    })
                    .collect::<Result<_>>()?;
                if let Some(&e) = exps.iter().find(|&&e| e >= gamma) {
                    return Err(Error::MalformedQc(format!(
                        "exponent {e} not below gamma {gamma}"
                    )));
                }
                *m.entry_mut(i, j) = QcPolynomial::from_exponents(&exps, gamma);
            }
        }
        Ok(m)
    }

    pub fn write_to(&self, mut writer: impl Write) -> Result<()> {
        writeln!(writer, "{} {} {}", self.rows, self.cols, self.gamma)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let e = self.entry(i, j);
                    if e.is_zero() {
                        "-".to_string()
                    } else {
                        e.terms()
                            .iter()
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    }
                })
                .collect();
            writeln!(writer, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
