//! Reader and writer for the alist parity-check interchange format.
//!
//! Layout: `n m` header, maximum column/row degrees, per-column and per-row
//! degrees, then one neighbor list per column and per row with 1-indexed
//! entries. Zero-padded lists (common for irregular codes) are accepted.

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use std::io::{BufRead, Write};

/// Parses an alist stream into the m x n parity-check matrix.
pub fn read_alist(reader: impl std::io::Read) -> Result<BinaryMatrix> {
    let reader = std::io::BufReader::new(reader);
    // Keep empty lines: zero-degree nodes legitimately have empty lists.
    let mut tokens: Vec<Vec<usize>> = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::MalformedAlist(format!("bad token {t:?}")))
            })
            .collect::<Result<_>>()?;
        tokens.push(row);
    }
    let mut lines = tokens.into_iter();

    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedAlist("empty file".into()))?;
    let [n, m] = header[..] else {
        return Err(Error::MalformedAlist("header must be `n m`".into()));
    };
    let _max_degrees = lines
        .next()
        .ok_or_else(|| Error::MalformedAlist("missing max-degree line".into()))?;
    let col_degrees = lines
        .next()
        .ok_or_else(|| Error::MalformedAlist("missing column degrees".into()))?;
    let row_degrees = lines
        .next()
        .ok_or_else(|| Error::MalformedAlist("missing row degrees".into()))?;
    if col_degrees.len() != n || row_degrees.len() != m {
        return Err(Error::MalformedAlist(format!(
            "degree lines have {} and {} entries, expected {n} and {m}",
            col_degrees.len(),
            row_degrees.len()
        )));
    }

    let read_list = |line: Vec<usize>, degree: usize, bound: usize, what: &str| -> Result<Vec<usize>> {
        let entries: Vec<usize> = line.iter().copied().filter(|&t| t != 0).collect();
        if entries.len() != degree {
            return Err(Error::MalformedAlist(format!(
                "{what} list has {} entries, expected {degree}",
                entries.len()
            )));
        }
        for &t in &entries {
            if t > bound {
                return Err(Error::MalformedAlist(format!(
                    "{what} index {t} exceeds {bound}"
                )));
            }
        }
        Ok(entries.iter().map(|&t| t - 1).collect())
    };

    let mut matrix = BinaryMatrix::zeros(m, n);
    let mut col_lists = Vec::with_capacity(n);
    for (c, &deg) in col_degrees.iter().enumerate() {
        let line = lines
            .next()
            .ok_or_else(|| Error::MalformedAlist(format!("missing list for column {c}")))?;
        col_lists.push(read_list(line, deg, m, "column")?);
    }
    for (r, &deg) in row_degrees.iter().enumerate() {
        let line = lines
            .next()
            .ok_or_else(|| Error::MalformedAlist(format!("missing list for row {r}")))?;
        for c in read_list(line, deg, n, "row")? {
            matrix.set(r, c, true);
        }
    }
    // The two list families must describe the same bipartite graph.
    for (c, list) in col_lists.iter().enumerate() {
        for &r in list {
            if !matrix.get(r, c) {
                return Err(Error::MalformedAlist(format!(
                    "column {c} lists check {r} but row {r} does not list it"
                )));
            }
        }
        if matrix.col_weight(c) != list.len() {
            return Err(Error::MalformedAlist(format!(
                "column {c} degree disagrees between the two list families"
            )));
        }
    }
    Ok(matrix)
}

/// Writes a parity-check matrix in alist format.
pub fn write_alist(matrix: &BinaryMatrix, mut writer: impl Write) -> Result<()> {
    let (m, n) = (matrix.rows(), matrix.cols());
    let col_degrees: Vec<usize> = (0..n).map(|c| matrix.col_weight(c)).collect();
    let row_degrees: Vec<usize> = (0..m).map(|r| matrix.row_weight(r)).collect();
    writeln!(writer, "{n} {m}")?;
    writeln!(
        writer,
        "{} {}",
        col_degrees.iter().max().copied().unwrap_or(0),
        row_degrees.iter().max().copied().unwrap_or(0)
    )?;
    let join = |v: &[usize]| {
        v.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(writer, "{}", join(&col_degrees))?;
    writeln!(writer, "{}", join(&row_degrees))?;
    for c in 0..n {
        let list: Vec<usize> = (0..m).filter(|&r| matrix.get(r, c)).map(|r| r + 1).collect();
        writeln!(writer, "{}", join(&list))?;
    }
    for r in 0..m {
        let list: Vec<usize> = matrix.row_ones(r).map(|c| c + 1).collect();
        writeln!(writer, "{}", join(&list))?;
    }
    Ok(())
}
