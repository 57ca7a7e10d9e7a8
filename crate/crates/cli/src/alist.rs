//! The alist text format for sparse parity-check matrices.
//!
//! ```text
//! cols rows
//! max_col_weight max_row_weight
//! <weight of each column>
//! <weight of each row>
//! <1-based row indices of column 1>
//! ...
//! <1-based column indices of row 1>
//! ...
//! ```
//!
//! Zero padding is not accepted: every index must be in range.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use qhgp_core::BinaryMatrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("alist line {line}: {message}")]
pub struct AlistError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> AlistError {
    AlistError {
        line,
        message: message.into(),
    }
}

pub fn emit_alist(m: &BinaryMatrix) -> String {
    let cols = m.column_supports();
    let rows = m.row_supports();
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "{} {}", m.cols(), m.rows()).unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(&mut cols.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(&mut rows.iter().map(Vec::len))).unwrap();
    for c in &cols {
        writeln!(out, "{}", join(&mut c.iter().map(|i| i + 1))).unwrap();
    }
    for r in &rows {
        writeln!(out, "{}", join(&mut r.iter().map(|j| j + 1))).unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>), AlistError> {
        let Some((idx, text)) = self.inner.next() else {
            return Err(err(self.last + 1, format!("unexpected end of input, expected {what}")));
        };
        let line = idx + 1;
        self.last = line;
        let nums = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| err(line, format!("invalid number {tok:?} in {what}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((line, nums))
    }

    fn exactly(&mut self, count: usize, what: &str) -> Result<(usize, Vec<usize>), AlistError> {
        let (line, nums) = self.next_numbers(what)?;
        if nums.len() != count {
            return Err(err(
                line,
                format!("expected {count} entries in {what}, found {}", nums.len()),
            ));
        }
        Ok((line, nums))
    }
}

/// Reads the index list of one column or row, checking range and duplicates.
fn index_list(
    lines: &mut Lines<'_>,
    count: usize,
    bound: usize,
    what: &str,
) -> Result<(usize, BTreeSet<usize>), AlistError> {
    let (line, nums) = lines.exactly(count, what)?;
    let mut set = BTreeSet::new();
    for x in nums {
        if x == 0 || x > bound {
            return Err(err(line, format!("index {x} out of range 1..={bound} in {what}")));
        }
        if !set.insert(x - 1) {
            return Err(err(line, format!("duplicate index {x} in {what}")));
        }
    }
    Ok((line, set))
}

pub fn parse_alist(text: &str) -> Result<BinaryMatrix, AlistError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
        last: 0,
    };
    let (_, dims) = lines.exactly(2, "the dimension line")?;
    let (cols, rows) = (dims[0], dims[1]);
    let (max_line, maxes) = lines.exactly(2, "the maximum-weight line")?;
    let (col_line, col_weights) = lines.exactly(cols, "the column-weight line")?;
    let (row_line, row_weights) = lines.exactly(rows, "the row-weight line")?;
    if let Some(&w) = col_weights.iter().find(|&&w| w > rows) {
        return Err(err(col_line, format!("column weight {w} exceeds row count {rows}")));
    }
    if let Some(&w) = row_weights.iter().find(|&&w| w > cols) {
        return Err(err(row_line, format!("row weight {w} exceeds column count {cols}")));
    }
    let max_col = col_weights.iter().copied().max().unwrap_or(0);
    let max_row = row_weights.iter().copied().max().unwrap_or(0);
    if maxes != [max_col, max_row] {
        return Err(err(
            max_line,
            format!(
                "maximum weights {} {} do not match the weight lists ({max_col} {max_row})",
                maxes[0], maxes[1]
            ),
        ));
    }

    let mut m = BinaryMatrix::zeros(rows, cols);
    for (j, &w) in col_weights.iter().enumerate() {
        let (_, set) = index_list(&mut lines, w, rows, &format!("column {}", j + 1))?;
        for i in set {
            m.set(i, j, true);
        }
    }
    for (i, &w) in row_weights.iter().enumerate() {
        let (line, set) = index_list(&mut lines, w, cols, &format!("row {}", i + 1))?;
        let from_cols: BTreeSet<usize> = m.row(i).iter_ones().collect();
        if set != from_cols {
            return Err(err(line, format!("row {} disagrees with the column lists", i + 1)));
        }
    }
    for (idx, rest) in lines.inner {
        if !rest.trim().is_empty() {
            return Err(err(idx + 1, "unexpected trailing content"));
        }
    }
    Ok(m)
}
