//! Linear algebra over GF(2).
//!
//! [`BinaryMatrix`] stores rows as bit-packed 64-bit words. [`SparseBinaryMatrix`]
//! keeps each row as a sorted list of column indices and is used automatically
//! for very wide, very sparse inputs. Both backends reduce to the same unique
//! reduced row echelon form, so rank, kernel bases and products agree exactly.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

const WORD_BITS: usize = 64;

/// Sparse storage is preferred below this density...
pub const SPARSE_DENSITY_THRESHOLD: f64 = 0.05;
/// ...and above this column count.
pub const SPARSE_MIN_COLS: usize = 4096;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2), packed 64 bits per word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// Builds a vector with ones exactly at `indices`. Repeated indices cancel.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.flip(i);
        }
        v
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

    /// Rebuilds a vector from packed words; bits past `len` must be clear.
    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), word_count(len), "word count does not match length");
        let v = Self { len, words };
        debug_assert!(v.tail_is_clear());
        v
    }

    fn tail_is_clear(&self) -> bool {
        let rem = self.len % WORD_BITS;
        rem == 0 || self.words.last().is_none_or(|w| w >> rem == 0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for vector of length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for vector of length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for vector of length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BinaryVector) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BinaryVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Position of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD_BITS + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD_BITS + bit)
            })
        })
    }

    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters, most significant index last.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bools(&bits))
    }
}

/// Reduced row echelon form of a matrix: nonzero rows only, sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    cols: usize,
    rows: Vec<BinaryVector>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `v` modulo the row space; the result is zero iff `v` is in it.
    pub fn reduce(&self, v: &BinaryVector) -> BinaryVector {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BinaryVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// One kernel vector per free column `f`: ones at `f` and at each pivot
    /// whose row has a one in column `f`. Ordered by free column.
    pub fn kernel_basis(&self) -> Vec<BinaryVector> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BinaryVector::zeros(self.cols);
                v.set(f, true);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    pub fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(self.cols, self.rows.clone())
    }
}

/// Which storage a computation runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Dense,
    Sparse,
}

/// Dense bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BinaryVector>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BinaryVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors, each of length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BinaryVector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_row_indices(rows: usize, cols: usize, supports: &[Vec<usize>]) -> Self {
        assert_eq!(supports.len(), rows, "one support list per row expected");
        Self::from_rows(
            cols,
            supports.iter().map(|s| BinaryVector::from_indices(cols, s)).collect(),
        )
    }

    /// Parses rows written as `0`/`1` strings of equal length.
    pub fn from_row_strs(cols: usize, rows: &[&str]) -> Result<Self, Error> {
        let data = rows
            .iter()
            .map(|r| r.parse::<BinaryVector>())
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self::from_rows(cols, data))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &BinaryVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BinaryVector] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows, "row {i} out of range ({} rows)", self.rows);
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows, "row {i} out of range ({} rows)", self.rows);
        self.data[i].set(j, value)
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows, "row {i} out of range ({} rows)", self.rows);
        self.data[i].flip(j)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BinaryVector::is_zero)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(BinaryVector::weight).sum()
    }

    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.count_ones() as f64 / cells as f64
        }
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.data.iter().map(BinaryVector::weight).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.data {
            for j in r.iter_ones() {
                w[j] += 1;
            }
        }
        w
    }

    /// Column `j` as a vector of length `rows`.
    pub fn column(&self, j: usize) -> BinaryVector {
        assert!(j < self.cols, "column {j} out of range ({} columns)", self.cols);
        let mut v = BinaryVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    /// Index lists of the nonzero positions of every column.
    pub fn column_supports(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for j in r.iter_ones() {
                cols[j].push(i);
            }
        }
        cols
    }

    pub fn row_supports(&self) -> Vec<Vec<usize>> {
        self.data.iter().map(BinaryVector::support).collect()
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.iter_ones() {
                t.data[j].set(i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc = BinaryVector::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        BinaryMatrix::from_rows(other.cols, data)
    }

    /// `self · v` as a vector of length `rows`.
    pub fn mul_vec(&self, v: &BinaryVector) -> BinaryVector {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        let mut out = BinaryVector::zeros(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    /// Appends `v` as a new last row.
    pub fn with_row(&self, v: &BinaryVector) -> BinaryMatrix {
        assert_eq!(v.len(), self.cols, "row length does not match column count");
        let mut data = self.data.clone();
        data.push(v.clone());
        BinaryMatrix::from_rows(self.cols, data)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vertical stack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        BinaryMatrix::from_rows(self.cols, data)
    }

    /// Storage the kernel uses for elimination on this matrix.
    pub fn preferred_backend(&self) -> Backend {
        if self.cols > SPARSE_MIN_COLS && self.density() < SPARSE_DENSITY_THRESHOLD {
            Backend::Sparse
        } else {
            Backend::Dense
        }
    }

    /// Reduced row echelon form, dispatching on [`Self::preferred_backend`].
    pub fn echelon(&self) -> RowEchelon {
        match self.preferred_backend() {
            Backend::Dense => self.echelon_dense(),
            Backend::Sparse => SparseBinaryMatrix::from(self).echelon(),
        }
    }

    /// Gauss-Jordan elimination on packed rows. Columns are swept left to
    /// right; the pivot for a column is the lowest-index remaining row with a
    /// one there.
    pub fn echelon_dense(&self) -> RowEchelon {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        rows.truncate(next);
        RowEchelon {
            cols: self.cols,
            rows,
            pivots,
        }
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

/// Sparse matrix over GF(2): each row is a sorted list of column indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBinaryMatrix {
    rows: usize,
    cols: usize,
    supports: Vec<Vec<usize>>,
}

/// Symmetric difference of two sorted index lists.
fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl SparseBinaryMatrix {
    /// Builds from per-row index lists. Indices are sorted; duplicates cancel.
    pub fn new(rows: usize, cols: usize, supports: Vec<Vec<usize>>) -> Self {
        assert_eq!(supports.len(), rows, "one support list per row expected");
        let supports = supports
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                let mut out: Vec<usize> = Vec::with_capacity(s.len());
                for j in s {
                    assert!(j < cols, "column {j} out of range ({cols} columns)");
                    if out.last() == Some(&j) {
                        out.pop();
                    } else {
                        out.push(j);
                    }
                }
                out
            })
            .collect();
        Self { rows, cols, supports }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_support(&self, i: usize) -> &[usize] {
        &self.supports[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i}, {j}) out of range");
        self.supports[i].binary_search(&j).is_ok()
    }

    pub fn to_dense(&self) -> BinaryMatrix {
        BinaryMatrix::from_row_indices(self.rows, self.cols, &self.supports)
    }

    pub fn transpose(&self) -> SparseBinaryMatrix {
        let mut t = vec![Vec::new(); self.cols];
        for (i, s) in self.supports.iter().enumerate() {
            for &j in s {
                t[j].push(i);
            }
        }
        SparseBinaryMatrix {
            rows: self.cols,
            cols: self.rows,
            supports: t,
        }
    }

    pub fn mul(&self, other: &SparseBinaryMatrix) -> SparseBinaryMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in sparse product");
        let supports = self
            .supports
            .iter()
            .map(|s| s.iter().fold(Vec::new(), |acc, &k| sym_diff(&acc, &other.supports[k])))
            .collect();
        SparseBinaryMatrix {
            rows: self.rows,
            cols: other.cols,
            supports,
        }
    }

    /// Reduced row echelon form via incremental insertion keyed by leading
    /// index, then back-substitution. RREF is unique, so this matches the
    /// dense path exactly.
    pub fn echelon(&self) -> RowEchelon {
        let mut basis: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for s in &self.supports {
            let mut cur = s.clone();
            while let Some(&lead) = cur.first() {
                match basis.get(&lead) {
                    Some(b) => cur = sym_diff(&cur, b),
                    None => {
                        basis.insert(lead, cur);
                        break;
                    }
                }
            }
        }
        // Back-substitute from the highest pivot down so each row is cleared
        // of every later pivot.
        let pivots: Vec<usize> = basis.keys().copied().collect();
        for idx in (0..pivots.len()).rev() {
            let p = pivots[idx];
            let row_p = basis[&p].clone();
            for &q in &pivots[..idx] {
                let row_q = basis.get_mut(&q).expect("pivot present");
                if row_q.binary_search(&p).is_ok() {
                    *row_q = sym_diff(row_q, &row_p);
                }
            }
        }
        let rows = basis
            .values()
            .map(|s| BinaryVector::from_indices(self.cols, s))
            .collect();
        RowEchelon {
            cols: self.cols,
            rows,
            pivots,
        }
    }
}

impl From<&BinaryMatrix> for SparseBinaryMatrix {
    fn from(m: &BinaryMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            supports: m.row_supports(),
        }
    }
}

/// GF(2) rank.
pub fn rank(m: &BinaryMatrix) -> usize {
    m.echelon().rank()
}

/// Basis of `{v : m·v = 0}`, one vector per non-pivot column.
pub fn kernel_basis(m: &BinaryMatrix) -> Vec<BinaryVector> {
    m.echelon().kernel_basis()
}

/// Whether `v` is a linear combination of the rows of `m`, i.e. appending it
/// does not raise the rank.
pub fn in_row_space(m: &BinaryMatrix, v: &BinaryVector) -> bool {
    assert_eq!(v.len(), m.cols(), "vector length does not match column count");
    rank(&m.with_row(v)) == rank(m)
}

pub fn mat_mul(a: &BinaryMatrix, b: &BinaryMatrix) -> BinaryMatrix {
    a.mul(b)
}

pub fn transpose(m: &BinaryMatrix) -> BinaryMatrix {
    m.transpose()
}
