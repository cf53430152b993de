//! Dense bit-packed linear algebra over GF(2).
//!
//! Every homology computation, cycle-class membership test and kernel
//! extraction in this crate reduces to Gaussian elimination on a
//! `BitMatrix`. Complexes in scope stay at a few thousand monomials per
//! grading, so a dense row-major representation with `u64` words is both
//! simple and fast. All operations are deterministic: pivots are chosen
//! as the first nonzero entry in scan order.

use crate::error::{Error, Result};

/// A vector over GF(2), packed 64 bits per word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// # Panics
    /// Panics if `i >= self.len()`.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// # Panics
    /// Panics if `i >= self.len()`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        if value {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// GF(2) addition.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor_assign: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[{}; ", self.len)?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// A dense matrix over GF(2), rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    ///
    /// # Panics
    /// Panics if the columns have inconsistent lengths.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for i in col.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        for r in rows {
            assert_eq!(r.len(), cols, "row has wrong length");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn column(&self, j: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    /// Matrix-vector product over GF(2).
    ///
    /// # Panics
    /// Panics if `v.len() != self.cols()`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "mul_vec: dimension mismatch");
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.data[i].words.iter().zip(&v.words) {
                acc ^= a & b;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    /// Appends the columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row count mismatch");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                m.set(i, j, true);
            }
            for j in other.data[i].ones() {
                m.set(i, self.cols + j, true);
            }
        }
        m
    }

    /// Row echelon form; returns (reduced copy, pivot columns).
    fn echelon(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // first nonzero entry in this column at or below `row`
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.data.swap(row, p);
            let pivot_row = m.data[row].clone();
            for (r, data) in m.data.iter_mut().enumerate() {
                if r != row && data.get(col) {
                    data.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix({}x{}):", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// GF(2) rank via Gaussian elimination.
pub fn rank(m: &BitMatrix) -> usize {
    m.echelon().1.len()
}

/// Solves `span * coeffs = target` where the columns of `span` are the
/// spanning set. Returns `Ok(None)` when the target is outside the column
/// span; free variables are set to zero, so the answer is deterministic.
pub fn solve_membership(span: &BitMatrix, target: &BitVec) -> Result<Option<BitVec>> {
    if target.len() != span.rows() {
        return Err(Error::InvalidInput(format!(
            "solve_membership: target length {} does not match row count {}",
            target.len(),
            span.rows()
        )));
    }
    let augmented = span.hstack(&BitMatrix::from_columns(span.rows(), &[target.clone()]));
    let (ech, pivots) = augmented.echelon();
    if pivots.contains(&span.cols()) {
        return Ok(None); // inconsistent: pivot in the target column
    }
    let mut coeffs = BitVec::zeros(span.cols());
    for (row, &col) in pivots.iter().enumerate() {
        if ech.get(row, span.cols()) {
            coeffs.set(col, true);
        }
    }
    debug_assert!({
        let mut check = span.mul_vec(&coeffs);
        check.xor_assign(target);
        check.is_zero()
    });
    Ok(Some(coeffs))
}

/// A maximal independent subset of the columns of `m` (the pivot columns
/// of its echelon form): a basis of the column space.
pub fn column_space_basis(m: &BitMatrix) -> Vec<BitVec> {
    let (_, pivots) = m.echelon();
    pivots.into_iter().map(|j| m.column(j)).collect()
}

/// A basis of the null space of `m`; its size is `cols - rank`.
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVec> {
    let (ech, pivots) = m.echelon();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..m.cols() {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = BitVec::zeros(m.cols());
        v.set(free, true);
        for (row, &col) in pivots.iter().enumerate() {
            if ech.get(row, free) {
                v.set(col, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// True when appending the candidate columns strictly increases the rank
/// of `base`, i.e. some candidate lies outside the base column span.
pub fn rank_increases(base: &BitMatrix, candidates: &BitMatrix) -> bool {
    rank(&base.hstack(candidates)) > rank(base)
}
