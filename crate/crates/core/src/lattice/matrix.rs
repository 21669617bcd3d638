//! Dense integer matrices and the Smith normal form.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Int;

/// A rectangular matrix with arbitrary-precision integer entries, stored row
/// major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: &Int) {
        for j in 0..self.cols {
            let add = k * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: &Int) {
        for i in 0..self.rows {
            let add = k * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(a, j)]);
            self[(a, j)] = v;
        }
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss).
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        &mut self.entries[i * self.cols + j]
    }
}

/// Smith normal form `left * m * right = diag(d_1, ..., d_k, 0, ...)` with
/// `d_1 | d_2 | ... | d_k` positive and both transforms unimodular.
///
/// `free_rank` is the corank `cols - k`, i.e. the free rank of the cokernel
/// of the row lattice acting on `Z^cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub invariant_factors: Vec<Int>,
    pub free_rank: usize,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than 1, i.e. the torsion part.
    pub fn torsion(&self) -> Vec<Int> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Re-checks `left * m * right == diagonal` and that both transforms have
    /// determinant +-1.
    pub fn verify(&self, m: &IntMatrix) -> Result<()> {
        let prod = self.left.mul(m).mul(&self.right);
        if prod != self.diagonal {
            return Err(Error::Internal("SNF transform round-trip failed".into()));
        }
        for t in [&self.left, &self.right] {
            if !t.det().abs().is_one() {
                return Err(Error::Internal("SNF transform is not unimodular".into()));
            }
        }
        for w in self.invariant_factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::Internal("SNF divisibility chain broken".into()));
            }
        }
        Ok(())
    }
}

/// Diagonalizes `m` over the integers, tracking the row and column
/// transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        // Pick the nonzero entry of least magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if a[(pi, pj)].abs() <= a[(i, j)].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(k, pi);
        left.swap_rows(k, pi);
        a.swap_cols(k, pj);
        right.swap_cols(k, pj);

        let mut clean = true;
        for i in k + 1..rows {
            if !a[(i, k)].is_zero() {
                let q = -(&a[(i, k)] / &a[(k, k)]);
                a.add_row(i, k, &q);
                left.add_row(i, k, &q);
                if !a[(i, k)].is_zero() {
                    clean = false;
                }
            }
        }
        for j in k + 1..cols {
            if !a[(k, j)].is_zero() {
                let q = -(&a[(k, j)] / &a[(k, k)]);
                a.add_col(j, k, &q);
                right.add_col(j, k, &q);
                if !a[(k, j)].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // remainders left behind; re-pivot on a smaller entry
        }
        // Enforce divisibility of the rest of the block by the pivot.
        let mut offender = None;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&a[(i, j)] % &a[(k, k)]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = Int::one();
            a.add_row(k, i, &one);
            left.add_row(k, i, &one);
            continue;
        }
        k += 1;
    }

    for i in 0..k {
        if a[(i, i)].is_negative() {
            a.negate_row(i);
            left.negate_row(i);
        }
    }

    let invariant_factors: Vec<Int> = (0..k).map(|i| a[(i, i)].clone()).collect();
    SnfResult { free_rank: cols - k, invariant_factors, left, right, diagonal: a }
}
