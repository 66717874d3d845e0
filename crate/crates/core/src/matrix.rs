//! Dense integer matrices, Smith normal form, and abelian invariants.
//!
//! The Smith normal form routine returns unimodular witnesses `U`, `V`
//! with `U·M·V = D`; pivoting always picks the smallest-magnitude
//! nonzero entry of the remaining submatrix, which keeps intermediate
//! entries tame on the matrix sizes that occur here. A witness-free
//! variant serves the large, sparse relator matrices produced by
//! subgroup rewriting.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow { row: usize, got: usize, expected: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
}

/// Row-major matrix with exact `i128` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    got: r.len(),
                    expected: ncols,
                });
            }
        }
        Ok(IntegerMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows)
            .all(|i| (0..self.cols).all(|j| i == j || self[(i, j)] == 0))
    }

    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = add(out[(i, j)], mul(a, other[(k, j)]));
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<i128, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[(k, k)] == 0 {
                match (k + 1..n).find(|&i| m[(i, k)] != 0) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = sub(mul(m[(k, k)], m[(i, j)]), mul(m[(i, k)], m[(k, j)]));
                    m[(i, j)] = num / prev;
                }
                m[(i, k)] = 0;
            }
            prev = m[(k, k)];
        }
        Ok(sign * m[(n - 1, n - 1)])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }

    /// row_dst -= q * row_src
    fn row_sub(&mut self, dst: usize, src: usize, q: i128) {
        if q == 0 {
            return;
        }
        for j in 0..self.cols {
            self[(dst, j)] = sub(self[(dst, j)], mul(q, self[(src, j)]));
        }
    }

    /// col_dst -= q * col_src
    fn col_sub(&mut self, dst: usize, src: usize, q: i128) {
        if q == 0 {
            return;
        }
        for i in 0..self.rows {
            self[(i, dst)] = sub(self[(i, dst)], mul(q, self[(i, src)]));
        }
    }

    /// row_dst += row_src
    fn row_add(&mut self, dst: usize, src: usize) {
        for j in 0..self.cols {
            self[(dst, j)] = add(self[(dst, j)], self[(src, j)]);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = i128;

    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer overflow in matrix arithmetic")
}

fn sub(a: i128, b: i128) -> i128 {
    a.checked_sub(b).expect("integer overflow in matrix arithmetic")
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in matrix arithmetic")
}

/// Result of [`smith_normal_form`]: `u * m * v = d` with `d` diagonal,
/// nonnegative, each entry dividing the next, and `|det u| = |det v| = 1`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

struct SnfState {
    m: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
}

impl SnfState {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(u) = &mut self.u {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(v) = &mut self.v {
            v.swap_cols(a, b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.m.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    fn row_sub(&mut self, dst: usize, src: usize, q: i128) {
        self.m.row_sub(dst, src, q);
        if let Some(u) = &mut self.u {
            u.row_sub(dst, src, q);
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: i128) {
        self.m.col_sub(dst, src, q);
        if let Some(v) = &mut self.v {
            v.col_sub(dst, src, q);
        }
    }

    fn row_add(&mut self, dst: usize, src: usize) {
        self.m.row_add(dst, src);
        if let Some(u) = &mut self.u {
            u.row_add(dst, src);
        }
    }

    /// Smallest-|entry| nonzero pivot in the submatrix at (k,k), ties
    /// broken by position.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in k..self.m.rows {
            for j in k..self.m.cols {
                let e = self.m[(i, j)].unsigned_abs() as i128;
                if e == 0 {
                    continue;
                }
                if best.is_none_or(|(b, _, _)| e < b) {
                    best = Some((e, i, j));
                    if e == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn diagonalize(&mut self) {
        let t = self.m.rows.min(self.m.cols);
        for k in 0..t {
            loop {
                let Some((pi, pj)) = self.find_pivot(k) else {
                    return; // rest of the matrix is zero
                };
                self.swap_rows(k, pi);
                self.swap_cols(k, pj);
                if self.m[(k, k)] < 0 {
                    self.negate_row(k);
                }
                let pivot = self.m[(k, k)];

                // Clear column and row; Euclidean remainders stay in
                // place and become the next (strictly smaller) pivot.
                let mut clean = true;
                for i in k + 1..self.m.rows {
                    let q = self.m[(i, k)].div_euclid(pivot);
                    self.row_sub(i, k, q);
                    if self.m[(i, k)] != 0 {
                        clean = false;
                    }
                }
                for j in k + 1..self.m.cols {
                    let q = self.m[(k, j)].div_euclid(pivot);
                    self.col_sub(j, k, q);
                    if self.m[(k, j)] != 0 {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }

                // Force the pivot to divide the remaining submatrix, so
                // the final diagonal carries the divisibility chain.
                let offender = (k + 1..self.m.rows).find_map(|i| {
                    (k + 1..self.m.cols)
                        .find(|&j| self.m[(i, j)] % pivot != 0)
                        .map(|_| i)
                });
                match offender {
                    Some(i) => {
                        self.row_add(k, i);
                        continue;
                    }
                    None => break,
                }
            }
        }
    }
}

/// Smith normal form with unimodular witnesses.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let mut state = SnfState {
        m: m.clone(),
        u: Some(IntegerMatrix::identity(m.rows)),
        v: Some(IntegerMatrix::identity(m.cols)),
    };
    state.diagonalize();
    SmithDecomposition {
        d: state.m,
        u: state.u.unwrap(),
        v: state.v.unwrap(),
    }
}

/// Diagonal of the Smith normal form without witness bookkeeping.
pub fn smith_diagonal(m: &IntegerMatrix) -> Vec<i128> {
    let mut state = SnfState { m: m.clone(), u: None, v: None };
    state.diagonalize();
    state.m.diagonal()
}

/// Invariant-factor description of a finitely generated abelian group:
/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `2 ≤ d_1 | d_2 | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Cokernel invariants of a relation matrix acting on `cols`
    /// generators: torsion from diagonal entries `> 1`, free rank from
    /// the corank.
    pub fn from_relation_matrix(m: &IntegerMatrix) -> Self {
        let diag = smith_diagonal(m);
        let rank = diag.iter().filter(|&&d| d != 0).count();
        let torsion = diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| u64::try_from(d).expect("torsion entry out of range"))
            .collect();
        AbelianInvariants { torsion, free_rank: m.cols() - rank }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> =
            self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
