//! Dense exact linear algebra over `F_p`.
//!
//! Vectors are column vectors; a matrix with `c` columns maps `F_p^c` to
//! `F_p^r`. Row reduction always pivots on the first column holding a nonzero
//! entry at or below the current row, taking the lowest such row index, so
//! every derived object (kernels, quotient sections) is reproducible.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fp;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.field.modulus())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = u64;
    fn index(&self, (r, c): (usize, usize)) -> &u64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction: the reduced row echelon form with zero rows
/// dropped, together with the pivot column of each remaining row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows, reducing entries mod p.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::shape(format!("row {r} has length {}, expected {cols}", row.len())));
            }
            for (c, &v) in row.iter().enumerate() {
                m[(r, c)] = field.reduce(v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {c} has wrong length");
            for (r, &v) in col.iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other[(k, c)];
                    if b != 0 {
                        out[(r, c)] = f.add(out[(r, c)], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, s: u64) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { data, ..*self }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Flattens the matrix row by row.
    pub fn flatten(&self) -> Vec<u64> {
        self.data.clone()
    }

    /// Row reduction with the fixed pivoting rule.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m[(r, col)] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m[(row, col)]);
            for c in col..m.cols {
                m[(row, c)] = f.mul(m[(row, c)], inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m[(r, col)];
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.mul(factor, m[(row, c)]);
                    m[(r, c)] = f.sub(m[(r, c)], v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.data.truncate(row * m.cols);
        m.rows = row;
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space `{v : M v = 0}`, one vector per row.
    pub fn kernel(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.echelon();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            k[(i, fc)] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                k[(i, pc)] = f.neg(reduced[(r, fc)]);
            }
        }
        k
    }

    /// Returns one solution of `M v = rhs`, or `None` if the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, self.cols)] = rhs[r];
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = reduced[(r, self.cols)];
        }
        Some(v)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, n + r)] = 1;
        }
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = reduced[(r, n + c)];
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Exact Gaussian elimination helpers with shape checking, mirroring the
/// free-standing operations used throughout the crate.
pub fn solve_affine(m: &Matrix, rhs: &[u64]) -> Result<Option<Vec<u64>>> {
    if rhs.len() != m.rows() {
        return Err(Error::shape(format!("right-hand side has length {}, matrix has {} rows", rhs.len(), m.rows())));
    }
    Ok(m.solve(rhs))
}

pub fn kernel(m: &Matrix) -> Matrix {
    m.kernel()
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// A subspace of `F_p^m` held as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `generators`.
    pub fn span(generators: &Matrix) -> Self {
        let Echelon { reduced, pivots } = generators.echelon();
        Self { basis: reduced, pivots }
    }

    pub fn span_of(field: Fp, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        let mut m = Matrix::zeros(field, 0, ambient);
        for v in vectors {
            m.push_row(v);
        }
        Self::span(&m)
    }

    pub fn whole(field: Fp, ambient: usize) -> Self {
        Self::span(&Matrix::identity(field, ambient))
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u64>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.ambient());
        let coords: Vec<u64> = self.pivots.iter().map(|&c| v[c]).collect();
        (self.combine(&coords) == v).then_some(coords)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coords: &[u64]) -> Vec<u64> {
        assert_eq!(coords.len(), self.dim());
        let f = self.basis.field();
        let mut out = vec![0; self.ambient()];
        for (r, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.add(*o, f.mul(c, b));
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }
}

/// The quotient of `F_p^m` by the span of a set of relation vectors,
/// with explicit projection and section matrices.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    ambient: usize,
    relations: Matrix,
    projection: Matrix,
    section: Matrix,
}

impl QuotientSpace {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// `q x m` matrix sending an ambient vector to quotient coordinates.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `m x q` matrix choosing a representative for each quotient vector.
    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn project(&self, v: &[u64]) -> Vec<u64> {
        self.projection.mul_vec(v)
    }
}

/// Quotient of the `ambient_dim`-dimensional space by the row span of
/// `relations`. Quotient coordinates are the non-pivot columns of the
/// reduced relation matrix.
pub fn build_quotient(field: Fp, ambient_dim: usize, relations: &Matrix) -> Result<QuotientSpace> {
    if relations.cols() != ambient_dim {
        return Err(Error::shape(format!(
            "relations have {} columns, ambient dimension is {ambient_dim}",
            relations.cols()
        )));
    }
    let Echelon { reduced, pivots } = relations.echelon();
    let free: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let q = free.len();
    let mut projection = Matrix::zeros(field, q, ambient_dim);
    let mut section = Matrix::zeros(field, ambient_dim, q);
    for (t, &fc) in free.iter().enumerate() {
        projection[(t, fc)] = 1;
        section[(fc, t)] = 1;
    }
    // A pivot basis vector is congruent to minus the free part of its row.
    for (r, &pc) in pivots.iter().enumerate() {
        for (t, &fc) in free.iter().enumerate() {
            projection[(t, pc)] = field.neg(reduced[(r, fc)]);
        }
    }
    Ok(QuotientSpace { ambient: ambient_dim, relations: reduced, projection, section })
}
