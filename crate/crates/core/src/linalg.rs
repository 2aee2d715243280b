//! Dense exact linear algebra over an arbitrary field scalar.
//!
//! Everything the engine decides — cohomology dimensions, pairing
//! perfectness, sequence exactness — reduces to ranks, kernels and solves of
//! small dense matrices. Pivoting is deterministic (columns left to right,
//! first nonzero row), so echelon forms and the bases derived from them are
//! reproducible across runs.

use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<S> {
    pub matrix: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Build a matrix from column vectors; `rows` disambiguates the empty
    /// case.
    pub fn from_cols(cols: Vec<Vec<S>>, rows: usize) -> Self {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a.clone() * b.clone())
                    .sum()
            })
            .collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows);
        let mut out: Matrix<S> = Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + term;
                }
            }
        }
        out
    }

    /// Multiply every entry by a scalar.
    pub fn mul_scalar(&self, s: &S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `other` to the right of `self` (same row count).
    pub fn hstack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form. Pivot rule: scan columns left to right and
    /// take the first row with a nonzero entry.
    pub fn echelon(&self) -> Echelon<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(pivot_row) = (next_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(next_row, pivot_row);
            let inv = S::one() / m[(next_row, col)].clone();
            m.scale_row(next_row, &inv);
            for r in 0..m.rows {
                if r != next_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    m.axpy_row(r, next_row, &factor);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    /// The free coordinate of each basis vector is `1`.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let ech = self.echelon();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![S::zero(); self.cols];
            vec[free] = S::one();
            for (r, &c) in ech.pivots.iter().enumerate() {
                vec[c] = -ech.matrix[(r, free)].clone();
            }
            basis.push(vec);
        }
        basis
    }

    /// Pivot coordinates of the row space, i.e. of the span of the rows of
    /// `self` inside the ambient coordinate space. Standard basis vectors at
    /// the complementary coordinates represent the quotient.
    pub fn row_space_pivots(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Solve `self * x = b` exactly. Returns `None` when inconsistent; when
    /// underdetermined, free variables are set to zero.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let rhs = Matrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        let aug = self.hstack(&rhs);
        let ech = aug.echelon();
        if ech.pivots.contains(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            x[c] = ech.matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Whether the matrix is square with full rank.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &S) {
        for j in 0..self.cols {
            let v = self[(r, j)].clone() * factor.clone();
            self[(r, j)] = v;
        }
    }

    /// `row[r] -= factor * row[src]`.
    fn axpy_row(&mut self, r: usize, src: usize, factor: &S) {
        for j in 0..self.cols {
            let v = self[(r, j)].clone() - factor.clone() * self[(src, j)].clone();
            self[(r, j)] = v;
        }
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
