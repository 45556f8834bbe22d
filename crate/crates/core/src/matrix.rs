//! Dense row-major matrices over the Gaussian rationals.
//!
//! Zero-row and zero-column matrices are ordinary values: the product of an
//! `r×0` and a `0×c` matrix is the `r×c` zero matrix.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Range};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

/// The binary and unary operations exposed through [`mat_arith`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Sub,
    Mul,
    /// Conjugate transpose of the first operand; the second is ignored.
    Adjoint,
    ScalarMul(GaussianRational),
}

/// Single entry point for the elementary matrix operations.
pub fn mat_arith(a: &Matrix, b: &Matrix, op: MatOp) -> Result<Matrix> {
    match op {
        MatOp::Add => a.try_add(b),
        MatOp::Sub => a.try_sub(b),
        MatOp::Mul => a.try_mul(b),
        MatOp::Adjoint => Ok(a.adjoint()),
        MatOp::ScalarMul(s) => Ok(a.scale(&s)),
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(
                "from_vec",
                format!("{} entries for a {rows}x{cols} matrix", data.len()),
            ));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from nested rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dim("from_rows", format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols, data })
    }

    /// Integer matrix from a literal. Panics on ragged input.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Matrix::from_fn(rows.len(), C, |i, j| GaussianRational::from_int(rows[i][j]))
    }

    /// Rational matrix from `(num, den)` literals. Panics on a zero denominator.
    pub fn from_ratios<const C: usize>(rows: &[[(i64, i64); C]]) -> Self {
        Matrix::from_fn(rows.len(), C, |i, j| {
            let (n, d) = rows[i][j];
            GaussianRational::ratio(n, d).expect("nonzero denominator")
        })
    }

    pub fn diag(entries: &[GaussianRational]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// `e_k` as an `n×1` column.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut m = Matrix::zeros(n, 1);
        m[(k, 0)] = GaussianRational::one();
        m
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.rows, 1, |i, _| self[(i, j)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, k| self[(i, cols[k])].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| self[(i, j)] == self[(j, i)].conj()))
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: &GaussianRational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn scale_rational(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.scale(s)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    fn same_shape(&self, other: &Matrix, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::dim(
                op,
                format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dim(
                "mul",
                format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols),
            ));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^k` for square matrices; `self^0 = I`.
    pub fn pow(&self, k: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::dim("pow", format!("{}x{} is not square", self.rows, self.cols)));
        }
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "submatrix out of range");
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows.start + i, cols.start + j)].clone())
    }

    /// Horizontal concatenation. All parts must share the row count `rows`.
    pub fn hstack(rows: usize, parts: &[&Matrix]) -> Result<Matrix> {
        if let Some(p) = parts.iter().find(|p| p.rows != rows) {
            return Err(Error::dim("hstack", format!("part has {} rows, expected {rows}", p.rows)));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out[(i, off + j)] = p[(i, j)].clone();
                }
            }
            off += p.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation. All parts must share the column count `cols`.
    pub fn vstack(cols: usize, parts: &[&Matrix]) -> Result<Matrix> {
        if let Some(p) = parts.iter().find(|p| p.cols != cols) {
            return Err(Error::dim("vstack", format!("part has {} cols, expected {cols}", p.cols)));
        }
        let mut data = Vec::new();
        for p in parts {
            data.extend(p.data.iter().cloned());
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        Ok(Matrix { rows, cols, data })
    }

    pub fn block_diag(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Builds a matrix from a grid of blocks with the given row and column
    /// partition sizes; `None` entries are zero blocks.
    pub fn from_blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Matrix>>]) -> Result<Matrix> {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    if b.shape() != (rs, cs) {
                        return Err(Error::dim(
                            "from_blocks",
                            format!("block ({bi},{bj}) is {}x{}, expected {rs}x{cs}", b.rows, b.cols),
                        ));
                    }
                    out.set_block(r0, c0, b);
                }
                c0 += cs;
            }
            r0 += rs;
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Panics on a shape mismatch; use [`Matrix::try_mul`] for checked products.
impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl std::ops::Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl std::ops::Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        if self.rows == 0 {
            writeln!(f, "[] ({}x{})", self.rows, self.cols)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}
