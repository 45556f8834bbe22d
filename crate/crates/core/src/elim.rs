//! Exact elimination: reduced row-echelon form, kernels, solves and inverses.
//!
//! Each row is first scaled to Gaussian-integer entries by the lcm of its
//! denominators. Elimination then runs fraction-free Gauss-Jordan over the
//! Gaussian integers: the update `(p·a_ij − a_ic·a_rj) / p_prev` divides
//! exactly, every pivot row ends up with the same pivot value, and a single
//! normalization pass returns to the rationals. Pivots are the first nonzero
//! entry in column-major scan order below the current row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt {
                re: &self.re * &o.re,
                im: BigInt::zero(),
            };
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact quotient; the caller guarantees divisibility.
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return GaussInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let n = d.norm();
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        debug_assert!((&re % &n).is_zero() && (&im % &n).is_zero());
        GaussInt { re: re / &n, im: im / n }
    }

    /// `self / d` as a Gaussian rational.
    fn over(&self, d: &GaussInt) -> GaussianRational {
        let n = d.norm();
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        GaussianRational::new(
            Rational::new(re, n.clone()).expect("nonzero pivot"),
            Rational::new(im, n).expect("nonzero pivot"),
        )
    }
}

/// Rows scaled to Gaussian integers, plus the per-row scale factors.
fn integerize(m: &Matrix) -> (Vec<Vec<GaussInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows());
    let mut scales = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = row.iter().fold(BigInt::one(), |acc, z| {
            acc.lcm(z.re.denom()).lcm(z.im.denom())
        });
        rows.push(
            row.iter()
                .map(|z| GaussInt {
                    re: z.re.numer() * (&l / z.re.denom()),
                    im: z.im.numer() * (&l / z.im.denom()),
                })
                .collect(),
        );
        scales.push(l);
    }
    (rows, scales)
}

struct FractionFree {
    rows: Vec<Vec<GaussInt>>,
    pivots: Vec<usize>,
    /// Common value of every pivot entry after elimination.
    pivot_value: GaussInt,
    swaps: usize,
    scales: Vec<BigInt>,
}

fn fraction_free_gauss_jordan(m: &Matrix) -> FractionFree {
    let (mut rows, scales) = integerize(m);
    let (nr, nc) = m.shape();
    let mut prev = GaussInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let pivot_row = rows[r].clone();
        let piv = pivot_row[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..nc {
                if j == c {
                    continue;
                }
                let t = piv.mul(&row[j]);
                let t = if f.is_zero() || pivot_row[j].is_zero() {
                    t
                } else {
                    t.sub(&f.mul(&pivot_row[j]))
                };
                row[j] = if t.is_zero() { t } else { t.div_exact(&prev) };
            }
            row[c] = GaussInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    FractionFree {
        rows,
        pivots,
        pivot_value: prev,
        swaps,
        scales,
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    /// Pivot columns in increasing order.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    let ff = fraction_free_gauss_jordan(m);
    let rank = ff.pivots.len();
    let mut reduced = Matrix::zeros(m.rows(), m.cols());
    for (i, row) in ff.rows.iter().take(rank).enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                reduced[(i, j)] = x.over(&ff.pivot_value);
            }
        }
    }
    Rref {
        reduced,
        pivots: ff.pivots,
        rank,
    }
}

pub fn rank(m: &Matrix) -> usize {
    fraction_free_gauss_jordan(m).pivots.len()
}

/// Canonical null-space basis: one column per free variable, with a 1 in
/// that variable's slot and zeros in the other free slots.
pub fn kernel(m: &Matrix) -> Matrix {
    let Rref { reduced, pivots, .. } = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = Matrix::zeros(n, free.len());
    for (col, &f) in free.iter().enumerate() {
        k[(f, col)] = GaussianRational::one();
        for (row, &p) in pivots.iter().enumerate() {
            k[(p, col)] = -&reduced[(row, f)];
        }
    }
    k
}

/// Particular solution of `A·X = B` with every free variable set to zero.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows() != b.rows() {
        return Err(Error::dim(
            "solve",
            format!("A has {} rows, B has {}", a.rows(), b.rows()),
        ));
    }
    let aug = Matrix::hstack(a.rows(), &[a, b])?;
    let Rref { reduced, pivots, .. } = rref(&aug);
    if pivots.iter().any(|&p| p >= a.cols()) {
        return Err(Error::NoSolution);
    }
    let mut x = Matrix::zeros(a.cols(), b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = reduced[(row, a.cols() + j)].clone();
        }
    }
    Ok(x)
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::dim("inverse", format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let n = m.rows();
    let aug = Matrix::hstack(n, &[m, &Matrix::identity(n)])?;
    let Rref { reduced, pivots, .. } = rref(&aug);
    if pivots.iter().take_while(|&&p| p < n).count() < n {
        return Err(Error::Singular);
    }
    Ok(reduced.submatrix(0..n, n..2 * n))
}

pub fn is_invertible(m: &Matrix) -> bool {
    m.is_square() && rank(m) == m.rows()
}

/// Determinant from the final fraction-free pivot; 1 for the empty matrix.
pub fn determinant(m: &Matrix) -> Result<GaussianRational> {
    if !m.is_square() {
        return Err(Error::dim("determinant", format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let ff = fraction_free_gauss_jordan(m);
    if ff.pivots.len() < m.rows() {
        return Ok(GaussianRational::zero());
    }
    let scale = ff.scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let mut det = ff.pivot_value.over(&GaussInt {
        re: scale,
        im: BigInt::zero(),
    });
    if ff.swaps % 2 == 1 {
        det = -det;
    }
    Ok(det)
}
