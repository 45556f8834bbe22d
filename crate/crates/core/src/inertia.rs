//! Sylvester inertia of Hermitian matrices by exact congruence diagonalization.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn new(pos: usize, neg: usize, zero: usize) -> Self {
        Inertia { pos, neg, zero }
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.zero
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(+{}, -{}, 0:{})", self.pos, self.neg, self.zero)
    }
}

/// Diagonalizes `M` by congruences `T*MT` and counts diagonal signs.
///
/// The first remaining index with a nonzero diagonal entry is the pivot.
/// When every remaining diagonal entry vanishes but some `M_ij` does not,
/// column `j` scaled by `conj(M_ij)` is added to column `i` (and the
/// conjugate row operation applied), which makes the new `M_ii` equal to
/// `2|M_ij|² > 0`.
pub fn hermitian_inertia(m: &Matrix) -> Result<Inertia> {
    if !m.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia::default();

    while !active.is_empty() {
        let pivot = active.iter().position(|&k| !a[(k, k)].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(ai, &i)| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[(i, j)].is_zero())
                        .map(|&j| (ai, i, j))
                });
                let Some((ai, i, j)) = pair else {
                    inertia.zero += active.len();
                    break;
                };
                let c = a[(i, j)].conj();
                add_scaled_index(&mut a, &active, i, j, &c);
                ai
            }
        };
        let k = active.remove(pivot);
        let d = a[(k, k)].re.clone();
        debug_assert!(a[(k, k)].is_real());
        match d.signum() {
            1 => inertia.pos += 1,
            -1 => inertia.neg += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        let inv = d.recip().expect("nonzero pivot");
        // Schur complement on the remaining indices.
        let col_k: Vec<GaussianRational> = active.iter().map(|&i| a[(i, k)].clone()).collect();
        for (ii, &i) in active.iter().enumerate() {
            if col_k[ii].is_zero() {
                continue;
            }
            let f = col_k[ii].scale(&inv);
            for (jj, &j) in active.iter().enumerate() {
                if col_k[jj].is_zero() {
                    continue;
                }
                let t = &f * &col_k[jj].conj();
                a[(i, j)] -= t;
            }
        }
    }
    Ok(inertia)
}

/// Column `i` += c·column `j`, then row `i` += conj(c)·row `j`, restricted
/// to the active index set.
fn add_scaled_index(a: &mut Matrix, active: &[usize], i: usize, j: usize, c: &GaussianRational) {
    for &r in active {
        let t = &a[(r, j)] * c;
        a[(r, i)] += t;
    }
    let cc = c.conj();
    for &s in active {
        let t = &a[(j, s)] * &cc;
        a[(i, s)] += t;
    }
}

/// True iff the Hermitian matrix has no negative eigenvalue.
pub fn is_psd(m: &Matrix) -> Result<bool> {
    Ok(hermitian_inertia(m)?.neg == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_matrix_is_split() {
        let m = Matrix::from_ints(&[[0, 1], [1, 0]]);
        assert_eq!(hermitian_inertia(&m).unwrap(), Inertia::new(1, 1, 0));
    }

    #[test]
    fn diagonal_signs() {
        let m = Matrix::from_ints(&[[2, 0, 0], [0, -3, 0], [0, 0, 0]]);
        assert_eq!(hermitian_inertia(&m).unwrap(), Inertia::new(1, 1, 1));
        assert!(!is_psd(&Matrix::from_ints(&[[1, 0], [0, -1]])).unwrap());
    }

    #[test]
    fn example_defects_are_psd() {
        let mut d1 = Matrix::zeros(5, 5);
        d1.set_block(3, 3, &Matrix::from_ints(&[[5, 8], [8, 16]]));
        assert_eq!(hermitian_inertia(&d1).unwrap(), Inertia::new(2, 0, 3));
        assert!(is_psd(&d1).unwrap());
        let d2 = Matrix::from_ints(&[
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0],
            [0, 0, 0, 0, 2],
        ]);
        assert!(is_psd(&d2).unwrap());
    }

    #[test]
    fn purely_imaginary_off_diagonal() {
        // [[0, i], [-i, 0]] has eigenvalues ±1.
        let i = GaussianRational::i();
        let m = Matrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => i.clone(),
            (1, 0) => -&i,
            _ => GaussianRational::zero(),
        });
        assert_eq!(hermitian_inertia(&m).unwrap(), Inertia::new(1, 1, 0));
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = Matrix::from_ints(&[[0, 1], [0, 0]]);
        assert_eq!(hermitian_inertia(&m), Err(Error::NotHermitian));
        assert_eq!(is_psd(&m), Err(Error::NotHermitian));
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(hermitian_inertia(&Matrix::zeros(0, 0)).unwrap(), Inertia::default());
    }
}
