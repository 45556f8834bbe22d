//! Pairs `(A, H)` in an indefinite inner product space: defect,
//! classification, H-adjoint and the unobservable subspace of `(D, A)`.

use crate::elim::{inverse, kernel, rref};
use crate::error::{Error, Result};
use crate::inertia::{hermitian_inertia, Inertia};
use crate::matrix::Matrix;
use crate::subspace::{check_inner_product, Subspace};

/// A square matrix `A` together with an invertible Hermitian `H` of the
/// same size. Both conditions are checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPair {
    a: Matrix,
    h: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub expansive: bool,
    pub unitary: bool,
    pub selfadjoint: bool,
    pub defect_inertia: Inertia,
}

impl HPair {
    pub fn new(a: Matrix, h: Matrix) -> Result<HPair> {
        if !a.is_square() {
            return Err(Error::dim("HPair", format!("A is {}x{}", a.rows(), a.cols())));
        }
        check_inner_product(&h, a.rows())?;
        Ok(HPair { a, h })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// `D = A*HA − H`.
    pub fn defect(&self) -> Matrix {
        &(&(&self.a.adjoint() * &self.h) * &self.a) - &self.h
    }

    pub fn classify(&self) -> Classification {
        let d = self.defect();
        let defect_inertia = hermitian_inertia(&d).expect("defect is Hermitian");
        let ha = &self.h * &self.a;
        Classification {
            expansive: defect_inertia.neg == 0,
            unitary: d.is_zero(),
            selfadjoint: ha == ha.adjoint(),
            defect_inertia,
        }
    }

    /// `H⁻¹A*H`.
    pub fn h_adjoint(&self) -> Matrix {
        let hinv = inverse(&self.h).expect("H is invertible");
        &(&hinv * &self.a.adjoint()) * &self.h
    }

    /// Pair after the change of basis `x = T·y`: `(T⁻¹AT, T*HT)`.
    pub fn conjugate(&self, t: &Matrix) -> Result<HPair> {
        let tinv = inverse(t)?;
        HPair::new(&(&tinv * &self.a) * t, &(&t.adjoint() * &self.h) * t)
    }
}

/// `D = A*HA − H` for a pair.
pub fn defect(p: &HPair) -> Matrix {
    p.defect()
}

pub fn classify(p: &HPair) -> Classification {
    p.classify()
}

pub fn h_adjoint(p: &HPair) -> Matrix {
    p.h_adjoint()
}

/// `∩_{j=0}^{n-1} ker(D·Aʲ)`, the kernel of the observability matrix
/// `[D; DA; …; DA^{n−1}]`.
///
/// The row space of that matrix is built incrementally: `R` holds a reduced
/// basis of the rows of `D, DA, …, DAᵏ`, and the loop stops once `R·A` adds
/// no new rows, at which point the span is A-closed and contains every
/// `DAʲ`.
pub fn unobservable_subspace(d: &Matrix, a: &Matrix) -> Result<Subspace> {
    if !a.is_square() || d.cols() != a.rows() {
        return Err(Error::dim(
            "unobservable_subspace",
            format!("D is {}x{}, A is {}x{}", d.rows(), d.cols(), a.rows(), a.cols()),
        ));
    }
    let n = a.rows();
    let leading = |r: &crate::elim::Rref| r.reduced.submatrix(0..r.rank, 0..n);
    let mut basis = leading(&rref(d));
    for _ in 1..n {
        if basis.rows() == 0 || basis.rows() == n {
            break;
        }
        let next = rref(&Matrix::vstack(n, &[&basis, &(&basis * a)])?);
        if next.rank == basis.rows() {
            break;
        }
        basis = leading(&next);
    }
    Subspace::span(&kernel(&basis), n)
}

/// True iff the pair `(D, A)` has trivial unobservable subspace.
pub fn is_observable(d: &Matrix, a: &Matrix) -> Result<bool> {
    Ok(unobservable_subspace(d, a)?.is_zero())
}
