//! Subspaces of ℂⁿ in canonical form, with the lattice operations and the
//! indefinite-inner-product predicates the decomposition needs.

use crate::elim::{is_invertible, kernel, rank, rref};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rng::CounterRng;

/// A subspace stored by its reduced column-echelon basis, so equal
/// subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

/// How [`Subspace::extend_complement`] orders the candidate vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ComplementOrder {
    /// Canonical basis columns of the larger space, left to right.
    #[default]
    Canonical,
    /// Columns of a seeded random invertible recombination of the canonical
    /// basis, so different seeds reach different complements.
    Seeded(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspacePredicate {
    HNeutral,
    HNondegenerate,
    HOrthogonalPair,
    Contains,
    Equals,
}

impl Subspace {
    /// Span of the columns of `vectors`, which must have `n` rows.
    pub fn span(vectors: &Matrix, n: usize) -> Result<Subspace> {
        if vectors.rows() != n {
            return Err(Error::dim("span", format!("vectors have {} rows, ambient is {n}", vectors.rows())));
        }
        let r = rref(&vectors.transpose());
        let basis = r.reduced.submatrix(0..r.rank, 0..n).transpose();
        Ok(Subspace { ambient: n, basis })
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Matrix::zeros(n, 0),
        }
    }

    pub fn whole(n: usize) -> Subspace {
        Subspace {
            ambient: n,
            basis: Matrix::identity(n),
        }
    }

    /// Span of the standard unit vectors with the given 0-based indices.
    pub fn coordinate(n: usize, indices: &[usize]) -> Subspace {
        let m = Matrix::identity(n).select_columns(indices);
        Subspace::span(&m, n).expect("row count matches")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Subspace, op: &'static str) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dim(op, format!("ambient {} vs {}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "sum")?;
        let joined = Matrix::hstack(self.ambient, &[&self.basis, &other.basis])?;
        Subspace::span(&joined, self.ambient)
    }

    /// Intersection via the kernel of `[U | −V]`, mapped back through `U`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other, "intersect")?;
        let joined = Matrix::hstack(self.ambient, &[&self.basis, &other.basis.neg()])?;
        let k = kernel(&joined);
        let coeffs = k.submatrix(0..self.dim(), 0..k.cols());
        Subspace::span(&(&self.basis * &coeffs), self.ambient)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other, "contains")?;
        Ok(self.sum(other)?.dim() == self.dim())
    }

    /// `{x : u*Hx = 0 for all u in self}`, the kernel of `U*·H`.
    pub fn h_companion(&self, h: &Matrix) -> Result<Subspace> {
        check_inner_product(h, self.ambient)?;
        let g = &self.basis.adjoint() * h;
        Subspace::span(&kernel(&g), self.ambient)
    }

    /// A subspace `C` with `self ∔ C = w`, built by greedily keeping the
    /// candidate columns of `w` that raise the rank of `[self | kept]`.
    pub fn extend_complement(&self, w: &Subspace, order: ComplementOrder) -> Result<Subspace> {
        self.check_ambient(w, "extend_complement")?;
        if !w.contains(self)? {
            return Err(Error::Containment("first subspace is not contained in the second".into()));
        }
        let candidates = match order {
            ComplementOrder::Canonical => w.basis.clone(),
            ComplementOrder::Seeded(seed) => {
                let t = CounterRng::new(seed).invertible_integer_matrix(w.dim(), 3);
                &w.basis * &t
            }
        };
        let mut current = self.basis.clone();
        let mut kept = Vec::new();
        let mut r = self.dim();
        for j in 0..candidates.cols() {
            if r == w.dim() {
                break;
            }
            let col = candidates.column(j);
            let trial = Matrix::hstack(self.ambient, &[&current, &col])?;
            let tr = rank(&trial);
            if tr > r {
                r = tr;
                current = trial;
                kept.push(j);
            }
        }
        Subspace::span(&candidates.select_columns(&kept), self.ambient)
    }

    /// Gram matrix `U*·H·U` of this subspace's basis.
    pub fn gram(&self, h: &Matrix) -> Matrix {
        &(&self.basis.adjoint() * h) * &self.basis
    }

    pub fn is_h_neutral(&self, h: &Matrix) -> Result<bool> {
        check_inner_product(h, self.ambient)?;
        Ok(self.gram(h).is_zero())
    }

    pub fn is_h_nondegenerate(&self, h: &Matrix) -> Result<bool> {
        check_inner_product(h, self.ambient)?;
        Ok(is_invertible(&self.gram(h)))
    }

    pub fn is_h_orthogonal_to(&self, other: &Subspace, h: &Matrix) -> Result<bool> {
        self.check_ambient(other, "h_orthogonal")?;
        check_inner_product(h, self.ambient)?;
        Ok((&(&self.basis.adjoint() * h) * &other.basis).is_zero())
    }

    /// Image `T·self`.
    pub fn image(&self, t: &Matrix) -> Result<Subspace> {
        if t.cols() != self.ambient {
            return Err(Error::dim("image", format!("{}x{} applied in ambient {}", t.rows(), t.cols(), self.ambient)));
        }
        Subspace::span(&(t * &self.basis), t.rows())
    }
}

/// Evaluates one of the named subspace predicates. `v` is required for the
/// pairwise predicates.
pub fn predicate(u: &Subspace, v: Option<&Subspace>, h: &Matrix, which: SubspacePredicate) -> Result<bool> {
    let need_v = || v.ok_or_else(|| Error::Precondition("predicate needs a second subspace".into()));
    match which {
        SubspacePredicate::HNeutral => u.is_h_neutral(h),
        SubspacePredicate::HNondegenerate => u.is_h_nondegenerate(h),
        SubspacePredicate::HOrthogonalPair => u.is_h_orthogonal_to(need_v()?, h),
        SubspacePredicate::Contains => u.contains(need_v()?),
        SubspacePredicate::Equals => {
            let v = need_v()?;
            u.check_ambient(v, "equals")?;
            Ok(u == v)
        }
    }
}

/// H must be `n×n`, Hermitian and invertible.
pub(crate) fn check_inner_product(h: &Matrix, n: usize) -> Result<()> {
    if h.shape() != (n, n) {
        return Err(Error::InvalidInnerProduct(format!("H is {}x{}, ambient is {n}", h.rows(), h.cols())));
    }
    if !h.is_hermitian() {
        return Err(Error::InvalidInnerProduct("H is not Hermitian".into()));
    }
    if !is_invertible(h) {
        return Err(Error::InvalidInnerProduct("H is singular".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1_h() -> Matrix {
        Matrix::from_ints(&[
            [0, 0, 0, 0, 1],
            [0, 0, 0, -1, -1],
            [0, 0, 1, 2, 2],
            [0, -1, 2, 4, 6],
            [1, -1, 2, 6, 2],
        ])
    }

    #[test]
    fn span_is_canonical() {
        let v = Matrix::from_ints(&[[0, 0], [1, 2], [0, 0]]);
        assert_eq!(Subspace::span(&v, 3).unwrap(), Subspace::coordinate(3, &[1]));
        assert!(Subspace::span(&Matrix::zeros(3, 0), 3).unwrap().is_zero());
        let n = Subspace::span(&Matrix::identity(5).select_columns(&[2, 0, 1]), 5).unwrap();
        assert_eq!(n.basis(), &Matrix::identity(5).select_columns(&[0, 1, 2]));
    }

    #[test]
    fn lattice_ops() {
        let u = Subspace::coordinate(3, &[0, 1]);
        let v = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(u.intersect(&v).unwrap(), Subspace::coordinate(3, &[1]));
        let a = Subspace::coordinate(3, &[0]);
        let b = Subspace::coordinate(3, &[1]);
        assert_eq!(a.sum(&b).unwrap(), u);
        assert!(matches!(u.sum(&Subspace::zero(4)), Err(Error::Dimension { .. })));
    }

    #[test]
    fn example_one_neutral_core() {
        let h = ex1_h();
        let n = Subspace::coordinate(5, &[0, 1, 2]);
        let m = n.intersect(&n.h_companion(&h).unwrap()).unwrap();
        assert_eq!(m, Subspace::coordinate(5, &[0, 1]));
    }

    #[test]
    fn companion_extremes() {
        let h = Matrix::from_ints(&[[0, 1], [1, 0]]);
        assert_eq!(Subspace::zero(2).h_companion(&h).unwrap(), Subspace::whole(2));
        assert_eq!(Subspace::whole(2).h_companion(&h).unwrap(), Subspace::zero(2));
        let e1 = Subspace::coordinate(2, &[0]);
        assert_eq!(e1.h_companion(&h).unwrap(), e1);
        let singular = Matrix::from_ints(&[[1, 0], [0, 0]]);
        assert!(matches!(e1.h_companion(&singular), Err(Error::InvalidInnerProduct(_))));
        let skew = Matrix::from_ints(&[[0, 1], [-1, 0]]);
        assert!(matches!(e1.h_companion(&skew), Err(Error::InvalidInnerProduct(_))));
    }

    #[test]
    fn complement_cases() {
        let w = Subspace::coordinate(5, &[0, 1, 2]);
        let u = Subspace::coordinate(5, &[0, 1]);
        assert_eq!(u.extend_complement(&w, ComplementOrder::Canonical).unwrap(), Subspace::coordinate(5, &[2]));
        assert!(w.extend_complement(&w, ComplementOrder::Canonical).unwrap().is_zero());
        assert_eq!(Subspace::zero(5).extend_complement(&w, ComplementOrder::Canonical).unwrap(), w);
        assert!(matches!(
            w.extend_complement(&u, ComplementOrder::Canonical),
            Err(Error::Containment(_))
        ));
    }

    #[test]
    fn named_predicates() {
        let h = Matrix::from_ints(&[[0, 1], [1, 0]]);
        let e1 = Subspace::coordinate(2, &[0]);
        assert!(predicate(&e1, None, &h, SubspacePredicate::HNeutral).unwrap());

        let h1 = ex1_h();
        let e3 = Subspace::coordinate(5, &[2]);
        assert!(predicate(&e3, None, &h1, SubspacePredicate::HNondegenerate).unwrap());
        let x = Matrix::from_ints(&[[3, 0], [-2, 0], [0, 2], [-1, -1], [1, 0]]);
        let m2 = Subspace::span(&x, 5).unwrap();
        assert!(predicate(&m2, Some(&e3), &h1, SubspacePredicate::HOrthogonalPair).unwrap());
        assert!(predicate(&e1, None, &h, SubspacePredicate::Contains).is_err());
        assert!(predicate(&Subspace::whole(2), Some(&e1), &h, SubspacePredicate::Contains).unwrap());
    }

    #[test]
    fn seeded_complement_is_valid() {
        let w = Subspace::whole(4);
        let u = Subspace::coordinate(4, &[0]);
        for seed in 0..20 {
            let c = u.extend_complement(&w, ComplementOrder::Seeded(seed)).unwrap();
            assert_eq!(c.dim(), 3);
            assert!(u.intersect(&c).unwrap().is_zero());
        }
    }
}
