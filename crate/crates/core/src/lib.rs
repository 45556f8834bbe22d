//! Exact structure decomposition of H-expansive matrices.
//!
//! Everything runs over the Gaussian rationals, so every identity is
//! checked with zero tolerance. The pipeline:
//!
//! 1. [`krein::HPair`] validates `(A, H)`; [`krein::HPair::defect`] gives
//!    `D = A*HA − H`.
//! 2. [`krein::unobservable_subspace`] finds `N`, the largest A-invariant
//!    subspace of `ker D`.
//! 3. [`structure::decompose`] splits `ℂⁿ = M ∔ M₁ ∔ M₂ ∔ M₃` and returns the
//!    block form, whose center `(A₂₂, H₂₂)` is the largest unitary
//!    compression of the pair.
//! 4. [`structure::verify`] re-checks every identity for any candidate basis.

pub mod corpus;
pub mod elim;
pub mod error;
pub mod inertia;
pub mod interchange;
pub mod krein;
pub mod matrix;
pub mod oracle;
pub mod rng;
pub mod scalar;
pub mod structure;
pub mod subspace;

pub use elim::{determinant, inverse, kernel, rank, rref, solve, Rref};
pub use error::{Error, Result};
pub use inertia::{hermitian_inertia, is_psd, Inertia};
pub use krein::{classify, defect, h_adjoint, is_observable, unobservable_subspace, Classification, HPair};
pub use matrix::{mat_arith, MatOp, Matrix};
pub use scalar::{GaussianRational, Rational};
pub use structure::{
    decompose, decompose_with, neutral_core, selfadjoint_decompose, skew_link, unitary_compression, verify,
    Blocks, Check, Decomposition, Dims, SelfadjointDecomposition, UnitaryCompression, VerificationReport,
};
pub use subspace::{predicate, ComplementOrder, Subspace, SubspacePredicate};

/// `rat_make`: canonical rational from numerator and denominator.
pub fn rat_make(num: i64, den: i64) -> Result<Rational> {
    Rational::new(num, den)
}
