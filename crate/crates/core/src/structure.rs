//! The four-space decomposition `ℂⁿ = M ∔ M₁ ∔ M₂ ∔ M₃` of an H-expansive
//! pair and the identities it satisfies.
//!
//! With `D = A*HA − H`, `N` the unobservable subspace of `(D, A)` and
//! `M = N ∩ (HN)^⊥`, a complement `M₁` of `M` in `N` is H-nondegenerate.
//! A neutral partner `M₂` is paired with `M` by an identity Gram matrix and
//! kept H-orthogonal to `M₁`, and `M₃` is the H-orthogonal companion of the
//! first three. In the basis `S = [P | Q | Y | R]` adapted to these spaces:
//!
//! ```text
//!         ┌ A11  A12  A13  A14 ┐          ┌ 0   0    I   0   ┐
//! S⁻¹AS = │ 0    A22  A23  0   │   S*HS = │ 0   H22  0   0   │
//!         │ 0    0    A33  0   │          │ I   0    0   0   │
//!         └ 0    0    A43  A44 ┘          └ 0   0    0   H44 ┘
//! ```
//!
//! with `A33 = A11⁻*`, `A23 = −H22⁻¹A22⁻*A12*A11⁻*`, `A22` H22-unitary and
//! `A44` H44-expansive. The defect `S*DS` vanishes outside the trailing
//! 2×2 block grid, whose entries are given by closed formulas, and the
//! reduced pair on that grid is observable. [`verify`] checks every one of
//! these identities for an arbitrary candidate `S`.

use std::fmt::Write as _;

use crate::elim::{inverse, is_invertible};
use crate::error::{Error, Result};
use crate::inertia::is_psd;
use crate::krein::{unobservable_subspace, HPair};
use crate::matrix::Matrix;
use crate::scalar::{GaussianRational, Rational};
use crate::subspace::{ComplementOrder, Subspace};

/// Block sizes `(m, m₁, m₂, m₃)`; a theorem decomposition has `m₂ = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Dims {
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    pub m3: usize,
}

impl Dims {
    pub fn new(m: usize, m1: usize, m2: usize, m3: usize) -> Self {
        Dims { m, m1, m2, m3 }
    }

    pub fn sizes(&self) -> [usize; 4] {
        [self.m, self.m1, self.m2, self.m3]
    }

    pub fn n(&self) -> usize {
        self.m + self.m1 + self.m2 + self.m3
    }
}

impl std::fmt::Display for Dims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.m, self.m1, self.m2, self.m3)
    }
}

/// A 4×4 block partition. Indices are 1-based to match `A_ij` naming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    sizes: [usize; 4],
    blocks: Vec<Matrix>,
}

impl Blocks {
    pub fn partition(m: &Matrix, sizes: [usize; 4]) -> Blocks {
        let mut offs = [0usize; 5];
        for k in 0..4 {
            offs[k + 1] = offs[k] + sizes[k];
        }
        assert_eq!(m.shape(), (offs[4], offs[4]), "partition does not match matrix size");
        let mut blocks = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                blocks.push(m.submatrix(offs[i]..offs[i + 1], offs[j]..offs[j + 1]));
            }
        }
        Blocks { sizes, blocks }
    }

    pub fn get(&self, i: usize, j: usize) -> &Matrix {
        assert!((1..=4).contains(&i) && (1..=4).contains(&j), "block index out of range");
        &self.blocks[(i - 1) * 4 + (j - 1)]
    }

    pub fn sizes(&self) -> [usize; 4] {
        self.sizes
    }

    /// Full-size matrix holding only the listed blocks.
    fn masked(&self, which: &[(usize, usize)]) -> Matrix {
        let grid: Vec<Vec<Option<&Matrix>>> = (1..=4)
            .map(|i| {
                (1..=4)
                    .map(|j| which.contains(&(i, j)).then(|| self.get(i, j)))
                    .collect()
            })
            .collect();
        Matrix::from_blocks(&self.sizes, &self.sizes, &grid).expect("block shapes come from a partition")
    }

    fn all_zero(&self, which: &[(usize, usize)]) -> bool {
        which.iter().all(|&(i, j)| self.get(i, j).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Discrepancy matrix; present exactly when the check fails.
    pub witness: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, name: &str, pass: bool, witness: impl FnOnce() -> Matrix) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            witness: (!pass).then(witness),
        });
    }

    /// Passes iff `residual` is zero; the residual is the witness.
    fn zero(&mut self, name: &str, residual: Matrix) {
        let pass = residual.is_zero();
        self.push(name, pass, || residual);
    }

    /// Like [`Self::zero`], but fails with `fallback` as witness when the
    /// residual could not be formed (a needed inverse does not exist).
    fn zero_or(&mut self, name: &str, residual: Option<Matrix>, fallback: &Matrix) {
        match residual {
            Some(r) => self.zero(name, r),
            None => self.push(name, false, || fallback.clone()),
        }
    }

    fn into_result(self) -> Result<Self> {
        if self.all_pass() {
            Ok(self)
        } else {
            Err(Error::TheoremViolation {
                failed: self.failed().into_iter().map(String::from).collect(),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub s: Matrix,
    pub dims: Dims,
    /// `S⁻¹AS`, `S*HS` and `S*DS`.
    pub a_transformed: Matrix,
    pub h_transformed: Matrix,
    pub d_transformed: Matrix,
    pub a_blocks: Blocks,
    pub h22: Matrix,
    pub h44: Matrix,
    pub d11: Matrix,
    pub d12: Matrix,
    pub d22: Matrix,
    pub unobservable: Subspace,
    pub neutral_core: Subspace,
    pub complement: Subspace,
    pub partner: Subspace,
    pub remainder: Subspace,
    pub report: VerificationReport,
}

impl Decomposition {
    pub fn a(&self, i: usize, j: usize) -> &Matrix {
        self.a_blocks.get(i, j)
    }
}

/// The center pair `(A₂₂, H₂₂)` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitaryCompression {
    pub a22: Matrix,
    pub h22: Matrix,
    /// `A₁₂ = 0`, i.e. the compression space is A-invariant.
    pub is_unitary_part: bool,
}

pub fn unitary_compression(d: &Decomposition) -> UnitaryCompression {
    UnitaryCompression {
        a22: d.a(2, 2).clone(),
        h22: d.h22.clone(),
        is_unitary_part: d.a(1, 2).is_zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfadjointDecomposition {
    pub s: Matrix,
    pub dims: Dims,
    pub a_transformed: Matrix,
    pub h_transformed: Matrix,
    pub a_blocks: Blocks,
    pub h22: Matrix,
    pub h44: Matrix,
    pub report: VerificationReport,
}

/// `M = N ∩ (HN)^⊥`, the H-isotropic part of `N`.
pub fn neutral_core(n: &Subspace, h: &Matrix) -> Result<Subspace> {
    n.intersect(&n.h_companion(h)?)
}

/// Basis `Y` of a neutral partner for `M` with `P*HY = I`, `Y*HY = 0` and
/// `Q*HY = 0`, where `P`, `Q` are the bases of `M`, `M₁`.
///
/// `Y₀` solves the pairing system inside `ker(Q*H)` with free variables set
/// to zero; `Y = Y₀ − ½·P·(Y₀*HY₀)` then removes the self-pairing.
pub fn skew_link(m: &Subspace, m1: &Subspace, h: &Matrix) -> Result<Matrix> {
    let n = m.ambient();
    if m1.ambient() != n {
        return Err(Error::dim("skew_link", format!("ambient {} vs {}", n, m1.ambient())));
    }
    if !m.is_h_neutral(h)? {
        return Err(Error::Precondition("M is not H-neutral".into()));
    }
    if !m1.is_h_nondegenerate(h)? {
        return Err(Error::Precondition("M1 is not H-nondegenerate".into()));
    }
    if !m.is_h_orthogonal_to(m1, h)? {
        return Err(Error::Precondition("M is not H-orthogonal to M1".into()));
    }
    let p = m.basis();
    let q = m1.basis();
    if p.cols() == 0 {
        return Ok(Matrix::zeros(n, 0));
    }
    let w = crate::elim::kernel(&(&q.adjoint() * h));
    let pairing = &(&p.adjoint() * h) * &w;
    let z = crate::elim::solve(&pairing, &Matrix::identity(p.cols())).map_err(|e| match e {
        Error::NoSolution => Error::DegenerateConfiguration("pairing system for the neutral partner is unsolvable".into()),
        other => other,
    })?;
    let y0 = &w * &z;
    let g = &(&y0.adjoint() * h) * &y0;
    let half = Rational::new(1, 2).expect("nonzero");
    Ok(&y0 - &(p * &g).scale_rational(&half))
}

struct Transformed {
    a: Matrix,
    h: Matrix,
    d: Matrix,
    ab: Blocks,
    hb: Blocks,
    db: Blocks,
}

fn transform(p: &HPair, s: &Matrix, dims: Dims) -> Result<Transformed> {
    let n = p.n();
    if s.shape() != (n, n) {
        return Err(Error::InvalidTransform(format!("S is {}x{}, expected {n}x{n}", s.rows(), s.cols())));
    }
    if dims.n() != n {
        return Err(Error::Precondition(format!("dims {dims} do not sum to {n}")));
    }
    let sinv = inverse(s).map_err(|_| Error::InvalidTransform("S is singular".into()))?;
    let sa = s.adjoint();
    let a = &(&sinv * p.a()) * s;
    let h = &(&sa * p.h()) * s;
    let d = &(&sa * &p.defect()) * s;
    let sizes = dims.sizes();
    Ok(Transformed {
        ab: Blocks::partition(&a, sizes),
        hb: Blocks::partition(&h, sizes),
        db: Blocks::partition(&d, sizes),
        a,
        h,
        d,
    })
}

fn inv(m: &Matrix) -> Option<Matrix> {
    inverse(m).ok()
}

const H_ZERO: [(usize, usize); 11] = [
    (1, 1),
    (1, 2),
    (1, 4),
    (2, 1),
    (2, 3),
    (2, 4),
    (3, 2),
    (3, 4),
    (4, 1),
    (4, 2),
    (4, 3),
];

const A_ZERO: [(usize, usize); 7] = [(2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (2, 4), (3, 4)];

fn h_pattern_checks(t: &Transformed, r: &mut VerificationReport) {
    let hb = &t.hb;
    r.push("h_zero_blocks", hb.all_zero(&H_ZERO), || hb.masked(&H_ZERO));
    r.zero("h_m2_neutral", hb.get(3, 3).clone());
    let m = hb.get(1, 3).rows();
    let pairing_ok = hb.get(1, 3).is_identity() && hb.get(3, 1).is_identity();
    r.push("h_pairing_identity", pairing_ok, || hb.get(1, 3) - &Matrix::identity(m));
    for (name, blk) in [("h22_hermitian_invertible", hb.get(2, 2)), ("h44_hermitian_invertible", hb.get(4, 4))] {
        r.push(name, blk.is_hermitian() && is_invertible(blk), || blk.clone());
    }
}

fn theorem_checks(t: &Transformed, dims: Dims) -> VerificationReport {
    let mut r = VerificationReport::default();
    h_pattern_checks(t, &mut r);

    let ab = &t.ab;
    let (a11, a12, a13, a14) = (ab.get(1, 1), ab.get(1, 2), ab.get(1, 3), ab.get(1, 4));
    let (a22, a23, a33, a43, a44) = (ab.get(2, 2), ab.get(2, 3), ab.get(3, 3), ab.get(4, 3), ab.get(4, 4));
    let h22 = t.hb.get(2, 2);
    let h44 = t.hb.get(4, 4);

    r.push("a_zero_blocks", ab.all_zero(&A_ZERO), || ab.masked(&A_ZERO));
    let a11_inv = inv(a11);
    r.push("a11_invertible", a11_inv.is_some(), || a11.clone());
    if a33.shape() == (a11.cols(), a11.rows()) {
        r.zero("a33_inverse_adjoint", &(&a33.adjoint() * a11) - &Matrix::identity(a11.rows()));
    } else {
        r.push("a33_inverse_adjoint", false, || a33.clone());
    }

    let a11_inv_adj = a11_inv.as_ref().map(Matrix::adjoint);
    let h22_inv = inv(h22);
    let a23_expected = match (&h22_inv, inv(a22), &a11_inv_adj) {
        (Some(h22i), Some(a22i), Some(a11ia)) => {
            let e = &(&(&(h22i * &a22i.adjoint()) * &a12.adjoint()) * a11ia);
            Some(e.neg())
        }
        _ => None,
    };
    r.zero_or("a23_formula", a23_expected.map(|e| a23 - &e), a23);
    r.zero("a22_h22_unitary", &(&(&a22.adjoint() * h22) * a22) - h22);
    let d22_formula = &(&(&a44.adjoint() * h44) * a44) - h44;
    let expansive = is_psd(&d22_formula).unwrap_or(false);
    r.push("a44_h44_expansive", expansive, || d22_formula.clone());

    let db = &t.db;
    let d_zero: Vec<(usize, usize)> = (1..=4)
        .flat_map(|i| (1..=4).map(move |j| (i, j)))
        .filter(|&(i, j)| i <= 2 || j <= 2)
        .collect();
    r.push("d_zero_rows_cols", db.all_zero(&d_zero), || db.masked(&d_zero));

    let d11 = match (&a11_inv, &a11_inv_adj, &h22_inv) {
        (Some(a11i), Some(a11ia), Some(h22i)) => {
            let t1 = a11i * a13;
            let t2 = t1.adjoint();
            let t3 = &(&(&(a11i * a12) * h22i) * &a12.adjoint()) * a11ia;
            let t4 = &(&a43.adjoint() * h44) * a43;
            Some(&(&(&t1 + &t2) + &t3) + &t4)
        }
        _ => None,
    };
    r.zero_or("d11_formula", d11.map(|f| db.get(3, 3) - &f), db.get(3, 3));
    let d12 = a11_inv.as_ref().map(|a11i| &(a11i * a14) + &(&(&a43.adjoint() * h44) * a44));
    r.zero_or("d12_formula", d12.map(|f| db.get(3, 4) - &f), db.get(3, 4));
    r.zero("d22_formula", db.get(4, 4) - &d22_formula);
    r.push("d_psd", is_psd(&t.d).unwrap_or(false), || t.d.clone());

    let k = dims.m2 + dims.m3;
    let off = dims.m + dims.m1;
    let d_red = t.d.submatrix(off..off + k, off..off + k);
    let a_red = t.a.submatrix(off..off + k, off..off + k);
    let unobs = unobservable_subspace(&d_red, &a_red).expect("square blocks");
    r.push("reduced_pair_observable", unobs.is_zero(), || unobs.basis().clone());
    let full = unobservable_subspace(&t.d, &t.a).expect("square matrices");
    r.push("unobservable_dimension", full.dim() == dims.m + dims.m1, || full.basis().clone());
    r
}

/// Re-derives `S⁻¹AS`, `S*HS`, `S*DS` for the candidate `S` and checks every
/// structural identity of the decomposition, one named check each.
pub fn verify(p: &HPair, s: &Matrix, dims: Dims) -> Result<VerificationReport> {
    if dims.m2 != dims.m {
        return Err(Error::Precondition(format!("dims {dims} need m2 = m")));
    }
    let t = transform(p, s, dims)?;
    Ok(theorem_checks(&t, dims))
}

pub fn decompose(p: &HPair) -> Result<Decomposition> {
    decompose_with(p, ComplementOrder::Canonical)
}

/// Runs the full pipeline with the given rule for choosing `M₁`. Every
/// identity is verified before returning; a failure is a
/// [`Error::TheoremViolation`].
pub fn decompose_with(p: &HPair, order: ComplementOrder) -> Result<Decomposition> {
    let class = p.classify();
    if !class.expansive {
        return Err(Error::NotExpansive {
            inertia: class.defect_inertia,
        });
    }
    let n = p.n();
    let h = p.h();
    let defect = p.defect();
    let unobservable = unobservable_subspace(&defect, p.a())?;
    let core = neutral_core(&unobservable, h)?;
    let complement = core.extend_complement(&unobservable, order)?;
    let y = skew_link(&core, &complement, h)?;
    let pqy = Matrix::hstack(n, &[core.basis(), complement.basis(), &y])?;
    let remainder = Subspace::span(&pqy, n)?.h_companion(h)?;
    let s = Matrix::hstack(n, &[&pqy, remainder.basis()])?;
    let dims = Dims::new(core.dim(), complement.dim(), y.cols(), remainder.dim());

    let t = transform(p, &s, dims)?;
    let report = theorem_checks(&t, dims).into_result()?;
    let partner = Subspace::span(&y, n)?;
    Ok(Decomposition {
        h22: t.hb.get(2, 2).clone(),
        h44: t.hb.get(4, 4).clone(),
        d11: t.db.get(3, 3).clone(),
        d12: t.db.get(3, 4).clone(),
        d22: t.db.get(4, 4).clone(),
        a_blocks: t.ab,
        a_transformed: t.a,
        h_transformed: t.h,
        d_transformed: t.d,
        s,
        dims,
        unobservable,
        neutral_core: core,
        complement,
        partner,
        remainder,
        report,
    })
}

fn selfadjoint_checks(t: &Transformed) -> VerificationReport {
    let mut r = VerificationReport::default();
    h_pattern_checks(t, &mut r);
    let ab = &t.ab;
    let (a11, a12, a14) = (ab.get(1, 1), ab.get(1, 2), ab.get(1, 4));
    let (a22, a23, a33, a43, a44) = (ab.get(2, 2), ab.get(2, 3), ab.get(3, 3), ab.get(4, 3), ab.get(4, 4));
    let h22 = t.hb.get(2, 2);
    let h44 = t.hb.get(4, 4);

    r.push("a_zero_blocks", ab.all_zero(&A_ZERO), || ab.masked(&A_ZERO));
    r.zero("a33_adjoint", a33 - &a11.adjoint());
    let a23_expected = inv(h22).map(|hi| &hi * &a12.adjoint());
    r.zero_or("a23_formula", a23_expected.map(|e| a23 - &e), a23);
    let a43_expected = inv(h44).map(|hi| &hi * &a14.adjoint());
    r.zero_or("a43_formula", a43_expected.map(|e| a43 - &e), a43);
    let g22 = h22 * a22;
    r.zero("a22_h22_selfadjoint", &g22 - &g22.adjoint());
    let g44 = h44 * a44;
    r.zero("a44_h44_selfadjoint", &g44 - &g44.adjoint());
    r
}

/// The same space decomposition for an H-selfadjoint `A` and a
/// caller-supplied A-invariant subspace `N`.
pub fn selfadjoint_decompose(p: &HPair, n_sub: &Subspace) -> Result<SelfadjointDecomposition> {
    let n = p.n();
    if n_sub.ambient() != n {
        return Err(Error::dim("selfadjoint_decompose", format!("N lives in dimension {}, pair in {n}", n_sub.ambient())));
    }
    if !p.classify().selfadjoint {
        return Err(Error::Precondition("A is not H-selfadjoint".into()));
    }
    if !n_sub.contains(&n_sub.image(p.a())?)? {
        return Err(Error::Precondition("N is not A-invariant".into()));
    }
    let h = p.h();
    let core = neutral_core(n_sub, h)?;
    let complement = core.extend_complement(n_sub, ComplementOrder::Canonical)?;
    let y = skew_link(&core, &complement, h)?;
    let pqy = Matrix::hstack(n, &[core.basis(), complement.basis(), &y])?;
    let remainder = Subspace::span(&pqy, n)?.h_companion(h)?;
    let s = Matrix::hstack(n, &[&pqy, remainder.basis()])?;
    let dims = Dims::new(core.dim(), complement.dim(), y.cols(), remainder.dim());
    let t = transform(p, &s, dims)?;
    let report = selfadjoint_checks(&t).into_result()?;
    Ok(SelfadjointDecomposition {
        h22: t.hb.get(2, 2).clone(),
        h44: t.hb.get(4, 4).clone(),
        a_blocks: t.ab,
        a_transformed: t.a,
        h_transformed: t.h,
        s,
        dims,
        report,
    })
}

/// Renders a square matrix with separators between the blocks of `sizes`.
pub fn format_blocked(m: &Matrix, sizes: &[usize]) -> String {
    let cells: Vec<String> = m.entries().iter().map(GaussianRational::to_string).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut cuts = Vec::new();
    let mut acc = 0;
    for &s in sizes.iter().take(sizes.len().saturating_sub(1)) {
        acc += s;
        cuts.push(acc);
    }
    let mut out = String::new();
    let line_len = m.cols() * (width + 1) + 2 * cuts.len() + 1;
    for i in 0..m.rows() {
        if i > 0 && cuts.contains(&i) {
            let _ = writeln!(out, "  {}", "-".repeat(line_len));
        }
        out.push_str("  ");
        for j in 0..m.cols() {
            if j > 0 && cuts.contains(&j) {
                out.push_str(" |");
            }
            let _ = write!(out, " {:>width$}", cells[i * m.cols() + j]);
        }
        out.push('\n');
    }
    if m.rows() == 0 {
        out.push_str("  (empty)\n");
    }
    out
}
