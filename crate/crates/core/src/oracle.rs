//! Seeded generation of H-expansive pairs with a planted decomposition.
//!
//! Pairs are assembled directly in block form (the theorem's coordinates)
//! and then scrambled by a random integer change of basis, so the true
//! transform and block sizes are known exactly.

use crate::elim::{inverse, is_invertible};
use crate::error::{Error, Result};
use crate::krein::{is_observable, HPair};
use crate::matrix::Matrix;
use crate::rng::CounterRng;
use crate::scalar::{GaussianRational, Rational};
use crate::structure::{decompose, verify, Dims, VerificationReport};
use crate::subspace::{check_inner_product, Subspace};

const MAX_ATTEMPTS: u64 = 64;
const SCRAMBLE_BOUND: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlantSpec {
    pub m: usize,
    pub m1: usize,
    pub m3: usize,
    /// Bound on numerators and denominators of random entries.
    pub entry_bound: i64,
    pub seed: u64,
}

impl PlantSpec {
    pub fn new(m: usize, m1: usize, m3: usize, seed: u64) -> Self {
        PlantSpec {
            m,
            m1,
            m3,
            entry_bound: 3,
            seed,
        }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.entry_bound = bound;
        self
    }

    pub fn n(&self) -> usize {
        2 * self.m + self.m1 + self.m3
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.m, self.m1, self.m, self.m3)
    }

    fn validate(&self) -> Result<()> {
        if self.entry_bound < 1 {
            return Err(Error::Precondition("entry bound must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedPair {
    pub pair: HPair,
    pub dims: Dims,
    /// Basis in which the pair takes its planted block form.
    pub s_true: Matrix,
}

/// Cayley transform `U = (I − K)(I + K)⁻¹` of `K = H⁻¹W`. For
/// skew-Hermitian `W`, `K` is H-skewadjoint and `U*HU = H`.
pub fn cayley_h_unitary(h: &Matrix, w: &Matrix) -> Result<Matrix> {
    check_inner_product(h, h.rows())?;
    if w.shape() != h.shape() {
        return Err(Error::dim("cayley_h_unitary", "W and H differ in shape"));
    }
    if w.adjoint() != w.neg() {
        return Err(Error::Precondition("W is not skew-Hermitian".into()));
    }
    let n = h.rows();
    let k = &inverse(h)? * w;
    let id = Matrix::identity(n);
    let plus = inverse(&(&id + &k)).map_err(|_| Error::CayleySingular)?;
    Ok(&(&id - &k) * &plus)
}

fn half() -> Rational {
    Rational::new(1, 2).expect("nonzero")
}

/// Builds a pair whose decomposition has block sizes `(m, m₁, m, m₃)`.
///
/// In block coordinates: `H₂₂` random Hermitian invertible, `H₄₄ = B*B + I`,
/// `A₂₂` a Cayley transform, `A₄₄ = 2·U` with `U` H₄₄-unitary (so
/// `D₂₂ = 3H₄₄ ≻ 0`), and `A₁₃`, `A₁₄` solved from the defect formulas so
/// that the Schur complement of `D₂₂` is `C*C + εI`. Samples whose reduced
/// pair is unobservable are discarded.
pub fn plant(spec: PlantSpec) -> Result<PlantedPair> {
    spec.validate()?;
    let base = CounterRng::new(spec.seed);
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = base.split(attempt);
        if let Some(p) = try_plant(&spec, &mut rng) {
            return Ok(p);
        }
    }
    Err(Error::GenerationFailure {
        seed: spec.seed,
        attempts: MAX_ATTEMPTS as usize,
    })
}

fn try_plant(spec: &PlantSpec, rng: &mut CounterRng) -> Option<PlantedPair> {
    let (m, m1, m3, b) = (spec.m, spec.m1, spec.m3, spec.entry_bound);
    let h22 = rng.hermitian(m1, b);
    if !is_invertible(&h22) {
        return None;
    }
    let bm = rng.matrix(m3, m3, b);
    let h44 = &(&bm.adjoint() * &bm) + &Matrix::identity(m3);
    let a11 = rng.matrix(m, m, b);
    let a11_inv = inverse(&a11).ok()?;
    let a11_inv_adj = a11_inv.adjoint();
    let a12 = rng.matrix(m, m1, b);
    let a43 = rng.matrix(m3, m, b);
    let a22 = cayley_h_unitary(&h22, &rng.skew_hermitian(m1, b)).ok()?;
    let a44 = cayley_h_unitary(&h44, &rng.skew_hermitian(m3, b))
        .ok()?
        .scale(&GaussianRational::from_int(2));

    let h22_inv = inverse(&h22).ok()?;
    let a22_inv = inverse(&a22).ok()?;
    let a33 = a11_inv_adj.clone();
    let a23 = (&(&(&h22_inv * &a22_inv.adjoint()) * &a12.adjoint()) * &a11_inv_adj).neg();

    let d22 = &(&(&a44.adjoint() * &h44) * &a44) - &h44;
    let d12 = rng.matrix(m, m3, b);
    let a14 = &a11 * &(&d12 - &(&(&a43.adjoint() * &h44) * &a44));

    let r = rng.range(0, m as i64) as usize;
    let c = rng.matrix(r, m, b);
    let eps = if rng.coin() { 1 } else { 0 };
    let schur = &(&c.adjoint() * &c) + &Matrix::identity(m).scale(&GaussianRational::from_int(eps));
    let d22_inv = inverse(&d22).ok()?;
    let d11 = &(&(&d12 * &d22_inv) * &d12.adjoint()) + &schur;

    let known = &(&(&(&(&a11_inv * &a12) * &h22_inv) * &a12.adjoint()) * &a11_inv_adj)
        + &(&(&a43.adjoint() * &h44) * &a43);
    let target = &d11 - &known;
    let x = &target.scale_rational(&half()) + &rng.skew_hermitian(m, b);
    let a13 = &a11 * &x;

    let d_red = Matrix::from_blocks(&[m, m3], &[m, m3], &[vec![Some(&d11), Some(&d12)], vec![Some(&d12.adjoint()), Some(&d22)]]).ok()?;
    let a_red = Matrix::from_blocks(&[m, m3], &[m, m3], &[vec![Some(&a33), None], vec![Some(&a43), Some(&a44)]]).ok()?;
    if !is_observable(&d_red, &a_red).ok()? {
        return None;
    }

    let sizes = [m, m1, m, m3];
    let a_t = Matrix::from_blocks(
        &sizes,
        &sizes,
        &[
            vec![Some(&a11), Some(&a12), Some(&a13), Some(&a14)],
            vec![None, Some(&a22), Some(&a23), None],
            vec![None, None, Some(&a33), None],
            vec![None, None, Some(&a43), Some(&a44)],
        ],
    )
    .ok()?;
    let id = Matrix::identity(m);
    let h_t = Matrix::from_blocks(
        &sizes,
        &sizes,
        &[
            vec![None, None, Some(&id), None],
            vec![None, Some(&h22), None, None],
            vec![Some(&id), None, None, None],
            vec![None, None, None, Some(&h44)],
        ],
    )
    .ok()?;

    let (pair, s_true) = scramble(&a_t, &h_t, rng)?;
    debug_assert!(pair.classify().expansive);
    Some(PlantedPair {
        pair,
        dims: spec.dims(),
        s_true,
    })
}

/// `A = T⁻¹ÃT`, `H = T*H̃T` for a random integer `T`; returns the pair and
/// `T⁻¹`, the basis in which the pair is `(Ã, H̃)` again.
fn scramble(a_t: &Matrix, h_t: &Matrix, rng: &mut CounterRng) -> Option<(HPair, Matrix)> {
    let t = rng.invertible_integer_matrix(a_t.rows(), SCRAMBLE_BOUND);
    let t_inv = inverse(&t).ok()?;
    let a = &(&t_inv * a_t) * &t;
    let h = &(&t.adjoint() * h_t) * &t;
    Some((HPair::new(a, h).ok()?, t_inv))
}

/// Decomposes the planted pair and checks the result against the plant.
///
/// The returned report holds every check of the recovered decomposition plus
/// `dims_match` (recovered dims equal the planted ones) and
/// `planted_transform_verifies` (the planted basis passes `verify`).
pub fn round_trip_check(planted: &PlantedPair) -> Result<VerificationReport> {
    let d = decompose(&planted.pair)?;
    let mut report = d.report.clone();
    let (want, got) = (planted.dims, d.dims);
    report.push("dims_match", want == got, || {
        let row = |x: Dims| x.sizes().map(|k| GaussianRational::from_int(k as i64)).to_vec();
        Matrix::from_rows(vec![row(want), row(got)], 4).expect("two rows of four")
    });
    let truth = verify(&planted.pair, &planted.s_true, planted.dims)?;
    let failed = truth.failed().join(", ");
    report.push("planted_transform_verifies", truth.all_pass(), || {
        debug_assert!(!failed.is_empty());
        Matrix::zeros(0, 0)
    });
    Ok(report)
}

/// An H-selfadjoint pair with a known invariant subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedSelfadjoint {
    pub pair: HPair,
    pub invariant: Subspace,
    pub dims: Dims,
    pub s_true: Matrix,
}

/// Builds an H-selfadjoint pair in the block form
///
/// ```text
/// ┌ A11  A12  A13          A14 ┐
/// │ 0    A22  H22⁻¹A12*    0   │
/// │ 0    0    A11*         0   │
/// └ 0    0    H44⁻¹A14*    A44 ┘
/// ```
///
/// with `A13` Hermitian and `H22·A22`, `H44·A44` Hermitian, scrambles it,
/// and returns the image of the first two coordinate blocks as `N`.
pub fn plant_selfadjoint(spec: PlantSpec) -> Result<PlantedSelfadjoint> {
    spec.validate()?;
    let base = CounterRng::new(spec.seed ^ 0x5e1f_ad01);
    let (m, m1, m3, b) = (spec.m, spec.m1, spec.m3, spec.entry_bound);
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = base.split(attempt);
        let h22 = rng.hermitian(m1, b);
        let h44 = rng.hermitian(m3, b);
        let (Ok(h22_inv), Ok(h44_inv)) = (inverse(&h22), inverse(&h44)) else {
            continue;
        };
        let a11 = rng.matrix(m, m, b);
        let a12 = rng.matrix(m, m1, b);
        let a13 = rng.hermitian(m, b);
        let a14 = rng.matrix(m, m3, b);
        let a22 = &h22_inv * &rng.hermitian(m1, b);
        let a44 = &h44_inv * &rng.hermitian(m3, b);
        let a23 = &h22_inv * &a12.adjoint();
        let a33 = a11.adjoint();
        let a43 = &h44_inv * &a14.adjoint();
        let sizes = [m, m1, m, m3];
        let a_t = Matrix::from_blocks(
            &sizes,
            &sizes,
            &[
                vec![Some(&a11), Some(&a12), Some(&a13), Some(&a14)],
                vec![None, Some(&a22), Some(&a23), None],
                vec![None, None, Some(&a33), None],
                vec![None, None, Some(&a43), Some(&a44)],
            ],
        )?;
        let id = Matrix::identity(m);
        let h_t = Matrix::from_blocks(
            &sizes,
            &sizes,
            &[
                vec![None, None, Some(&id), None],
                vec![None, Some(&h22), None, None],
                vec![Some(&id), None, None, None],
                vec![None, None, None, Some(&h44)],
            ],
        )?;
        let Some((pair, s_true)) = scramble(&a_t, &h_t, &mut rng) else {
            continue;
        };
        let n_cols: Vec<usize> = (0..m + m1).collect();
        let invariant = Subspace::span(&s_true.select_columns(&n_cols), spec.n())?;
        return Ok(PlantedSelfadjoint {
            pair,
            invariant,
            dims: spec.dims(),
            s_true,
        });
    }
    Err(Error::GenerationFailure {
        seed: spec.seed,
        attempts: MAX_ATTEMPTS as usize,
    })
}
