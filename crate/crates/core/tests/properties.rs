mod common;

use common::{charpoly_inertia, grid, naive_mul, naive_rref, to_matrix};
use expansive_core::oracle::{plant, PlantSpec};
use expansive_core::rng::CounterRng;
use expansive_core::{
    decompose, determinant, hermitian_inertia, inverse, is_psd, kernel, rank, rref, skew_link, GaussianRational as Z,
    HPair, Matrix, Subspace,
};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Z> {
    (-4i64..=4, 1i64..=3, prop::bool::weighted(0.3), -3i64..=3).prop_map(|(p, q, cplx, im)| {
        let re = Z::ratio(p, q).unwrap();
        if cplx {
            &re + &(&Z::i() * &Z::from_int(im))
        } else {
            re
        }
    })
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(entry(), r * c).prop_map(move |v| Matrix::from_vec(r, c, v).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(entry(), n * n).prop_map(move |v| Matrix::from_vec(n, n, v).unwrap()))
}

/// Low-rank-biased matrices: products of thin factors.
fn low_rank(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max, 0..=max).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(entry(), r * k), prop::collection::vec(entry(), k * c)).prop_map(move |(a, b)| {
            &Matrix::from_vec(r, k, a).unwrap() * &Matrix::from_vec(k, c, b).unwrap()
        })
    })
}

fn hermitian(max: usize) -> impl Strategy<Value = Matrix> {
    square(max).prop_map(|x| &x + &x.adjoint())
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rref_matches_naive(m in prop_oneof![matrix(5), low_rank(5)]) {
        let r = rref(&m);
        let (g, pivots) = naive_rref(&m);
        prop_assert_eq!(r.reduced, to_matrix(&g, m.cols()));
        prop_assert_eq!(&r.pivots, &pivots);
        prop_assert_eq!(rank(&m), pivots.len());
    }

    #[test]
    fn rref_idempotent(m in prop_oneof![matrix(5), low_rank(5)]) {
        let once = rref(&m).reduced;
        prop_assert_eq!(rref(&once).reduced, once);
    }

    #[test]
    fn rank_nullity(m in prop_oneof![matrix(5), low_rank(5)]) {
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.cols(), m.cols());
        prop_assert_eq!(rank(&k), k.cols());
        let prod = naive_mul(&grid(&m), &grid(&k), m.cols(), k.cols());
        prop_assert!(prod.iter().flatten().all(|z| z.is_zero()));
    }

    #[test]
    fn inverse_and_determinant(m in prop_oneof![square(4), low_rank(4).prop_filter("square", |m| m.is_square())]) {
        let det = determinant(&m).unwrap();
        match inverse(&m) {
            Ok(inv) => {
                prop_assert!(!det.is_zero());
                let p = naive_mul(&grid(&m), &grid(&inv), m.rows(), m.rows());
                prop_assert!(to_matrix(&p, m.rows()).is_identity());
            }
            Err(_) => prop_assert!(det.is_zero()),
        }
    }

    #[test]
    fn inertia_matches_charpoly(m in hermitian(5)) {
        prop_assert_eq!(hermitian_inertia(&m).unwrap(), charpoly_inertia(&m));
    }

    #[test]
    fn inertia_congruence_invariant(m in hermitian(4), s in seed()) {
        let t = CounterRng::new(s).invertible_matrix(m.rows(), 3);
        let c = &(&t.adjoint() * &m) * &t;
        prop_assert_eq!(hermitian_inertia(&c).unwrap(), hermitian_inertia(&m).unwrap());
    }

    #[test]
    fn psd_gram(x in matrix(4)) {
        prop_assert!(is_psd(&(&x.adjoint() * &x)).unwrap());
    }

    #[test]
    fn span_is_canonical(v in low_rank(5), s in seed()) {
        let g = CounterRng::new(s).invertible_matrix(v.cols(), 3);
        let a = Subspace::span(&v, v.rows()).unwrap();
        let b = Subspace::span(&(&v * &g), v.rows()).unwrap();
        prop_assert_eq!(a.dim(), rank(&v));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn modular_law(n in 1usize..=5, s in seed()) {
        let mut r = CounterRng::new(s);
        let sub = |r: &mut CounterRng| {
            let k = r.range(0, n as i64) as usize;
            Subspace::span(&r.matrix(n, k, 2), n).unwrap()
        };
        let u = sub(&mut r);
        let v = sub(&mut r);
        let w = u.sum(&sub(&mut r)).unwrap();
        prop_assert!(w.contains(&u).unwrap());
        let lhs = u.sum(&v.intersect(&w).unwrap()).unwrap();
        let rhs = u.sum(&v).unwrap().intersect(&w).unwrap();
        prop_assert_eq!(lhs, rhs);
        let both = u.intersect(&v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), u.sum(&v).unwrap().dim() + both.dim());
    }

    #[test]
    fn companion_involution(n in 1usize..=5, s in seed()) {
        let mut r = CounterRng::new(s);
        let h = loop {
            let h = r.hermitian(n, 3);
            if determinant(&h).map(|d| !d.is_zero()).unwrap_or(false) {
                break h;
            }
        };
        let k = r.range(0, n as i64) as usize;
        let u = Subspace::span(&r.matrix(n, k, 2), n).unwrap();
        let c = u.h_companion(&h).unwrap();
        prop_assert_eq!(c.dim(), n - u.dim());
        prop_assert_eq!(c.h_companion(&h).unwrap(), u.clone());
        prop_assert!(c.is_h_orthogonal_to(&u, &h).unwrap());
    }

    #[test]
    fn congruence_transport(s in seed()) {
        let mut r = CounterRng::new(s);
        let dims = (r.range(0, 2) as usize, r.range(0, 2) as usize, r.range(0, 2) as usize);
        let p = plant(PlantSpec::new(dims.0, dims.1, dims.2, s)).unwrap().pair;
        let t = r.invertible_matrix(p.n(), 2);
        let q = p.conjugate(&t).unwrap();
        prop_assert_eq!(q.defect(), &(&t.adjoint() * &p.defect()) * &t);
        prop_assert_eq!(q.classify().defect_inertia, p.classify().defect_inertia);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn skew_link_contract(s in seed(), m in 0usize..=2, m1 in 0usize..=2, m3 in 0usize..=2) {
        let p = plant(PlantSpec::new(m, m1, m3, s)).unwrap();
        let d = decompose(&p.pair).unwrap();
        let h = p.pair.h();
        let y = skew_link(&d.neutral_core, &d.complement, h).unwrap();
        let pm = d.neutral_core.basis();
        let q = d.complement.basis();
        prop_assert!((&(&pm.adjoint() * h) * &y).is_identity());
        prop_assert!((&(&y.adjoint() * h) * &y).is_zero());
        prop_assert!((&(&q.adjoint() * h) * &y).is_zero());
    }
}

#[test]
fn charpoly_oracle_sanity() {
    // diag(2, -1, 0, 3): two positive, one negative, one zero.
    let d = Matrix::diag(&[Z::from_int(2), Z::from_int(-1), Z::zero(), Z::from_int(3)]);
    assert_eq!(charpoly_inertia(&d), expansive_core::Inertia::new(2, 1, 1));
    let swap = Matrix::from_ints(&[[0, 1], [1, 0]]);
    assert_eq!(charpoly_inertia(&swap), expansive_core::Inertia::new(1, 1, 0));
}

#[test]
fn conjugate_rejects_singular() {
    let p = HPair::new(Matrix::identity(2), Matrix::identity(2)).unwrap();
    assert!(p.conjugate(&Matrix::zeros(2, 2)).is_err());
}
