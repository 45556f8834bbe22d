//! Acceptance criteria 1-10. Each test writes one status line to stdout
//! (bypassing capture) before asserting.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use common::charpoly_inertia;
use expansive_core::corpus::{example, example5_verbatim};
use expansive_core::oracle::{plant, plant_selfadjoint, PlantSpec};
use expansive_core::rng::CounterRng;
use expansive_core::{
    decompose, hermitian_inertia, inverse, is_psd, neutral_core, selfadjoint_decompose, skew_link,
    unitary_compression, unobservable_subspace, verify, Dims, Error, GaussianRational as Z, HPair, Inertia, Matrix,
    Subspace,
};

fn status(id: u32, title: &str, failures: &[String], elapsed: Duration) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {id:>2} {verdict} {title} ({:.2?})", elapsed);
    if !failures.is_empty() {
        line.push_str(&format!(": {}", failures.join("; ")));
    }
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

struct Tally(Vec<String>);

impl Tally {
    fn new() -> Self {
        Tally(Vec::new())
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.0.push(what.into());
        }
    }

    fn finish(self, id: u32, title: &str, start: Instant) {
        status(id, title, &self.0, start.elapsed());
        assert!(self.0.is_empty(), "criterion {id} failed: {:?}", self.0);
    }
}

fn ints(n: usize) -> impl Fn(&[usize]) -> Subspace {
    move |idx| Subspace::coordinate(n, idx)
}

#[test]
fn criterion_01_example_one() {
    let start = Instant::now();
    let mut t = Tally::new();
    let rec = example(1).unwrap();
    let p = &rec.doc.pair;
    let e = ints(5);

    let d = p.defect();
    let mut expected_d = Matrix::zeros(5, 5);
    expected_d.set_block(3, 3, &Matrix::from_ints(&[[5, 8], [8, 16]]));
    t.check(d == expected_d, "defect");
    let n = unobservable_subspace(&d, p.a()).unwrap();
    t.check(n == e(&[0, 1, 2]), "N");
    t.check(neutral_core(&n, p.h()).unwrap() == e(&[0, 1]), "M");
    match decompose(p) {
        Ok(dec) => {
            t.check(dec.dims == Dims::new(2, 1, 2, 0), format!("dims {}", dec.dims));
            let c = unitary_compression(&dec);
            t.check(c.a22 == Matrix::identity(1) && c.h22 == Matrix::identity(1), "compression");
        }
        Err(err) => t.check(false, format!("decompose: {err}")),
    }
    let s = rec.reference_s.unwrap();
    let report = verify(p, &s, Dims::new(2, 1, 2, 0)).unwrap();
    t.check(report.all_pass(), format!("reference S fails {}", report.failed().join(", ")));
    t.check(start.elapsed() < Duration::from_secs(1), "runtime");
    t.finish(1, "example 1 reproduction", start);
}

#[test]
fn criterion_02_example_two() {
    let start = Instant::now();
    let mut t = Tally::new();
    let rec = example(2).unwrap();
    let p = &rec.doc.pair;
    let e = ints(5);

    let mut diag = Matrix::zeros(5, 5);
    diag[(4, 4)] = Z::from_int(2);
    t.check(p.defect() == diag, "defect");
    let n = unobservable_subspace(&p.defect(), p.a()).unwrap();
    t.check(n == e(&[0, 1, 2, 3]), "N");
    let y = skew_link(&e(&[0]), &e(&[1, 2, 3]), p.h()).unwrap();
    let x = Matrix::from_ratios(&[[(-47, 32)], [(7, 8)], [(1, 4)], [(3, 2)], [(1, 1)]]);
    t.check(y == x, "skew_link vector");
    match decompose(p) {
        Ok(dec) => {
            t.check(dec.dims == Dims::new(1, 3, 1, 0), format!("dims {}", dec.dims));
            t.check(dec.complement == e(&[1, 2, 3]), "deterministic complement");
            let c = unitary_compression(&dec);
            let j3 = Matrix::from_ints(&[[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
            let h22 = Matrix::from_ratios(&[[(0, 1), (0, 1), (-1, 1)], [(0, 1), (1, 1), (-1, 2)], [(-1, 1), (-1, 2), (0, 1)]]);
            t.check(c.a22 == j3 && c.h22 == h22, "compression");
        }
        Err(err) => t.check(false, format!("decompose: {err}")),
    }
    let report = verify(p, &rec.reference_s.unwrap(), Dims::new(1, 3, 1, 0)).unwrap();
    t.check(report.all_pass(), format!("reference S fails {}", report.failed().join(", ")));
    t.check(start.elapsed() < Duration::from_secs(1), "runtime");
    t.finish(2, "example 2 reproduction", start);
}

#[test]
fn criterion_03_example_three() {
    let start = Instant::now();
    let mut t = Tally::new();
    let p = example(3).unwrap().doc.pair;
    t.check(p.classify().unitary, "classified H-unitary");
    let dec = decompose(&p).unwrap();
    t.check(dec.unobservable == Subspace::whole(5), "N");
    t.check(dec.neutral_core.is_zero(), "M");
    let c = unitary_compression(&dec);
    t.check(&c.a22 == p.a() && &c.h22 == p.h(), "compression is the pair");
    t.check(c.is_unitary_part, "is_unitary_part");
    t.finish(3, "example 3 unitary", start);
}

#[test]
fn criterion_04_example_four() {
    let start = Instant::now();
    let mut t = Tally::new();
    let p = example(4).unwrap().doc.pair;
    let mut d = Matrix::zeros(6, 6);
    d[(5, 5)] = Z::from_int(2);
    t.check(p.defect() == d, "defect");
    let dec = decompose(&p).unwrap();
    t.check(dec.dims == Dims::new(1, 4, 1, 0), format!("dims {}", dec.dims));
    let c = unitary_compression(&dec);
    let j2 = Matrix::from_ints(&[[1, 1], [0, 1]]);
    t.check(c.a22 == Matrix::block_diag(&[&j2, &j2]), "A22");
    t.check(c.h22 == Matrix::from_ints(&[[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]), "H22");
    t.check(c.is_unitary_part, "is_unitary_part");
    t.finish(4, "example 4 unitary part", start);
}

#[test]
fn criterion_05_example_five() {
    let start = Instant::now();
    let mut t = Tally::new();
    let p = example(5).unwrap().doc.pair;
    let e = ints(4);
    let dec = decompose(&p).unwrap();
    t.check(dec.unobservable == e(&[0, 1]), "N");
    t.check(dec.neutral_core == dec.unobservable, "M = N");
    t.check(dec.complement.is_zero(), "M1 = 0");
    t.check(unitary_compression(&dec).a22.rows() == 0, "compression dimension");
    t.check(verify(&p, &dec.s, dec.dims).unwrap().all_pass(), "verify on output");
    let verbatim = example5_verbatim().pair;
    t.check(matches!(decompose(&verbatim), Err(Error::NotExpansive { .. })), "verbatim H rejected");
    t.finish(5, "example 5 (sign-corrected H)", start);
}

fn planted_dims(seed: u64, max_n: usize) -> (usize, usize, usize) {
    let mut r = CounterRng::new(seed).split(0xd1);
    loop {
        let d = (r.range(0, 3) as usize, r.range(0, 3) as usize, r.range(0, 3) as usize);
        if 2 * d.0 + d.1 + d.2 <= max_n {
            return d;
        }
    }
}

#[test]
fn criterion_06_planted_round_trips() {
    let start = Instant::now();
    let mut t = Tally::new();
    for seed in 0..200u64 {
        let (m, m1, m3) = planted_dims(seed, 10);
        let planted = match plant(PlantSpec::new(m, m1, m3, seed)) {
            Ok(p) => p,
            Err(err) => {
                t.check(false, format!("seed {seed}: {err}"));
                continue;
            }
        };
        t.check(is_psd(&planted.pair.defect()).unwrap(), format!("seed {seed}: defect not PSD"));
        match decompose(&planted.pair) {
            Ok(dec) => {
                t.check(dec.report.all_pass(), format!("seed {seed}: {:?}", dec.report.failed()));
                t.check(dec.dims == planted.dims, format!("seed {seed}: dims {} vs {}", dec.dims, planted.dims));
                let n = unobservable_subspace(&dec.d_transformed, &dec.a_transformed).unwrap();
                t.check(n.dim() == m + m1, format!("seed {seed}: unobservable dim {}", n.dim()));
            }
            Err(err) => t.check(false, format!("seed {seed}: {err}")),
        }
        let truth = verify(&planted.pair, &planted.s_true, planted.dims).unwrap();
        t.check(truth.all_pass(), format!("seed {seed}: planted S {:?}", truth.failed()));
    }
    t.check(start.elapsed() < Duration::from_secs(300), "runtime");
    t.finish(6, "theorem property suite, 200 planted pairs", start);
}

fn invariance_case(t: &mut Tally, label: &str, p: &HPair, dims: Dims, r: &mut CounterRng) {
    let tm = r.invertible_matrix(p.n(), 2);
    let q = p.conjugate(&tm).unwrap();
    t.check(q.defect() == &(&tm.adjoint() * &p.defect()) * &tm, format!("{label}: defect transport"));
    match decompose(&q) {
        Ok(dec) => {
            t.check(dec.dims == dims, format!("{label}: dims {}", dec.dims));
            t.check(dec.report.all_pass(), format!("{label}: {:?}", dec.report.failed()));
        }
        Err(err) => t.check(false, format!("{label}: {err}")),
    }
}

#[test]
fn criterion_07_invariance() {
    let start = Instant::now();
    let mut t = Tally::new();
    let ex1 = example(1).unwrap().doc.pair;
    let mut r = CounterRng::new(7);
    for k in 0..50 {
        invariance_case(&mut t, &format!("example 1 #{k}"), &ex1, Dims::new(2, 1, 2, 0), &mut r);
    }
    for k in 0..50u64 {
        let (m, m1, m3) = planted_dims(1000 + k, 8);
        let planted = plant(PlantSpec::new(m, m1, m3, 1000 + k)).unwrap();
        invariance_case(&mut t, &format!("planted #{k}"), &planted.pair, planted.dims, &mut r);
    }
    t.finish(7, "invariance under conjugation", start);
}

/// Block pattern of an H-selfadjoint pair, recomputed from `S` directly.
fn selfadjoint_pattern(p: &HPair, s: &Matrix, d: Dims) -> Vec<&'static str> {
    let a = &(&inverse(s).unwrap() * p.a()) * s;
    let h = &(&s.adjoint() * p.h()) * s;
    let [m, m1, m2, m3] = d.sizes();
    let off = [0, m, m + m1, m + m1 + m2, m + m1 + m2 + m3];
    let blk = |x: &Matrix, i: usize, j: usize| x.submatrix(off[i - 1]..off[i], off[j - 1]..off[j]);
    let (h22, h44) = (blk(&h, 2, 2), blk(&h, 4, 4));
    let (h22i, h44i) = (inverse(&h22).unwrap(), inverse(&h44).unwrap());
    let mut bad = Vec::new();
    for (i, j) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (2, 4), (3, 4)] {
        if !blk(&a, i, j).is_zero() {
            bad.push("zero block");
        }
    }
    if blk(&a, 2, 3) != &h22i * &blk(&a, 1, 2).adjoint() {
        bad.push("A23");
    }
    if blk(&a, 3, 3) != blk(&a, 1, 1).adjoint() {
        bad.push("A33");
    }
    if blk(&a, 4, 3) != &h44i * &blk(&a, 1, 4).adjoint() {
        bad.push("A43");
    }
    let ha22 = &h22 * &blk(&a, 2, 2);
    let ha44 = &h44 * &blk(&a, 4, 4);
    if !ha22.is_hermitian() || !ha44.is_hermitian() {
        bad.push("compressions selfadjoint");
    }
    bad
}

#[test]
fn criterion_08_selfadjoint_variant() {
    let start = Instant::now();
    let mut t = Tally::new();
    for seed in 0..50u64 {
        let (m, m1, m3) = planted_dims(5000 + seed, 8);
        let planted = plant_selfadjoint(PlantSpec::new(m, m1, m3, seed)).unwrap();
        t.check(planted.pair.classify().selfadjoint, format!("seed {seed}: not selfadjoint"));
        match selfadjoint_decompose(&planted.pair, &planted.invariant) {
            Ok(sd) => {
                t.check(sd.report.all_pass(), format!("seed {seed}: {:?}", sd.report.failed()));
                t.check(sd.dims == planted.dims, format!("seed {seed}: dims {}", sd.dims));
                let bad = selfadjoint_pattern(&planted.pair, &sd.s, sd.dims);
                t.check(bad.is_empty(), format!("seed {seed}: pattern {bad:?}"));
            }
            Err(err) => t.check(false, format!("seed {seed}: {err}")),
        }
    }
    t.finish(8, "selfadjoint variant, 50 instances", start);
}

#[test]
fn criterion_09_inertia_oracle() {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut r = CounterRng::new(9);
    for k in 0..500 {
        let n = r.range(1, 6) as usize;
        let m = match k % 3 {
            0 => r.hermitian(n, 4),
            // Rank-deficient Gram matrices sit on the PSD boundary.
            1 => {
                let k = r.range(0, n as i64) as usize;
                let x = r.matrix(k, n, 3);
                &x.adjoint() * &x
            }
            _ => {
                let k = r.range(1, n as i64) as usize;
                let x = r.matrix(k, n, 3);
                let d = r.hermitian(x.rows(), 2);
                &(&x.adjoint() * &d) * &x
            }
        };
        let got = hermitian_inertia(&m).unwrap();
        let want: Inertia = charpoly_inertia(&m);
        t.check(got == want, format!("case {k}: {got} vs {want}"));
        t.check(is_psd(&m).unwrap() == (want.neg == 0), format!("case {k}: is_psd"));
    }
    t.finish(9, "inertia oracle cross-check, 500 matrices", start);
}

#[test]
fn criterion_10_negative_paths() {
    let start = Instant::now();
    let mut t = Tally::new();
    let p = example(1).unwrap().doc.pair;
    let dec = decompose(&p).unwrap();
    let mut s = dec.s.clone();
    s[(0, 3)] = &s[(0, 3)] + &Z::one();
    t.check(inverse(&s).is_ok(), "perturbed S invertible");
    let report = verify(&p, &s, dec.dims).unwrap();
    t.check(!report.all_pass(), "perturbed S rejected");
    t.check(
        report.checks.iter().filter(|c| !c.pass).all(|c| c.witness.as_ref().is_some_and(|w| !w.is_zero())),
        "nonzero witnesses",
    );

    let half = Z::ratio(1, 2).unwrap();
    let q = HPair::new(Matrix::identity(2).scale(&half), Matrix::identity(2)).unwrap();
    let c = q.classify();
    t.check(!c.expansive && c.defect_inertia.neg == 2, "half identity classified");
    t.check(
        matches!(decompose(&q), Err(Error::NotExpansive { inertia }) if inertia.neg == 2),
        "decompose reports negative inertia",
    );
    t.finish(10, "negative paths", start);
}
