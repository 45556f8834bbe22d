//! Independent reference computations for the integration tests. They use
//! only scalar arithmetic on plain vectors, never the library's matrix
//! routines.
#![allow(dead_code)]

use expansive_core::{GaussianRational as Z, Inertia, Matrix, Rational};

pub type Grid = Vec<Vec<Z>>;

pub fn grid(m: &Matrix) -> Grid {
    m.to_rows()
}

pub fn to_matrix(g: &Grid, cols: usize) -> Matrix {
    Matrix::from_rows(g.clone(), cols).unwrap()
}

/// Textbook Gauss-Jordan with division; pivot is the first nonzero entry.
pub fn naive_rref(m: &Matrix) -> (Grid, Vec<usize>) {
    let mut a = grid(m);
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (a, pivots)
}

pub fn naive_mul(a: &Grid, b: &Grid, inner: usize, cols: usize) -> Grid {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Characteristic polynomial coefficients `c[0..=n]` (`c[n] = 1`) by the
/// Faddeev-LeVerrier recursion.
pub fn charpoly(m: &Matrix) -> Vec<Z> {
    let n = m.rows();
    let a = grid(m);
    let mut c = vec![Z::zero(); n + 1];
    c[n] = Z::one();
    let mut mk: Grid = vec![vec![Z::zero(); n]; n];
    for k in 1..=n {
        let mut next = naive_mul(&a, &mk, n, n);
        for i in 0..n {
            next[i][i] = &next[i][i] + &c[n - k + 1];
        }
        let am = naive_mul(&a, &next, n, n);
        let tr: Z = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr.scale(&Rational::new(1, k as i64).unwrap());
        mk = next;
    }
    c
}

fn sign_changes(coeffs: &[Rational]) -> usize {
    let signs: Vec<i32> = coeffs.iter().map(|x| x.signum()).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia from the characteristic polynomial. All roots are real, so
/// Descartes' rule of signs counts positive roots exactly; negative roots
/// come from `p(−x)` and zero roots from the lowest nonzero coefficient.
pub fn charpoly_inertia(m: &Matrix) -> Inertia {
    let c = charpoly(m);
    assert!(c.iter().all(|z| z.is_real()), "Hermitian charpoly is real");
    let re: Vec<Rational> = c.iter().map(|z| z.re.clone()).collect();
    let zero = re.iter().take_while(|x| x.is_zero()).count();
    let pos = sign_changes(&re);
    let flipped: Vec<Rational> = re.iter().enumerate().map(|(k, x)| if k % 2 == 1 { -x.clone() } else { x.clone() }).collect();
    let neg = sign_changes(&flipped);
    Inertia::new(pos, neg, zero)
}
