//! Portable counter-based PRNG used by every seeded routine in the crate.
//!
//! Algorithm (fixed; other implementations must reproduce it bit for bit):
//!
//! * `mix(z)`: `z ^= z >> 30; z *= 0xbf58476d1ce4e5b9; z ^= z >> 27;
//!   z *= 0x94d049bb133111eb; z ^= z >> 31` (wrapping 64-bit arithmetic).
//! * A generator is a pair `(key, counter)`. `new(seed)` sets
//!   `key = mix(seed)`, `counter = 0`.
//! * `next_u64()` returns `mix(key + (counter + 1) * 0x9e3779b97f4a7c15)` and
//!   increments `counter`.
//! * `split(stream)` returns `(mix(key ^ mix(stream + 0x9e3779b97f4a7c15)), 0)`
//!   without touching the parent.
//! * `below(n)` draws `x = next_u64()` until `x < 2^64 − (2^64 mod n)` and
//!   returns `x mod n`.
//! * `range(lo, hi)` (inclusive) is `lo + below(hi − lo + 1)`.

use crate::elim::is_invertible;
use crate::matrix::Matrix;
use crate::scalar::{GaussianRational, Rational};

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng {
            key: mix(seed),
            counter: 0,
        }
    }

    /// Independent child stream; the parent is unchanged.
    pub fn split(&self, stream: u64) -> Self {
        CounterRng {
            key: mix(self.key ^ mix(stream.wrapping_add(GAMMA))),
            counter: 0,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.key.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform in `0..n`. Panics if `n == 0`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let width = (hi as i128 - lo as i128 + 1) as u64;
        (lo as i128 + self.below(width) as i128) as i64
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }

    /// `p/q` with `|p| <= bound`, `1 <= q <= bound`.
    pub fn rational(&mut self, bound: i64) -> Rational {
        let p = self.range(-bound, bound);
        let q = self.range(1, bound.max(1));
        Rational::new(p, q).expect("q >= 1")
    }

    /// Complex entry whose real part is always drawn and whose imaginary
    /// part is nonzero with probability one half.
    pub fn scalar(&mut self, bound: i64) -> GaussianRational {
        let re = self.rational(bound);
        let im = if self.coin() { self.rational(bound) } else { Rational::zero() };
        GaussianRational::new(re, im)
    }

    pub fn real_scalar(&mut self, bound: i64) -> GaussianRational {
        GaussianRational::real(self.rational(bound))
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| self.scalar(bound))
    }

    pub fn hermitian(&mut self, n: usize, bound: i64) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.real_scalar(bound);
            for j in i + 1..n {
                let z = self.scalar(bound);
                m[(j, i)] = z.conj();
                m[(i, j)] = z;
            }
        }
        m
    }

    /// `X − X*` for a random `X`.
    pub fn skew_hermitian(&mut self, n: usize, bound: i64) -> Matrix {
        let x = self.matrix(n, n, bound);
        &x - &x.adjoint()
    }

    /// Random invertible matrix with integer entries in `-bound..=bound`
    /// (real), resampled until nonsingular.
    pub fn invertible_integer_matrix(&mut self, n: usize, bound: i64) -> Matrix {
        loop {
            let m = Matrix::from_fn(n, n, |_, _| GaussianRational::from_int(self.range(-bound, bound)));
            if is_invertible(&m) {
                return m;
            }
        }
    }

    /// Random invertible matrix with entries from [`CounterRng::scalar`].
    pub fn invertible_matrix(&mut self, n: usize, bound: i64) -> Matrix {
        loop {
            let m = self.matrix(n, n, bound);
            if is_invertible(&m) {
                return m;
            }
        }
    }
}
