#![allow(dead_code)]

use holonomy_core::linalg::{CMatrix, C64};
use rand::Rng;

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let m = CMatrix::from_fn(n, n, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    m.hermitian_part()
}

pub fn random_matrix(rng: &mut impl Rng, r: usize, c: usize) -> CMatrix {
    CMatrix::from_fn(r, c, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Element-wise triple loop.
pub fn naive_matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..a.cols() {
                acc += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// exp(a) by scaling and squaring a 30-term Taylor series.
pub fn taylor_expm(a: &CMatrix) -> CMatrix {
    let n = a.rows();
    let mut squarings = 0;
    let mut norm = a.frobenius_norm();
    while norm > 0.25 {
        norm /= 2.0;
        squarings += 1;
    }
    let scaled = a.scale_real(0.5f64.powi(squarings));
    let mut term = CMatrix::identity(n);
    let mut sum = CMatrix::identity(n);
    for k in 1..30 {
        term = naive_matmul(&term, &scaled).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = naive_matmul(&sum, &sum);
    }
    sum
}

/// exp(−i H t) for constant H via the Taylor oracle.
pub fn evolve_oracle(h: &CMatrix, t: f64) -> CMatrix {
    taylor_expm(&h.scale(C64::new(0.0, -t)))
}
