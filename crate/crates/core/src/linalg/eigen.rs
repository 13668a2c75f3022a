//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use num_complex::Complex64 as C64;

use super::CMatrix;
use crate::error::{reject, Error, Result};

/// Largest dimension accepted by the dense kernel.
pub const MAX_DIM: usize = 32;

/// Relative Hermiticity tolerance, scaled by max(1, max|H_ij|).
pub const HERMITIAN_TOL: f64 = 1e-12;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `H = V diag(values) V†` with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    /// Reassemble `V diag(f(λ)) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let weights: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += v[(i, k)] * weights[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

pub(crate) fn check_hermitian(h: &CMatrix, what: &str) -> Result<()> {
    if !h.is_square() {
        return reject(format!("{what}: matrix is {}x{}, not square", h.rows(), h.cols()));
    }
    if h.rows() > MAX_DIM {
        return reject(format!("{what}: dimension {} exceeds {MAX_DIM}", h.rows()));
    }
    let err = h.hermiticity_error();
    let allowed = HERMITIAN_TOL * h.max_abs().max(1.0);
    if !(err <= allowed) {
        return reject(format!("{what}: not Hermitian (max|H - H†| = {err:.3e} > {allowed:.3e})"));
    }
    Ok(())
}

/// Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn eig_hermitian(h: &CMatrix) -> Result<HermitianEigen> {
    check_hermitian(h, "eig_hermitian")?;
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = CMatrix::identity(n);
    for i in 0..n {
        a[(i, i)] = C64::new(a[(i, i)].re, 0.0);
    }

    let scale = a.frobenius_norm();
    if scale == 0.0 || n == 1 {
        return Ok(sorted(a, v));
    }
    let target = (f64::EPSILON * scale).powi(2);

    for _sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_sq(&a);
        if off <= target {
            return Ok(sorted(a, v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let off = off_diagonal_sq(&a).sqrt();
    if off <= 1e-13 * scale {
        // Stalled at rounding level; accept.
        return Ok(sorted(a, v));
    }
    Err(Error::Numerical {
        message: format!("Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps (dim {n})"),
        residual: off,
    })
}

fn off_diagonal_sq(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s
}

/// One Jacobi rotation zeroing a[p][q].
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip rotations that cannot change the diagonal at working precision.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let w = apq / r;
    let wc = w.conj();
    let theta = (aqq - app) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.rows();
    // A <- A V
    for r_ in 0..n {
        let arp = a[(r_, p)];
        let arq = a[(r_, q)];
        a[(r_, p)] = arp * c - arq * wc * s;
        a[(r_, q)] = arp * s + arq * wc * c;
    }
    // A <- V† A
    for c_ in 0..n {
        let apc = a[(p, c_)];
        let aqc = a[(q, c_)];
        a[(p, c_)] = apc * c - aqc * w * s;
        a[(q, c_)] = apc * s + aqc * w * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for r_ in 0..n {
        let vrp = v[(r_, p)];
        let vrq = v[(r_, q)];
        v[(r_, p)] = vrp * c - vrq * wc * s;
        v[(r_, q)] = vrp * s + vrq * wc * c;
    }
}

fn sorted(a: CMatrix, v: CMatrix) -> HermitianEigen {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    HermitianEigen { values, vectors }
}
