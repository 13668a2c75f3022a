//! Dense complex linear algebra for small quantum problems (dim <= 32).

mod eigen;
mod expm;
mod matrix;
mod state;

pub use eigen::{eig_hermitian, HermitianEigen, HERMITIAN_TOL, MAX_DIM};
pub use expm::expm_hermitian;
pub use matrix::{pauli, CMatrix};
pub use num_complex::Complex64 as C64;
pub use state::{DensityMatrix, StateVector};

/// Shorthand for a real-valued complex number.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `e^{i x}`
#[inline]
pub fn cis(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}
