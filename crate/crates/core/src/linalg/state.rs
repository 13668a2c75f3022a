use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{eig_hermitian, CMatrix};
use crate::error::{reject, Result};

/// Tolerance on |<psi|psi> - 1| accepted at construction.
pub const NORM_TOL: f64 = 1e-10;

/// Normalized pure state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Wrap amplitudes that are already normalized.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return reject("state vector must have at least one amplitude");
        }
        let n2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !((n2 - 1.0).abs() <= NORM_TOL) {
            return reject(format!("state vector norm^2 = {n2} is not 1"));
        }
        Ok(Self { amplitudes })
    }

    /// Normalize arbitrary non-zero amplitudes.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let n: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return reject("cannot normalize a zero or non-finite vector");
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|a| a / n).collect() })
    }

    pub(crate) fn from_raw(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut a = vec![C64::new(0.0, 0.0); dim];
        a[index] = C64::new(1.0, 0.0);
        Self { amplitudes: a }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// <self|other>
    pub fn inner(&self, other: &StateVector) -> C64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn population(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn apply(&self, u: &CMatrix) -> StateVector {
        StateVector { amplitudes: u.apply(&self.amplitudes) }
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix { matrix: CMatrix::outer(&self.amplitudes, &self.amplitudes) }
    }
}

/// Tolerances for accepting a density matrix.
pub const RHO_HERMITIAN_TOL: f64 = 1e-12;
pub const RHO_TRACE_TOL: f64 = 1e-9;
pub const RHO_POSITIVITY_TOL: f64 = 1e-8;

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return reject("density matrix must be square");
        }
        let herm = matrix.hermiticity_error();
        if !(herm <= RHO_HERMITIAN_TOL) {
            return reject(format!("density matrix not Hermitian (error {herm:.3e})"));
        }
        let rho = Self { matrix };
        let tr = rho.trace_deviation();
        if !(tr <= RHO_TRACE_TOL) {
            return reject(format!("density matrix trace deviates from 1 by {tr:.3e}"));
        }
        let min = rho.min_eigenvalue()?;
        if min < -RHO_POSITIVITY_TOL {
            return reject(format!("density matrix has eigenvalue {min:.3e}"));
        }
        Ok(rho)
    }

    pub(crate) fn from_raw(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: CMatrix::identity(dim).scale_real(1.0 / dim as f64) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn population(&self, index: usize) -> f64 {
        self.matrix[(index, index)].re
    }

    pub fn trace_deviation(&self) -> f64 {
        (self.matrix.trace() - C64::new(1.0, 0.0)).norm()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let e = eig_hermitian(&self.matrix.hermitian_part())?;
        Ok(e.values[0])
    }

    /// <psi|rho|psi>
    pub fn expectation(&self, psi: &StateVector) -> f64 {
        let v = self.matrix.apply(psi.amplitudes());
        psi.amplitudes().iter().zip(&v).map(|(a, b)| a.conj() * b).sum::<C64>().re
    }
}
