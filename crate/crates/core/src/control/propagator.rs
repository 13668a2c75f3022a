use num_complex::Complex64 as C64;

use super::HolonomicPath;
use crate::gates::bright_dark_basis;
use crate::linalg::{cis, CMatrix};

/// Cayley-Klein pair `(a, b)` with `β` the phase of `b`.
pub fn cayley_klein(eta: f64, chi: f64, beta: f64) -> (C64, C64) {
    let (s, c) = (eta / 2.0).sin_cos();
    let a = C64::new(c, -s * chi.cos());
    let b = C64::new(0.0, -s * chi.sin()) * cis(-beta);
    (a, b)
}

/// Closed-form Λ-system propagator in {|0⟩, |e⟩, |1⟩} for bright-state
/// angles (θ, φ), loop angles (η, χ) and dynamical phase α.
///
/// `U = e^{iα}(a*|b⟩⟨b| − b*|b⟩⟨e| + b|e⟩⟨b| + a|e⟩⟨e|) + |d⟩⟨d|`
pub fn lambda_propagator(theta: f64, phi: f64, eta: f64, chi: f64, alpha: f64) -> CMatrix {
    let (bv, dv) = bright_dark_basis(theta, phi);
    let (b, d) = (bv.amplitudes(), dv.amplitudes());
    let e = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let (ca, cb) = cayley_klein(eta, chi, phi);
    let ea = cis(alpha);
    CMatrix::from_fn(3, 3, |i, j| {
        let loop_part =
            ca.conj() * b[i] * b[j].conj() - cb.conj() * b[i] * e[j] + cb * e[i] * b[j].conj() + ca * e[i] * e[j];
        ea * loop_part + d[i] * d[j].conj()
    })
}

pub fn closed_form_propagator(path: &HolonomicPath, eta: f64, chi: f64, alpha: f64) -> CMatrix {
    lambda_propagator(path.theta(), path.phi(), eta, chi, alpha)
}

impl HolonomicPath {
    /// Closed-form `U(t)` along this loop.
    pub fn propagator_at(&self, t: f64) -> CMatrix {
        closed_form_propagator(self, self.eta(t), self.chi(), self.alpha(t))
    }
}

/// Qubit block (rows/columns |0⟩, |1⟩) of a 3×3 Λ-system operator.
pub fn qubit_block(u: &CMatrix) -> CMatrix {
    u.select(&[0, 2], &[0, 2])
}
