use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::linalg::{cis, pauli, re, CMatrix, StateVector};

/// Bright and dark states of the Λ system in the basis {|0⟩, |e⟩, |1⟩}.
///
/// |b⟩ = −sin(θ/2)e^{iφ}|0⟩ + cos(θ/2)|1⟩, |d⟩ = cos(θ/2)|0⟩ + sin(θ/2)e^{−iφ}|1⟩.
pub fn bright_dark_basis(theta: f64, phi: f64) -> (StateVector, StateVector) {
    let (s, c) = (theta / 2.0).sin_cos();
    let zero = C64::new(0.0, 0.0);
    let b = vec![-s * cis(phi), zero, re(c)];
    let d = vec![re(c), zero, s * cis(-phi)];
    (StateVector::from_raw(b), StateVector::from_raw(d))
}

/// Same states restricted to the qubit pair {|0⟩, |1⟩}.
pub fn qubit_bright_dark(theta: f64, phi: f64) -> ([C64; 2], [C64; 2]) {
    let (s, c) = (theta / 2.0).sin_cos();
    ([-s * cis(phi), re(c)], [re(c), s * cis(-phi)])
}

/// Holonomic single-qubit gate `|d⟩⟨d| + e^{iγ}|b⟩⟨b|` on {|0⟩, |1⟩}.
#[derive(Debug, Clone, Serialize)]
pub struct SingleQubitTarget {
    pub theta: f64,
    pub gamma: f64,
    pub varphi: f64,
    pub matrix: CMatrix,
}

pub fn single_qubit_target(theta: f64, gamma: f64, varphi: f64) -> SingleQubitTarget {
    let (s, c) = (theta / 2.0).sin_cos();
    let eg = cis(gamma);
    let one = re(1.0);
    let off = (one - eg) * 0.5 * theta.sin();
    let mut m = CMatrix::zeros(2, 2);
    m[(0, 0)] = re(c * c) + eg * (s * s);
    m[(0, 1)] = off * cis(varphi);
    m[(1, 0)] = off * cis(-varphi);
    m[(1, 1)] = eg * (c * c) + re(s * s);
    SingleQubitTarget { theta, gamma, varphi, matrix: m }
}

impl SingleQubitTarget {
    /// Rotation axis `n` with `matrix = e^{iγ/2} exp(−i(γ/2) n·σ)`.
    ///
    /// The y component carries −sin θ sin φ in this basis ordering.
    pub fn bloch_axis(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        [st * self.varphi.cos(), -st * self.varphi.sin(), ct]
    }

    /// `e^{iγ/2} exp(−i(γ/2) n·σ)` built from the axis.
    pub fn from_axis_form(&self) -> CMatrix {
        let n = self.bloch_axis();
        let (sg, cg) = (self.gamma / 2.0).sin_cos();
        let ns = &(&pauli::x().scale_real(n[0]) + &pauli::y().scale_real(n[1])) + &pauli::z().scale_real(n[2]);
        let rot = &CMatrix::identity(2).scale_real(cg) - &ns.scale(C64::new(0.0, sg));
        rot.scale(cis(self.gamma / 2.0))
    }
}

/// Named presets from the benchmark: (θ, γ, φ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GatePreset {
    Not,
    Hadamard,
}

impl GatePreset {
    pub fn params(self) -> (f64, f64, f64) {
        use std::f64::consts::PI;
        match self {
            GatePreset::Not => (PI / 2.0, PI, 0.0),
            GatePreset::Hadamard => (PI / 4.0, PI, 0.0),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GatePreset::Not => "NOT",
            GatePreset::Hadamard => "Hadamard",
        }
    }
}
