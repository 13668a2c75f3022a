use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::dynamics::HamiltonianModel;
use crate::error::{reject, Result};
use crate::linalg::{cis, re, CMatrix};

/// Cavity-mediated coupling of emitter `k` after eliminating |e⟩:
/// `g_k = (−1)^{k+1} G_k Ω_k / δ`.
pub fn effective_coupling(g: f64, omega: f64, delta: f64, k: u8) -> Result<f64> {
    if delta == 0.0 || !delta.is_finite() {
        return reject("effective coupling needs a finite non-zero detuning δ");
    }
    let sign = match k {
        1 => 1.0,
        2 => -1.0,
        _ => return reject(format!("emitter index k = {k} must be 1 or 2")),
    };
    Ok(sign * g * omega / delta)
}

/// Parameters of the six-level effective Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveTwoQubitParams {
    pub g1: f64,
    pub g2: f64,
    pub g_tilde: f64,
    /// Mixing angle Θ with |B₁⟩ ∝ g₁|100⟩ + g₂|001⟩, folded into (−π, π].
    pub theta_mix: f64,
    pub delta: f64,
}

/// `Θ = 2·atan2(−g₁, g₂)` folded into (−π, π]; the fold flips the overall
/// sign of |B₁⟩, |B₂⟩ only.
pub fn mixing_angle(g1: f64, g2: f64) -> f64 {
    let mut t = 2.0 * (-g1).atan2(g2);
    if t <= -std::f64::consts::PI {
        t += 2.0 * std::f64::consts::PI;
    } else if t > std::f64::consts::PI {
        t -= 2.0 * std::f64::consts::PI;
    }
    t
}

impl EffectiveTwoQubitParams {
    pub fn new(g1: f64, g2: f64, delta: f64) -> Self {
        Self { g1, g2, g_tilde: (g1 * g1 + g2 * g2).sqrt(), theta_mix: mixing_angle(g1, g2), delta }
    }

    /// |B⟩ amplitudes on the (first, second) emitter-excitation states.
    pub fn bright_amplitudes(&self) -> (f64, f64) {
        let (s, c) = (self.theta_mix / 2.0).sin_cos();
        (-s, c)
    }
}

/// Effective basis order {|100⟩, |010⟩, |001⟩, |110⟩, |101⟩, |011⟩}
/// as (emitter-1 bit, photons, emitter-2 bit).
pub const EFFECTIVE_BASIS: [(u8, usize, u8); 6] = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)];

fn effective_matrix(g_tilde: f64, delta: f64, bright: (f64, f64)) -> CMatrix {
    let mut h = CMatrix::zeros(6, 6);
    let (b1, b2) = bright;
    for (i, amp) in [(0, b1), (2, b2)] {
        h[(i, 1)] = re(g_tilde * amp);
        h[(1, i)] = re(g_tilde * amp);
    }
    for (i, amp) in [(3, b1), (5, b2)] {
        h[(i, 4)] = re(g_tilde * amp);
        h[(4, i)] = re(g_tilde * amp);
    }
    h[(1, 1)] = re(-delta);
    h[(4, 4)] = re(delta);
    h
}

fn labels() -> Vec<String> {
    EFFECTIVE_BASIS.iter().map(|(a, n, b)| format!("{a}{n}{b}")).collect()
}

/// `H_e = g̃(|B₁⟩⟨010| + h.c.) − Δ|010⟩⟨010| + g̃(|B₂⟩⟨101| + h.c.) + Δ|101⟩⟨101|`.
pub fn effective_hamiltonian(p: &EffectiveTwoQubitParams) -> HamiltonianModel {
    HamiltonianModel::constant(effective_matrix(p.g_tilde, p.delta, p.bright_amplitudes()), "effective-two-qubit")
        .with_basis_labels(labels())
}

/// Effective Hamiltonian with g̃(t) = `p.g_tilde · envelope(t)` and Δ(t) = `detuning(t)`.
pub fn effective_hamiltonian_driven(
    p: &EffectiveTwoQubitParams,
    envelope: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    detuning: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    tau: f64,
) -> HamiltonianModel {
    let (g, bright) = (p.g_tilde, p.bright_amplitudes());
    HamiltonianModel::new(6, "effective-two-qubit", move |t| effective_matrix(g * envelope(t), detuning(t), bright))
        .with_domain(0.0, tau)
        .with_basis_labels(labels())
}

/// Two-qubit holonomic gate on {|000⟩, |100⟩, |001⟩, |101⟩}.
pub fn two_qubit_gate(theta_mix: f64, gamma: f64) -> CMatrix {
    let (s, c) = (theta_mix / 2.0).sin_cos();
    let eg = cis(gamma);
    let off = (re(1.0) - eg) * (theta_mix.sin() / 2.0);
    let mut u = CMatrix::zeros(4, 4);
    u[(0, 0)] = re(1.0);
    u[(1, 1)] = re(c * c) + eg * (s * s);
    u[(1, 2)] = off;
    u[(2, 1)] = off;
    u[(2, 2)] = eg * (c * c) + re(s * s);
    u[(3, 3)] = cis(-gamma);
    u
}

/// Phase-insensitive gate overlap `|Tr(U†V)| / dim`.
pub fn gate_overlap(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    if u.rows() != v.rows() || u.cols() != v.cols() || !u.is_square() {
        return reject("gate overlap needs square matrices of equal size");
    }
    let tr: C64 = (0..u.rows()).map(|i| (0..u.rows()).map(|k| u[(k, i)].conj() * v[(k, i)]).sum::<C64>()).sum();
    Ok(tr.norm() / u.rows() as f64)
}

/// JSON layout `{ "basis": [...], "re": [[...]], "im": [[...]] }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateJson {
    pub basis: Vec<String>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl GateJson {
    pub fn new(matrix: &CMatrix, basis: &[&str]) -> Result<Self> {
        if basis.len() != matrix.rows() || !matrix.is_square() {
            return reject("basis labels must match a square matrix");
        }
        let n = matrix.rows();
        Ok(Self {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            re: (0..n).map(|i| (0..n).map(|j| matrix[(i, j)].re).collect()).collect(),
            im: (0..n).map(|i| (0..n).map(|j| matrix[(i, j)].im).collect()).collect(),
        })
    }

    pub fn matrix(&self) -> Result<CMatrix> {
        let n = self.basis.len();
        if self.re.len() != n || self.im.len() != n || self.re.iter().chain(&self.im).any(|r| r.len() != n) {
            return reject("gate JSON arrays do not match the basis length");
        }
        Ok(CMatrix::from_fn(n, n, |i, j| C64::new(self.re[i][j], self.im[i][j])))
    }
}
