use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::model::{CarrierFrame, HamiltonianModel, EXCITED, GROUND_0, GROUND_1};
use crate::error::{reject, Result};
use crate::linalg::{cis, CMatrix};

/// Largest supported cavity truncation.
pub const MAX_PHOTONS: usize = 5;

/// Two Λ emitters coupled through one cavity mode, NV₁ ⊗ cavity ⊗ NV₂.
///
/// Emitter k couples |0⟩↔|e⟩ through the cavity with strength G_k and
/// |1⟩↔|e⟩ through a drive of amplitude (−1)^k Ω_k, all detuned by δ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitModel {
    pub g1: f64,
    pub g2: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub delta: f64,
    /// Detuning Δ_k on |1⟩_k (same for both emitters).
    pub detuning: f64,
    pub n_max: usize,
}

impl TwoQubitModel {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 || self.n_max > MAX_PHOTONS {
            return reject(format!("cavity truncation n_max = {} must be in 1..={MAX_PHOTONS}", self.n_max));
        }
        let vals = [self.g1, self.g2, self.omega1, self.omega2, self.delta, self.detuning];
        if vals.iter().any(|v| !v.is_finite()) {
            return reject("two-qubit model parameters must be finite");
        }
        Ok(())
    }

    pub fn photon_levels(&self) -> usize {
        self.n_max + 1
    }

    pub fn dim(&self) -> usize {
        9 * self.photon_levels()
    }

    /// Index of `|a⟩₁ ⊗ |n⟩_c ⊗ |b⟩₂`, with emitter levels 0, e, 1 → 0, 1, 2.
    pub fn index(&self, a: usize, n: usize, b: usize) -> usize {
        (a * self.photon_levels() + n) * 3 + b
    }

    /// Index of a computational-manifold state |m n l⟩ with qubit bits m, l.
    pub fn qubit_index(&self, m: u8, n: usize, l: u8) -> usize {
        let level = |bit: u8| if bit == 0 { GROUND_0 } else { GROUND_1 };
        self.index(level(m), n, level(l))
    }

    /// All basis indices with exactly `n` photons.
    pub fn photon_manifold(&self, n: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(9);
        for a in 0..3 {
            for b in 0..3 {
                out.push(self.index(a, n, b));
            }
        }
        out
    }

    fn labels(&self) -> Vec<String> {
        let name = ["0", "e", "1"];
        let mut out = vec![String::new(); self.dim()];
        for a in 0..3 {
            for n in 0..self.photon_levels() {
                for b in 0..3 {
                    out[self.index(a, n, b)] = format!("{}{}{}", name[a], n, name[b]);
                }
            }
        }
        out
    }

    /// Number of excited emitters per basis state.
    fn excitations(&self) -> Vec<f64> {
        let mut k = vec![0.0; self.dim()];
        for a in 0..3 {
            for n in 0..self.photon_levels() {
                for b in 0..3 {
                    k[self.index(a, n, b)] = ((a == EXCITED) as u8 + (b == EXCITED) as u8) as f64;
                }
            }
        }
        k
    }

    /// Invariant subspaces: photons + emitters outside |0⟩ is conserved.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let qmax = self.n_max + 2;
        let mut blocks = vec![Vec::new(); qmax + 1];
        for a in 0..3 {
            for n in 0..self.photon_levels() {
                for b in 0..3 {
                    let q = n + (a != GROUND_0) as usize + (b != GROUND_0) as usize;
                    blocks[q].push(self.index(a, n, b));
                }
            }
        }
        blocks.into_iter().filter(|b| !b.is_empty()).collect()
    }

    /// Slow part of H_I (carrier removed) for drive amplitudes `omega` and
    /// detunings `det` of the two emitters.
    fn slow_hamiltonian(&self, omega: [f64; 2], det: [f64; 2]) -> CMatrix {
        let dim = self.dim();
        let mut h = CMatrix::zeros(dim, dim);
        let levels = self.photon_levels();
        let g = [self.g1, self.g2];
        let sign = [-1.0, 1.0];
        for a in 0..3 {
            for n in 0..levels {
                for b in 0..3 {
                    let i = self.index(a, n, b);
                    let mut diag = 0.0;
                    if a == GROUND_1 {
                        diag += det[0];
                    }
                    if b == GROUND_1 {
                        diag += det[1];
                    }
                    h[(i, i)] = C64::new(diag, 0.0);
                    for k in 0..2 {
                        let local = if k == 0 { a } else { b };
                        let raise = |to: usize, n2: usize| {
                            if k == 0 {
                                self.index(to, n2, b)
                            } else {
                                self.index(a, n2, to)
                            }
                        };
                        if local == GROUND_0 && n >= 1 {
                            let j = raise(EXCITED, n - 1);
                            let v = C64::new(g[k] * (n as f64).sqrt(), 0.0);
                            h[(j, i)] += v;
                            h[(i, j)] += v.conj();
                        }
                        if local == GROUND_1 {
                            let j = raise(EXCITED, n);
                            let v = C64::new(sign[k] * omega[k], 0.0);
                            h[(j, i)] += v;
                            h[(i, j)] += v.conj();
                        }
                    }
                }
            }
        }
        h
    }
}

/// Time-dependent drive for the two-emitter model: both Ω_k are scaled by
/// `envelope(t)` and the detunings are `detuning(t)`, on [0, tau].
#[derive(Clone)]
pub struct TwoQubitDrive {
    pub envelope: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub detuning: Arc<dyn Fn(f64) -> [f64; 2] + Send + Sync>,
    pub tau: f64,
}

fn build(model: &TwoQubitModel, drive: Option<TwoQubitDrive>) -> Result<HamiltonianModel> {
    model.validate()?;
    let m = *model;
    let k = m.excitations();
    let carrier: Vec<f64> = k.iter().map(|x| m.delta * x).collect();
    let slow: Arc<dyn Fn(f64) -> CMatrix + Send + Sync> = match &drive {
        None => {
            let h = m.slow_hamiltonian([m.omega1, m.omega2], [m.detuning; 2]);
            Arc::new(move |_| h.clone())
        }
        Some(d) => {
            let d = d.clone();
            Arc::new(move |t| {
                let e = (d.envelope)(t);
                m.slow_hamiltonian([e * m.omega1, e * m.omega2], (d.detuning)(t))
            })
        }
    };
    let slow_eval = slow.clone();
    let freq = carrier.clone();
    let full = move |t: f64| {
        let mut h = slow_eval(t);
        let n = freq.len();
        for i in 0..n {
            for j in 0..n {
                if i != j && freq[i] != freq[j] {
                    h[(i, j)] *= cis((freq[i] - freq[j]) * t);
                }
            }
        }
        h
    };
    let mut model_out = HamiltonianModel::new(m.dim(), "two-emitter-cavity", full)
        .with_basis_labels(m.labels())
        .with_blocks(m.blocks())
        .with_frame(CarrierFrame { frequencies: carrier, slow });
    let peak_drive = match &drive {
        None => 1.0,
        Some(d) => {
            model_out = model_out.with_domain(0.0, d.tau);
            (0..=256).map(|i| (d.envelope)(d.tau * i as f64 / 256.0).abs()).fold(0.0, f64::max)
        }
    };
    let det_max = match &drive {
        None => m.detuning.abs(),
        Some(d) => (0..=256)
            .map(|i| {
                let v = (d.detuning)(d.tau * i as f64 / 256.0);
                v[0].abs().max(v[1].abs())
            })
            .fold(0.0, f64::max),
    };
    let photons = (m.n_max as f64).sqrt();
    let hint = 2.0 * m.delta.abs()
        + 2.0 * (m.g1.abs() + m.g2.abs()) * photons
        + 2.0 * peak_drive * (m.omega1.abs() + m.omega2.abs())
        + 2.0 * det_max;
    Ok(model_out.with_rate_hint(hint))
}

/// `H_I(t) = Σ_k [(G_k a σ_{e0,k} + (−1)^k Ω_k σ_{e1,k}) e^{iδt} + h.c. + Δ σ_{11,k}]`
/// with constant amplitudes.
pub fn two_nv_cavity_hamiltonian(model: &TwoQubitModel) -> Result<HamiltonianModel> {
    build(model, None)
}

/// Same interaction with shaped drive amplitudes and time-dependent detunings.
pub fn two_nv_cavity_driven(model: &TwoQubitModel, drive: TwoQubitDrive) -> Result<HamiltonianModel> {
    if !(drive.tau > 0.0 && drive.tau.is_finite()) {
        return reject("drive duration must be positive");
    }
    build(model, Some(drive))
}
