use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{
    effective_coupling, effective_hamiltonian_driven, two_qubit_gate, EffectiveTwoQubitParams, EFFECTIVE_BASIS,
};
use crate::control::{chi_from_gamma, EtaProfile, HolonomicPath};
use crate::dynamics::{propagate_unitary, two_nv_cavity_driven, TwoQubitDrive, TwoQubitModel};
use crate::error::{reject, Result};
use crate::linalg::CMatrix;

/// Inputs for comparing the full emitter-cavity model against the
/// effective six-level model over one holonomic loop. Rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitCheckParams {
    /// Cavity coupling G (both emitters).
    pub g: f64,
    /// Peak drive amplitude Ω (both emitters).
    pub omega_peak: f64,
    pub delta: f64,
    pub n_max: usize,
    pub k: u32,
    pub gamma: f64,
    /// Loop shape; the drive envelope follows η̇(t).
    pub smooth: bool,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisOutcome {
    pub input: String,
    pub fidelity_full_vs_effective: f64,
    pub fidelity_full_vs_target: f64,
    pub fidelity_effective_vs_target: f64,
    /// Population left in the n_max-photon manifold.
    pub leakage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoQubitCheck {
    pub params: TwoQubitCheckParams,
    pub g1: f64,
    pub g2: f64,
    pub theta_mix: f64,
    pub tau: f64,
    pub outcomes: Vec<BasisOutcome>,
}

impl TwoQubitCheck {
    pub fn min_fidelity(&self) -> f64 {
        self.outcomes.iter().map(|o| o.fidelity_full_vs_effective).fold(1.0, f64::min)
    }

    pub fn max_leakage(&self) -> f64 {
        self.outcomes.iter().map(|o| o.leakage).fold(0.0, f64::max)
    }
}

/// AC-Stark shift of a level coupled with strength `c` across detuning δ.
fn stark(c: f64, delta: f64) -> f64 {
    -((delta * delta / 4.0 + c * c).sqrt() - delta / 2.0)
}

/// Propagate all four computational inputs through both models.
///
/// The drive follows the loop rate, Ω_k(t) ∝ η̇(t), so that 2g̃(t) = η̇ sin χ
/// and Δ(t) = −η̇ cos χ in the effective model. In the full model the
/// emitter detunings additionally cancel the drive and cavity Stark shifts.
pub fn check_effective_model(p: TwoQubitCheckParams) -> Result<TwoQubitCheck> {
    if !(p.delta > 0.0 && p.g > 0.0 && p.omega_peak > 0.0) {
        return reject("two-qubit check needs positive G, Ω and δ");
    }
    if p.steps < 10 {
        return reject("two-qubit check needs at least 10 steps");
    }
    let g1 = effective_coupling(p.g, p.omega_peak, p.delta, 1)?;
    let g2 = effective_coupling(p.g, p.omega_peak, p.delta, 2)?;
    let eff = EffectiveTwoQubitParams::new(g1, g2, 0.0);
    let chi = chi_from_gamma(p.gamma, p.k)?;
    let profile = if p.smooth { EtaProfile::SineRamp } else { EtaProfile::Linear };
    let peak_rate = 2.0 * eff.g_tilde / chi.sin();
    let tau = 2.0 * PI * p.k as f64 * profile.peak_slope() / peak_rate;
    let path = Arc::new(HolonomicPath::new(PI / 2.0, 0.0, p.gamma, p.k, profile, tau)?);

    let envelope: Arc<dyn Fn(f64) -> f64 + Send + Sync> = {
        let path = path.clone();
        Arc::new(move |t| path.eta_dot(t) / peak_rate)
    };
    let eff_detuning: Arc<dyn Fn(f64) -> f64 + Send + Sync> = {
        let path = path.clone();
        Arc::new(move |t| -path.eta_dot(t) * chi.cos())
    };
    let cavity_shift = stark((2.0f64).sqrt() * p.g, p.delta);
    let full_detuning: Arc<dyn Fn(f64) -> [f64; 2] + Send + Sync> = {
        let (env, det) = (envelope.clone(), eff_detuning.clone());
        let (om, dl) = (p.omega_peak, p.delta);
        Arc::new(move |t| {
            let d = det(t) - stark(om * env(t), dl) + cavity_shift;
            [d, d]
        })
    };

    let model = TwoQubitModel {
        g1: p.g,
        g2: p.g,
        omega1: p.omega_peak,
        omega2: p.omega_peak,
        delta: p.delta,
        detuning: 0.0,
        n_max: p.n_max,
    };
    let full =
        two_nv_cavity_driven(&model, TwoQubitDrive { envelope: envelope.clone(), detuning: full_detuning, tau })?;
    let effective = effective_hamiltonian_driven(&eff, envelope, eff_detuning, tau);
    let grid = crate::control::uniform_grid(tau, p.steps + 1);
    let u_full = propagate_unitary(&full, &grid)?;
    let u_eff = propagate_unitary(&effective, &grid)?;
    let target = two_qubit_gate(eff.theta_mix, p.gamma);

    let computational: [(u8, u8); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let full_index = |bits: (u8, usize, u8)| model.qubit_index(bits.0, bits.1, bits.2);
    let leak_set = model.photon_manifold(p.n_max);
    let mut outcomes = Vec::with_capacity(4);
    for (col, &(m, l)) in computational.iter().enumerate() {
        let src = model.qubit_index(m, 0, l);
        let psi_full: Vec<C64> = (0..model.dim()).map(|i| u_full[(i, src)]).collect();

        let mut psi_eff = vec![C64::new(0.0, 0.0); model.dim()];
        if (m, l) == (0, 0) {
            psi_eff[src] = C64::new(1.0, 0.0);
        } else {
            let e_src = EFFECTIVE_BASIS
                .iter()
                .position(|&(a, n, b)| (a, n, b) == (m, 0, l))
                .expect("computational state in effective basis");
            for (r, &bits) in EFFECTIVE_BASIS.iter().enumerate() {
                psi_eff[full_index(bits)] = u_eff[(r, e_src)];
            }
        }
        let mut psi_target = vec![C64::new(0.0, 0.0); model.dim()];
        for (row, &(mm, ll)) in computational.iter().enumerate() {
            psi_target[model.qubit_index(mm, 0, ll)] = target[(row, col)];
        }
        let overlap =
            |a: &[C64], b: &[C64]| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>().norm_sqr().min(1.0);
        outcomes.push(BasisOutcome {
            input: format!("{m}0{l}"),
            fidelity_full_vs_effective: overlap(&psi_eff, &psi_full),
            fidelity_full_vs_target: overlap(&psi_target, &psi_full),
            fidelity_effective_vs_target: overlap(&psi_target, &psi_eff),
            leakage: leak_set.iter().map(|&i| psi_full[i].norm_sqr()).sum(),
        });
    }
    Ok(TwoQubitCheck { params: p, g1, g2, theta_mix: eff.theta_mix, tau, outcomes })
}

/// Computational block of a full-model propagator, on {|000⟩, |100⟩, |001⟩, |101⟩}.
pub fn computational_block(model: &TwoQubitModel, u: &CMatrix) -> CMatrix {
    let idx: Vec<usize> = [(0, 0), (1, 0), (0, 1), (1, 1)].iter().map(|&(m, l)| model.qubit_index(m, 0, l)).collect();
    u.select(&idx, &idx)
}
