use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::control::{DurationConvention, EtaProfile, HolonomicPath};
use crate::dynamics::{PropagationResult, EXCITED};
use crate::error::{reject, Result};
use crate::linalg::cis;

/// Qubit input `sin(ω/2)|0⟩ + cos(ω/2)e^{iκ}|1⟩` together with the loop
/// that drives it, for evaluating the closed-form population.
#[derive(Debug, Clone)]
pub struct PopulationMeta<'a> {
    pub path: &'a HolonomicPath,
    pub omega: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationReport {
    /// ∫ P_e dt (s), trapezoidal.
    pub integrated: f64,
    /// integrated / τ
    pub time_averaged: f64,
    /// bracket(θ, ω, κ, φ) · f(τ), when metadata is supplied.
    pub closed_form_value: Option<f64>,
    /// f(τ) = ∫ sin²(η/2) sin²χ dt (s), when metadata is supplied.
    pub f_tau: Option<f64>,
}

/// Overlap factor |⟨b|ψ⟩|² for the input (ω, κ):
/// `cos²((θ+ω)/2) + sin θ sin ω sin²((φ+κ)/2)`.
pub fn population_bracket(theta: f64, omega: f64, kappa: f64, phi: f64) -> f64 {
    ((theta + omega) / 2.0).cos().powi(2) + theta.sin() * omega.sin() * ((phi + kappa) / 2.0).sin().powi(2)
}

/// `f(τ) = ∫₀^τ sin²(η/2) sin²χ dt` by composite Gauss-Legendre quadrature.
pub fn f_tau(path: &HolonomicPath) -> f64 {
    let panels = 64 * path.k() as usize + 64;
    let integrand = |t: f64| (path.eta(t) / 2.0).sin().powi(2);
    path.chi().sin().powi(2) * composite_gauss(&integrand, 0.0, path.tau(), panels)
}

pub(crate) fn composite_gauss(f: &dyn Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
    const W: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        for (x, w) in X.iter().zip(W) {
            acc += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * acc
}

fn trapezoid(t: &[f64], y: &[f64]) -> f64 {
    t.windows(2).zip(y.windows(2)).map(|(tw, yw)| 0.5 * (tw[1] - tw[0]) * (yw[0] + yw[1])).sum()
}

/// Time-integrated population of `e_index` along a trajectory.
pub fn integrated_excited_population(
    traj: &PropagationResult,
    e_index: usize,
    meta: Option<PopulationMeta<'_>>,
) -> Result<PopulationReport> {
    if traj.len() < 2 {
        return reject("trajectory needs at least two samples");
    }
    let span = traj.grid[traj.len() - 1] - traj.grid[0];
    let integrated = trapezoid(&traj.grid, &traj.populations(e_index));
    let (closed, f) = match meta {
        Some(m) => {
            let f = f_tau(m.path);
            let br = population_bracket(m.path.theta(), m.omega, m.kappa, m.path.phi());
            (Some(br * f), Some(f))
        }
        None => (None, None),
    };
    Ok(PopulationReport { integrated, time_averaged: integrated / span, closed_form_value: closed, f_tau: f })
}

/// |⟨e|U(t)|q⟩| row of the closed-form propagator, for q = |0⟩, |1⟩.
fn excited_row(path: &HolonomicPath, t: f64) -> [C64; 2] {
    let u = path.propagator_at(t);
    [u[(EXCITED, 0)], u[(EXCITED, 2)]]
}

/// Sampling measure over qubit inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputSampling {
    /// Uniform on the Bloch sphere, `n` seeded samples.
    Haar { n: usize, seed: u64 },
    /// Midpoint grid on (ω, κ) ∈ [0, π] × [0, 2π] with the flat weight
    /// (1/4π) dω dκ.
    FlatGrid { n_omega: usize, n_kappa: usize },
}

/// Average integrated population and the analytic candidates it is compared with.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AveragePopulation {
    pub sampling: InputSampling,
    pub empirical: f64,
    /// Monte-Carlo standard error (0 for the deterministic grid).
    pub standard_error: f64,
    pub f_tau: f64,
    /// f(τ)/2: average of |⟨b|ψ⟩|² over the uniform measure.
    pub haar_candidate: f64,
    /// (π/4)·f(τ): the flat (1/4π)∫∫dωdκ weight, which integrates to π/2.
    pub flat_measure_candidate: f64,
    /// f(τ)/8
    pub eighth_candidate: f64,
    /// Name of the candidate closest to the empirical value.
    pub matched: String,
}

/// Haar-random qubit state as amplitudes on (|0⟩, |1⟩).
pub fn haar_qubit(rng: &mut impl rand::Rng) -> [C64; 2] {
    let mut v = [C64::new(0.0, 0.0); 2];
    for a in v.iter_mut() {
        *a = C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    }
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Average integrated excited population over qubit inputs, with the
/// population quadrature done on the closed-form propagator.
pub fn average_integrated_population(
    path: &HolonomicPath,
    sampling: InputSampling,
    time_samples: usize,
) -> Result<AveragePopulation> {
    if time_samples < 2 {
        return reject("need at least two time samples");
    }
    let grid = path.grid(time_samples);
    // P(ψ) = ψ† M ψ with M = Σ_t w_t r(t)† r(t)
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for (i, &t) in grid.iter().enumerate() {
        let w =
            if i == 0 || i == grid.len() - 1 { 0.5 * (grid[1] - grid[0]) } else { 0.5 * (grid[i + 1] - grid[i - 1]) };
        let r = excited_row(path, t);
        for a in 0..2 {
            for b in 0..2 {
                m[a][b] += r[a].conj() * r[b] * w;
            }
        }
    }
    let value = |psi: [C64; 2]| -> f64 {
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..2 {
            for b in 0..2 {
                acc += psi[a].conj() * m[a][b] * psi[b];
            }
        }
        acc.re
    };
    let (empirical, standard_error) = match sampling {
        InputSampling::Haar { n, seed } => {
            if n < 2 {
                return reject("Haar sampling needs at least two samples");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vals: Vec<f64> = (0..n).map(|_| value(haar_qubit(&mut rng))).collect();
            mean_and_error(&vals)
        }
        InputSampling::FlatGrid { n_omega, n_kappa } => {
            if n_omega == 0 || n_kappa == 0 {
                return reject("grid sampling needs non-empty axes");
            }
            let (dw, dk) = (PI / n_omega as f64, 2.0 * PI / n_kappa as f64);
            let mut acc = 0.0;
            for i in 0..n_omega {
                let w = (i as f64 + 0.5) * dw;
                for j in 0..n_kappa {
                    let k = (j as f64 + 0.5) * dk;
                    acc += value([C64::new((w / 2.0).sin(), 0.0), cis(k) * (w / 2.0).cos()]);
                }
            }
            (acc * dw * dk / (4.0 * PI), 0.0)
        }
    };
    let f = f_tau(path);
    let candidates = [("haar-half", f / 2.0), ("flat-measure-pi-quarter", PI / 4.0 * f), ("one-eighth", f / 8.0)];
    let matched = candidates
        .iter()
        .min_by(|a, b| (a.1 - empirical).abs().total_cmp(&(b.1 - empirical).abs()))
        .map(|c| c.0.to_string())
        .unwrap_or_default();
    Ok(AveragePopulation {
        sampling,
        empirical,
        standard_error,
        f_tau: f,
        haar_candidate: candidates[0].1,
        flat_measure_candidate: candidates[1].1,
        eighth_candidate: candidates[2].1,
        matched,
    })
}

pub(crate) fn mean_and_error(vals: &[f64]) -> (f64, f64) {
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Haar Monte-Carlo estimate of the instantaneous excited population at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstantaneousAverage {
    pub t: f64,
    pub mean: f64,
    pub standard_error: f64,
    /// ½ sin²(η/2) sin²χ
    pub predicted: f64,
}

pub fn haar_instantaneous_population(
    path: &HolonomicPath,
    t: f64,
    n: usize,
    rng: &mut impl rand::Rng,
) -> InstantaneousAverage {
    let r = excited_row(path, t);
    let vals: Vec<f64> = (0..n)
        .map(|_| {
            let psi = haar_qubit(rng);
            (r[0] * psi[0] + r[1] * psi[1]).norm_sqr()
        })
        .collect();
    let (mean, standard_error) = mean_and_error(&vals);
    InstantaneousAverage {
        t,
        mean,
        standard_error,
        predicted: 0.5 * (path.eta(t) / 2.0).sin().powi(2) * path.chi().sin().powi(2),
    }
}

/// One row of a constant-χ population scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PopulationRow {
    pub k: u32,
    pub gamma: f64,
    pub schedule: DurationConvention,
    /// Input-averaged (uniform measure) population divided by τ.
    pub time_avg_pop: f64,
    /// Input-averaged integrated population (s).
    pub integrated_pop_s: f64,
    pub tau_s: f64,
}

/// Input-averaged excited population for each k at fixed γ, by trapezoidal
/// quadrature of the closed-form propagator.
pub fn constant_chi_population_scan(
    gamma: f64,
    k_list: &[u32],
    profile: &EtaProfile,
    omega0: f64,
    conventions: &[DurationConvention],
    samples_per_loop: usize,
) -> Result<Vec<PopulationRow>> {
    let mut rows = Vec::new();
    for &convention in conventions {
        for &k in k_list {
            let path = HolonomicPath::with_convention(
                std::f64::consts::FRAC_PI_2,
                0.0,
                gamma,
                k,
                profile.clone(),
                omega0,
                convention,
            )?;
            let n = samples_per_loop.max(8) * k as usize + 1;
            let grid = path.grid(n);
            let pops: Vec<f64> = grid
                .iter()
                .map(|&t| {
                    let r = excited_row(&path, t);
                    0.5 * (r[0].norm_sqr() + r[1].norm_sqr())
                })
                .collect();
            let integrated = trapezoid(&grid, &pops);
            rows.push(PopulationRow {
                k,
                gamma,
                schedule: convention,
                time_avg_pop: integrated / path.tau(),
                integrated_pop_s: integrated,
                tau_s: path.tau(),
            });
        }
    }
    Ok(rows)
}
