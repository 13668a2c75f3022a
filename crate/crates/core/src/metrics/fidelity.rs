use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::{
    evolve_operators, propagate_lindblad, HamiltonianModel, LindbladChannel, LindbladSettings, POSITIVITY_FAIL_TOL,
    TRACE_FAIL_TOL,
};
use crate::error::{reject, Result};
use crate::linalg::{eig_hermitian, CMatrix, DensityMatrix, StateVector};

/// `⟨ψ|ρ|ψ⟩` clipped to [0, 1].
pub fn state_fidelity(rho: &DensityMatrix, target: &StateVector) -> Result<f64> {
    if rho.dim() != target.dim() {
        return reject(format!("ρ has dimension {}, target has {}", rho.dim(), target.dim()));
    }
    Ok(rho.expectation(target).clamp(0.0, 1.0))
}

/// How the ζ inputs are propagated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    /// Propagate |0⟩⟨0|, |1⟩⟨1| and |0⟩⟨1| + |1⟩⟨0| once and rebuild every
    /// ρ_ζ by linearity of the master equation.
    #[default]
    LinearBasis,
    /// One Lindblad run per ζ.
    PerState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub n_zeta: usize,
    pub mode: SweepMode,
    pub lindblad: LindbladSettings,
    /// Retained samples (including both ends) for the fidelity-vs-time curve.
    pub time_samples: usize,
    /// Model indices of the qubit levels |0⟩, |1⟩.
    pub qubit_levels: [usize; 2],
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            n_zeta: 1001,
            mode: SweepMode::LinearBasis,
            lindblad: LindbladSettings::default(),
            time_samples: 101,
            qubit_levels: [0, 2],
        }
    }
}

/// Per-input fidelities of `cos ζ|0⟩ + sin ζ|1⟩` against `target·ψ(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityReport {
    pub definition: &'static str,
    /// (ζ, final fidelity)
    pub per_state: Vec<(f64, f64)>,
    pub average: f64,
    /// (t, ζ-averaged fidelity at t)
    pub dynamics: Vec<(f64, f64)>,
    /// ζ indices whose integrator diagnostics failed.
    pub failing: Vec<usize>,
    pub max_trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub steps: usize,
}

impl FidelityReport {
    pub fn partial(&self) -> bool {
        !self.failing.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.per_state.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.per_state.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
    }

    /// CSV `zeta_rad,fidelity`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["zeta_rad", "fidelity"])?;
        for (z, f) in &self.per_state {
            w.write_record([format!("{z:.16e}"), format!("{f:.16e}")])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Summary with average, extremes and an echo of the run parameters.
    pub fn summary_json(&self, parameters: serde_json::Value) -> serde_json::Value {
        serde_json::json!({
            "definition": self.definition,
            "n_states": self.per_state.len(),
            "average": self.average,
            "min": self.min(),
            "max": self.max(),
            "failing": self.failing,
            "max_trace_deviation": self.max_trace_deviation,
            "min_eigenvalue": self.min_eigenvalue,
            "steps": self.steps,
            "parameters": parameters,
        })
    }
}

/// ζ grid: `n` uniform points on [0, 2π], both ends included.
pub fn zeta_grid(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.0];
    }
    (0..n).map(|i| 2.0 * PI * i as f64 / (n - 1) as f64).collect()
}

fn embed(dim: usize, levels: [usize; 2], amps: [C64; 2]) -> StateVector {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[levels[0]] = amps[0];
    v[levels[1]] = amps[1];
    StateVector::from_raw(v)
}

struct ZetaCase {
    input: StateVector,
    target: StateVector,
}

fn cases(dim: usize, target: &CMatrix, settings: &SweepSettings) -> (Vec<f64>, Vec<ZetaCase>) {
    let zetas = zeta_grid(settings.n_zeta);
    let cases = zetas
        .iter()
        .map(|&z| {
            let (s, c) = z.sin_cos();
            let a = [C64::new(c, 0.0), C64::new(s, 0.0)];
            let t = target.apply(&a);
            ZetaCase {
                input: embed(dim, settings.qubit_levels, a),
                target: embed(dim, settings.qubit_levels, [t[0], t[1]]),
            }
        })
        .collect();
    (zetas, cases)
}

struct CaseOutcome {
    curve: Vec<f64>,
    trace_dev: f64,
    min_eig: f64,
    failed: bool,
}

fn judge(rhos: impl Iterator<Item = CMatrix>, target: &StateVector) -> Result<CaseOutcome> {
    let mut out = CaseOutcome { curve: Vec::new(), trace_dev: 0.0, min_eig: 1.0, failed: false };
    for m in rhos {
        let rho = DensityMatrix::from_raw(m);
        out.trace_dev = out.trace_dev.max(rho.trace_deviation());
        out.min_eig = out.min_eig.min(eig_hermitian(&rho.matrix().hermitian_part())?.values[0]);
        out.curve.push(state_fidelity(&rho, target)?);
    }
    out.failed = out.trace_dev > TRACE_FAIL_TOL || out.min_eig < POSITIVITY_FAIL_TOL;
    Ok(out)
}

/// Average state fidelity of a qubit gate over the real-amplitude ζ inputs.
pub fn gate_fidelity_zeta_sweep(
    model: &HamiltonianModel,
    channels: &[LindbladChannel],
    target: &CMatrix,
    settings: SweepSettings,
) -> Result<FidelityReport> {
    if target.rows() != 2 || target.cols() != 2 {
        return reject("target must be a 2×2 qubit gate");
    }
    if settings.n_zeta == 0 || settings.time_samples < 2 {
        return reject("need at least one ζ value and two time samples");
    }
    let dim = model.dim();
    if settings.qubit_levels.iter().any(|&l| l >= dim) || settings.qubit_levels[0] == settings.qubit_levels[1] {
        return reject("qubit levels must be two distinct model indices");
    }
    let (t0, t1) =
        model.domain().ok_or_else(|| crate::Error::RejectedInput("model needs a bounded time domain".into()))?;
    let times: Vec<f64> = (0..settings.time_samples)
        .map(|i| {
            if i + 1 == settings.time_samples {
                t1
            } else {
                t0 + (t1 - t0) * i as f64 / (settings.time_samples - 1) as f64
            }
        })
        .collect();
    let (zetas, cases) = cases(dim, target, &settings);

    let (outcomes, steps, run_failed): (Vec<CaseOutcome>, usize, bool) = match settings.mode {
        SweepMode::LinearBasis => {
            let [l0, l1] = settings.qubit_levels;
            let mut e00 = CMatrix::zeros(dim, dim);
            e00[(l0, l0)] = C64::new(1.0, 0.0);
            let mut e11 = CMatrix::zeros(dim, dim);
            e11[(l1, l1)] = C64::new(1.0, 0.0);
            let mut x = CMatrix::zeros(dim, dim);
            x[(l0, l1)] = C64::new(1.0, 0.0);
            x[(l1, l0)] = C64::new(1.0, 0.0);
            let run = evolve_operators(model, channels, &[e00, e11, x], &times, settings.lindblad)?;
            let outcomes = zetas
                .par_iter()
                .zip(cases.par_iter())
                .map(|(&z, case)| {
                    let (s, c) = z.sin_cos();
                    let rhos = run.samples.iter().map(|ops| {
                        let mut m = ops[0].scale_real(c * c);
                        m = &m + &ops[1].scale_real(s * s);
                        &m + &ops[2].scale_real(s * c)
                    });
                    judge(rhos, &case.target)
                })
                .collect::<Result<Vec<_>>>()?;
            (outcomes, run.steps, run.failure.is_some())
        }
        SweepMode::PerState => {
            let runs = cases
                .par_iter()
                .map(|case| {
                    let rho0 = case.input.to_density();
                    let r = propagate_lindblad(model, channels, &rho0, &times, settings.lindblad)?;
                    let mats = match r.trajectory {
                        crate::dynamics::Trajectory::Mixed(v) => v.into_iter().map(DensityMatrix::into_matrix),
                        crate::dynamics::Trajectory::Pure(_) => unreachable!("Lindblad runs are mixed"),
                    };
                    let mut o = judge(mats, &case.target)?;
                    o.failed |= r.diagnostics.failure.is_some();
                    Ok((o, r.diagnostics.steps))
                })
                .collect::<Result<Vec<_>>>()?;
            let steps = runs.first().map_or(0, |r| r.1);
            (runs.into_iter().map(|r| r.0).collect(), steps, false)
        }
    };

    let n = outcomes.len() as f64;
    let per_state: Vec<(f64, f64)> =
        zetas.iter().zip(&outcomes).map(|(&z, o)| (z, *o.curve.last().expect("at least two samples"))).collect();
    let dynamics =
        times.iter().enumerate().map(|(i, &t)| (t, outcomes.iter().map(|o| o.curve[i]).sum::<f64>() / n)).collect();
    let failing = (0..outcomes.len()).filter(|&i| run_failed || outcomes[i].failed).collect();
    Ok(FidelityReport {
        definition: "state-overlap-average",
        average: per_state.iter().map(|p| p.1).sum::<f64>() / n,
        per_state,
        dynamics,
        failing,
        max_trace_deviation: outcomes.iter().map(|o| o.trace_dev).fold(0.0, f64::max),
        min_eigenvalue: outcomes.iter().map(|o| o.min_eig).fold(1.0, f64::min),
        steps,
    })
}

/// `|Tr(U†V)|/2` between a qubit block and the target, for diagnostics.
pub fn process_fidelity(qubit_block: &CMatrix, target: &CMatrix) -> Result<f64> {
    crate::gates::gate_overlap(target, qubit_block)
}
