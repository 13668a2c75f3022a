use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{Diagnostics, HamiltonianModel, LindbladChannel, PropagationResult, Trajectory};
use crate::error::{reject, Result};
use crate::linalg::{CMatrix, DensityMatrix};

/// Trace drift that flags a run as failed.
pub const TRACE_FAIL_TOL: f64 = 1e-7;
/// Eigenvalue below which a retained ρ is flagged as non-positive.
pub const POSITIVITY_FAIL_TOL: f64 = -1e-6;

/// Fixed-step RK4 sizing: `h = min(2π / (steps_per_period · ω_max), span / min_steps)`,
/// where ω_max bounds both the Hamiltonian spread and the total decay rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LindbladSettings {
    pub steps_per_period: f64,
    pub min_steps: usize,
}

impl Default for LindbladSettings {
    fn default() -> Self {
        Self { steps_per_period: 50.0, min_steps: 1000 }
    }
}

impl LindbladSettings {
    /// Same rule with the step halved.
    pub fn refined(self) -> Self {
        Self { steps_per_period: 2.0 * self.steps_per_period, min_steps: 2 * self.min_steps }
    }
}

/// Row-major vectorized superoperators: `vec(ρ)[i·d + j] = ρ_ij`.
struct Superop {
    d: usize,
    dissipator: Vec<C64>,
}

impl Superop {
    fn new(d: usize, channels: &[LindbladChannel]) -> Self {
        let n = d * d;
        let mut diss = vec![C64::new(0.0, 0.0); n * n];
        for ch in channels {
            if ch.rate == 0.0 {
                continue;
            }
            let a = ch.jump_operator();
            let ada = &a.adjoint() * &a;
            for i in 0..d {
                for j in 0..d {
                    let row = (i * d + j) * n;
                    for k in 0..d {
                        for l in 0..d {
                            let mut v = a[(i, k)] * a[(j, l)].conj();
                            if l == j {
                                v -= 0.5 * ada[(i, k)];
                            }
                            if k == i {
                                v -= 0.5 * ada[(l, j)];
                            }
                            diss[row + k * d + l] += v;
                        }
                    }
                }
            }
        }
        Self { d, dissipator: diss }
    }

    fn full(&self, h: &CMatrix) -> Vec<C64> {
        let d = self.d;
        let n = d * d;
        let mut l = self.dissipator.clone();
        let mi = C64::new(0.0, -1.0);
        for i in 0..d {
            for j in 0..d {
                let row = (i * d + j) * n;
                // −i(Hρ)_ij = −i Σ_k H_ik ρ_kj
                for k in 0..d {
                    l[row + k * d + j] += mi * h[(i, k)];
                }
                // +i(ρH)_ij = +i Σ_l ρ_il H_lj
                for m in 0..d {
                    l[row + i * d + m] -= mi * h[(m, j)];
                }
            }
        }
        l
    }
}

fn matvec(m: &[C64], v: &[C64], out: &mut [C64]) {
    let n = v.len();
    for (i, o) in out.iter_mut().enumerate() {
        let row = &m[i * n..(i + 1) * n];
        *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
}

fn matmul_sq(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// One-step RK4 map `I + hL + (hL)²/2 + (hL)³/6 + (hL)⁴/24` for constant L.
fn rk4_map(l: &[C64], h: f64, n: usize) -> Vec<C64> {
    let hl: Vec<C64> = l.iter().map(|x| x * h).collect();
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        out[i * n + i] = C64::new(1.0, 0.0);
    }
    let mut term = hl.clone();
    for (p, fact) in [(1, 1.0), (2, 2.0), (3, 6.0), (4, 24.0)] {
        if p > 1 {
            term = matmul_sq(&term, &hl, n);
        }
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t / fact;
        }
    }
    out
}

fn symmetrize(v: &mut [C64], d: usize) {
    for i in 0..d {
        v[i * d + i].im = 0.0;
        for j in i + 1..d {
            let a = 0.5 * (v[i * d + j] + v[j * d + i].conj());
            v[i * d + j] = a;
            v[j * d + i] = a.conj();
        }
    }
}

fn trace(v: &[C64], d: usize) -> C64 {
    (0..d).map(|i| v[i * d + i]).sum()
}

/// Several Hermitian operators evolved under the same Lindbladian.
pub(crate) struct OperatorRun {
    /// `samples[s][o]`: operator `o` at sample time `s`.
    pub samples: Vec<Vec<CMatrix>>,
    pub steps: usize,
    pub max_trace_deviation: f64,
    pub failure: Option<(usize, f64, String)>,
}

pub(crate) fn step_size(
    model: &HamiltonianModel,
    channels: &[LindbladChannel],
    times: &[f64],
    settings: LindbladSettings,
) -> Result<f64> {
    let (t0, t1) = (times[0], times[times.len() - 1]);
    let gamma_total: f64 = channels.iter().map(|c| c.rate).sum();
    let omega_max = model.max_rate(t0, t1)?.max(gamma_total);
    let span_step = (t1 - t0) / settings.min_steps.max(1) as f64;
    Ok(if omega_max > 0.0 { (2.0 * PI / (settings.steps_per_period * omega_max)).min(span_step) } else { span_step })
}

pub(crate) fn evolve_operators(
    model: &HamiltonianModel,
    channels: &[LindbladChannel],
    ops: &[CMatrix],
    times: &[f64],
    settings: LindbladSettings,
) -> Result<OperatorRun> {
    let d = model.dim();
    if times.len() < 2 || times.windows(2).any(|w| !(w[1] > w[0])) {
        return reject("sample times must be at least two strictly increasing points");
    }
    if !(settings.steps_per_period > 0.0) {
        return reject("steps_per_period must be positive");
    }
    for ch in channels {
        if ch.operator.rows() != d {
            return reject(format!("channel '{}' has dimension {}, model has {d}", ch.label, ch.operator.rows()));
        }
    }
    for op in ops {
        if op.rows() != d || op.cols() != d {
            return reject("operator dimension does not match the model");
        }
    }
    model.evaluate(times[0])?;
    model.evaluate(times[times.len() - 1])?;

    let n = d * d;
    let sup = Superop::new(d, channels);
    let h_target = step_size(model, channels, times, settings)?;
    let mut state: Vec<Vec<C64>> = ops.iter().map(|m| m.as_slice().to_vec()).collect();
    let initial_traces: Vec<C64> = state.iter().map(|v| trace(v, d)).collect();
    let snapshot = |state: &Vec<Vec<C64>>| -> Vec<CMatrix> {
        state.iter().map(|v| CMatrix::from_row_major(d, d, v.clone()).expect("square")).collect()
    };
    let mut run = OperatorRun { samples: vec![snapshot(&state)], steps: 0, max_trace_deviation: 0.0, failure: None };

    let mut cached: Option<(CMatrix, f64, Vec<C64>)> = None;
    let mut k = [
        vec![C64::new(0.0, 0.0); n],
        vec![C64::new(0.0, 0.0); n],
        vec![C64::new(0.0, 0.0); n],
        vec![C64::new(0.0, 0.0); n],
    ];
    let mut tmp = vec![C64::new(0.0, 0.0); n];
    let mut next = vec![C64::new(0.0, 0.0); n];

    for w in times.windows(2) {
        let (a, b) = (w[0], w[1]);
        let m = ((b - a) / h_target).ceil().max(1.0) as usize;
        let h = (b - a) / m as f64;
        for s in 0..m {
            let t = a + h * s as f64;
            let h0 = model.evaluate_unchecked(t);
            let hm = model.evaluate_unchecked(t + 0.5 * h);
            let h1 = model.evaluate_unchecked(t + h);
            let constant = h0 == hm && hm == h1;
            if constant {
                let reuse = matches!(&cached, Some((ch, chh, _)) if *chh == h && *ch == h0);
                if !reuse {
                    let p = rk4_map(&sup.full(&h0), h, n);
                    cached = Some((h0, h, p));
                }
                let p = &cached.as_ref().expect("just filled").2;
                for v in state.iter_mut() {
                    matvec(p, v, &mut next);
                    v.copy_from_slice(&next);
                }
            } else {
                let l0 = sup.full(&h0);
                let lm = sup.full(&hm);
                let l1 = sup.full(&h1);
                for v in state.iter_mut() {
                    matvec(&l0, v, &mut k[0]);
                    for i in 0..n {
                        tmp[i] = v[i] + 0.5 * h * k[0][i];
                    }
                    matvec(&lm, &tmp, &mut k[1]);
                    for i in 0..n {
                        tmp[i] = v[i] + 0.5 * h * k[1][i];
                    }
                    matvec(&lm, &tmp, &mut k[2]);
                    for i in 0..n {
                        tmp[i] = v[i] + h * k[2][i];
                    }
                    matvec(&l1, &tmp, &mut k[3]);
                    for i in 0..n {
                        v[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
                    }
                }
            }
            run.steps += 1;
            for (v, tr0) in state.iter_mut().zip(&initial_traces) {
                symmetrize(v, d);
                let dev = (trace(v, d) - tr0).norm();
                run.max_trace_deviation = run.max_trace_deviation.max(dev);
                if dev > TRACE_FAIL_TOL && run.failure.is_none() {
                    run.failure = Some((run.steps, t + h, format!("trace drift {dev:.3e}")));
                }
            }
        }
        run.samples.push(snapshot(&state));
    }
    Ok(run)
}

/// Open-system propagation of ρ with fixed-step RK4, recorded at `times`.
pub fn propagate_lindblad(
    model: &HamiltonianModel,
    channels: &[LindbladChannel],
    rho0: &DensityMatrix,
    times: &[f64],
    settings: LindbladSettings,
) -> Result<PropagationResult> {
    if rho0.dim() != model.dim() {
        return reject(format!("initial ρ has dimension {}, model has {}", rho0.dim(), model.dim()));
    }
    let run = evolve_operators(model, channels, std::slice::from_ref(rho0.matrix()), times, settings)?;
    let mut diag = Diagnostics::new();
    diag.steps = run.steps;
    diag.max_norm_deviation = run.max_trace_deviation;
    if let Some((step, t, why)) = run.failure {
        diag.fail(step, t, why);
    }
    let mut states = Vec::with_capacity(run.samples.len());
    for (i, mut ops) in run.samples.into_iter().enumerate() {
        let rho = DensityMatrix::from_raw(ops.pop().expect("one operator"));
        let min = rho.min_eigenvalue()?;
        diag.min_eigenvalue = diag.min_eigenvalue.min(min);
        if min < POSITIVITY_FAIL_TOL {
            diag.fail(i, times[i], format!("negative eigenvalue {min:.3e}"));
        }
        states.push(rho);
    }
    Ok(PropagationResult {
        grid: times.to_vec(),
        trajectory: Trajectory::Mixed(states),
        diagnostics: diag,
        basis_labels: model.basis_labels().to_vec(),
    })
}
