use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::control::PulseSchedule;
use crate::error::{reject, Result};
use crate::linalg::{cis, eig_hermitian, expm_hermitian, CMatrix};

type HamFn = dyn Fn(f64) -> CMatrix + Send + Sync;

/// Fast carrier `e^{iω_j t}` factored out of a Hamiltonian:
/// `H(t) = e^{iWt} H_slow(t) e^{−iWt}` with diagonal `W`.
#[derive(Clone)]
pub(crate) struct CarrierFrame {
    pub(crate) frequencies: Vec<f64>,
    pub(crate) slow: Arc<HamFn>,
}

/// Time-dependent Hermitian Hamiltonian (rad/s) on a fixed-dimension space.
#[derive(Clone)]
pub struct HamiltonianModel {
    dim: usize,
    label: String,
    basis_labels: Vec<String>,
    hamiltonian: Arc<HamFn>,
    domain: Option<(f64, f64)>,
    rate_hint: Option<f64>,
    frame: Option<CarrierFrame>,
    blocks: Option<Vec<Vec<usize>>>,
}

impl fmt::Debug for HamiltonianModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HamiltonianModel")
            .field("dim", &self.dim)
            .field("label", &self.label)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl HamiltonianModel {
    pub fn new(
        dim: usize,
        label: impl Into<String>,
        hamiltonian: impl Fn(f64) -> CMatrix + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            label: label.into(),
            basis_labels: (0..dim).map(|i| i.to_string()).collect(),
            hamiltonian: Arc::new(hamiltonian),
            domain: None,
            rate_hint: None,
            frame: None,
            blocks: None,
        }
    }

    pub fn constant(h: CMatrix, label: impl Into<String>) -> Self {
        let dim = h.rows();
        Self::new(dim, label, move |_| h.clone())
    }

    /// Restrict evaluation to `[start, end]`.
    pub fn with_domain(mut self, start: f64, end: f64) -> Self {
        self.domain = Some((start, end));
        self
    }

    pub fn with_basis_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.basis_labels = labels;
        self
    }

    /// Upper bound on the spectral spread of H(t), used to size RK4 steps.
    pub fn with_rate_hint(mut self, rate: f64) -> Self {
        self.rate_hint = Some(rate);
        self
    }

    /// Declare invariant subspaces; step propagators are exponentiated per block.
    pub fn with_blocks(mut self, blocks: Vec<Vec<usize>>) -> Self {
        self.blocks = Some(blocks);
        self
    }

    pub(crate) fn with_frame(mut self, frame: CarrierFrame) -> Self {
        self.frame = Some(frame);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn domain(&self) -> Option<(f64, f64)> {
        self.domain
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if let Some((a, b)) = self.domain {
            if !(t >= a && t <= b) {
                return reject(format!("time {t:e} s outside model domain [{a:e}, {b:e}]"));
            }
        }
        if !t.is_finite() {
            return reject("non-finite time");
        }
        Ok(())
    }

    pub fn evaluate(&self, t: f64) -> Result<CMatrix> {
        self.check_time(t)?;
        Ok((self.hamiltonian)(t))
    }

    pub(crate) fn evaluate_unchecked(&self, t: f64) -> CMatrix {
        (self.hamiltonian)(t)
    }

    /// Largest transition frequency over `[t0, t1]`: the hint if set,
    /// otherwise the sampled eigenvalue spread.
    pub fn max_rate(&self, t0: f64, t1: f64) -> Result<f64> {
        if let Some(r) = self.rate_hint {
            return Ok(r);
        }
        let mut spread: f64 = 0.0;
        for i in 0..=64 {
            let t = t0 + (t1 - t0) * i as f64 / 64.0;
            let e = eig_hermitian(&self.evaluate(t)?)?;
            spread = spread.max(e.values[self.dim - 1] - e.values[0]);
        }
        Ok(spread)
    }

    /// Generator used for the step `[t0, t0 + h]`: `H(t_mid)`, or the slow
    /// part plus carrier frequencies when a carrier frame is attached.
    pub(crate) fn step_generator(&self, t_mid: f64) -> CMatrix {
        match &self.frame {
            Some(frame) => {
                let mut g = (frame.slow)(t_mid);
                for (i, w) in frame.frequencies.iter().enumerate() {
                    g[(i, i)] += w;
                }
                g
            }
            None => (self.hamiltonian)(t_mid),
        }
    }

    /// `exp(−i G h)`, block-wise when invariant blocks are declared.
    pub(crate) fn exponentiate(&self, generator: &CMatrix, h: f64) -> Result<CMatrix> {
        match &self.blocks {
            None => expm_hermitian(generator, -h),
            Some(blocks) => {
                let mut u = CMatrix::zeros(self.dim, self.dim);
                for block in blocks {
                    let sub = generator.select(block, block);
                    let ub = expm_hermitian(&sub, -h)?;
                    for (a, &i) in block.iter().enumerate() {
                        for (b, &j) in block.iter().enumerate() {
                            u[(i, j)] = ub[(a, b)];
                        }
                    }
                }
                Ok(u)
            }
        }
    }

    /// Undo the carrier frame around a step propagator.
    pub(crate) fn dress(&self, mut u: CMatrix, t0: f64, t1: f64) -> CMatrix {
        if let Some(frame) = &self.frame {
            let w = &frame.frequencies;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    u[(i, j)] *= cis(w[i] * t1 - w[j] * t0);
                }
            }
        }
        u
    }

    /// Midpoint-exponential propagator for one step.
    pub fn step_propagator(&self, t0: f64, t1: f64) -> Result<CMatrix> {
        self.check_time(t0)?;
        self.check_time(t1)?;
        let g = self.step_generator(0.5 * (t0 + t1));
        let u = self.exponentiate(&g, t1 - t0)?;
        Ok(self.dress(u, t0, t1))
    }
}

/// Rated collapse channel, `L = √rate · operator`.
#[derive(Debug, Clone)]
pub struct LindbladChannel {
    pub operator: CMatrix,
    pub rate: f64,
    pub label: String,
}

impl LindbladChannel {
    pub fn new(operator: CMatrix, rate: f64, label: impl Into<String>) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return reject(format!("channel rate {rate} must be non-negative and finite"));
        }
        if !operator.is_square() {
            return reject("channel operator must be square");
        }
        Ok(Self { operator, rate, label: label.into() })
    }

    /// `|to⟩⟨from|` on a `dim`-level system.
    pub fn transition(dim: usize, to: usize, from: usize, rate: f64, label: impl Into<String>) -> Result<Self> {
        let mut op = CMatrix::zeros(dim, dim);
        op[(to, from)] = C64::new(1.0, 0.0);
        Self::new(op, rate, label)
    }

    pub fn jump_operator(&self) -> CMatrix {
        self.operator.scale_real(self.rate.sqrt())
    }
}

/// Basis indices of the Λ system.
pub const GROUND_0: usize = 0;
pub const EXCITED: usize = 1;
pub const GROUND_1: usize = 2;

/// Λ-system Hamiltonian driven by a pulse schedule, basis {|0⟩, |e⟩, |1⟩}.
///
/// Couplings are `(Ω₀/2)e^{iφ₀}|0⟩⟨e| + (Ω₁/2)e^{iφ₁}|1⟩⟨e| + h.c.` with
/// `Ω₀ = −Ω sin(θ/2)`, `Ω₁ = Ω cos(θ/2)`, `φ₀ = φ + φ₁`, so that the drive
/// couples exactly the bright state: `⟨b|H|e⟩ = Ω e^{iφ₁}/2`.
pub fn lambda_hamiltonian(schedule: &PulseSchedule, theta: f64, phi: f64) -> Result<HamiltonianModel> {
    schedule.validate()?;
    let (s, c) = (theta / 2.0).sin_cos();
    let rate = schedule.omega.iter().zip(&schedule.delta).map(|(w, d)| w.hypot(*d)).fold(0.0, f64::max);
    let tau = schedule.tau;
    let sched = schedule.clone();
    let model = HamiltonianModel::new(3, "lambda", move |t| {
        let (omega, delta, phi1) = sched.interpolate(t.clamp(0.0, tau)).expect("time checked against the model domain");
        lambda_matrix(omega, delta, phi1, s, c, phi)
    });
    Ok(model.with_domain(0.0, tau).with_rate_hint(rate).with_basis_labels(vec!["0".into(), "e".into(), "1".into()]))
}

fn lambda_matrix(omega: f64, delta: f64, phi1: f64, s: f64, c: f64, phi: f64) -> CMatrix {
    let h0e = cis(phi + phi1) * (-0.5 * omega * s);
    let h1e = cis(phi1) * (0.5 * omega * c);
    let mut h = CMatrix::zeros(3, 3);
    h[(GROUND_0, EXCITED)] = h0e;
    h[(EXCITED, GROUND_0)] = h0e.conj();
    h[(GROUND_1, EXCITED)] = h1e;
    h[(EXCITED, GROUND_1)] = h1e.conj();
    h[(EXCITED, EXCITED)] = C64::new(delta, 0.0);
    h
}

/// The three Λ-system channels: decay |e⟩→|0⟩ (Γ₁), |e⟩→|1⟩ (Γ₂) and
/// dephasing of |e⟩ with operator rate 2Γφ.
pub fn lambda_channels(gamma1: f64, gamma2: f64, gamma_phi: f64) -> Result<Vec<LindbladChannel>> {
    let mut dephase = CMatrix::zeros(3, 3);
    dephase[(EXCITED, EXCITED)] = C64::new(1.0, 0.0);
    Ok(vec![
        LindbladChannel::transition(3, GROUND_0, EXCITED, gamma1, "decay-0")?,
        LindbladChannel::transition(3, GROUND_1, EXCITED, gamma2, "decay-1")?,
        LindbladChannel::new(dephase, 2.0 * gamma_phi, "dephasing")?,
    ])
}
