use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{reject, Result};

/// Normalized loop shape `g(s)` on `s = t/τ ∈ [0, 1]`, with `η(t) = 2kπ·g(t/τ)`.
#[derive(Clone)]
pub enum EtaProfile {
    /// `g(s) = s`
    Linear,
    /// `g(s) = s − sin(2πs)/(2π)`; zero slope at both ends.
    SineRamp,
    /// User-supplied shape and its derivative. Must satisfy g(0) = 0, g(1) = 1.
    Custom { name: String, g: fn(f64) -> f64, dg: fn(f64) -> f64 },
}

impl fmt::Debug for EtaProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl EtaProfile {
    pub fn name(&self) -> &str {
        match self {
            EtaProfile::Linear => "linear",
            EtaProfile::SineRamp => "sine-ramp",
            EtaProfile::Custom { name, .. } => name,
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "linear" => Some(EtaProfile::Linear),
            "sine-ramp" => Some(EtaProfile::SineRamp),
            _ => None,
        }
    }

    pub fn g(&self, s: f64) -> f64 {
        match self {
            EtaProfile::Linear => s,
            EtaProfile::SineRamp => s - (2.0 * PI * s).sin() / (2.0 * PI),
            EtaProfile::Custom { g, .. } => g(s),
        }
    }

    pub fn dg(&self, s: f64) -> f64 {
        match self {
            EtaProfile::Linear => 1.0,
            EtaProfile::SineRamp => 1.0 - (2.0 * PI * s).cos(),
            EtaProfile::Custom { dg, .. } => dg(s),
        }
    }

    /// max g'(s) over [0, 1]: ratio of peak to mean loop rate.
    pub fn peak_slope(&self) -> f64 {
        match self {
            EtaProfile::Linear => 1.0,
            EtaProfile::SineRamp => 2.0,
            EtaProfile::Custom { dg, .. } => (0..=4096).map(|i| dg(i as f64 / 4096.0).abs()).fold(0.0, f64::max),
        }
    }
}

/// How the gate duration follows from the reference Rabi frequency Ω₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DurationConvention {
    /// Mean loop rate η̇ = Ω₀, so τ = 2kπ/Ω₀.
    FixedRate,
    /// Peak Rabi amplitude η̇·sin χ = Ω₀, so τ = 2kπ·sin χ·peak_slope/Ω₀.
    FixedAmplitude,
}

impl DurationConvention {
    pub fn name(self) -> &'static str {
        match self {
            DurationConvention::FixedRate => "fixed-rate",
            DurationConvention::FixedAmplitude => "fixed-amplitude",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "fixed-rate" => Some(DurationConvention::FixedRate),
            "fixed-amplitude" => Some(DurationConvention::FixedAmplitude),
            _ => None,
        }
    }
}

/// Cone angle that yields geometric phase `gamma` after `k` loops.
pub fn chi_from_gamma(gamma: f64, k: u32) -> Result<f64> {
    if k == 0 {
        return reject("k must be at least 1");
    }
    let kpi = k as f64 * PI;
    let c = 1.0 - gamma / kpi;
    if !(gamma > 0.0 && gamma < 2.0 * kpi) || !(c > -1.0 && c < 1.0) {
        return reject(format!("gamma = {gamma} outside (0, 2kπ) for k = {k}: cos χ = {c} not in (-1, 1)"));
    }
    Ok(c.acos())
}

/// Result of the holonomic/cyclic test `sin(η(τ)/2)·sin χ(τ) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolonomicCheck {
    pub passed: bool,
    pub sin_half_eta: f64,
    pub sin_chi: f64,
    pub product: f64,
}

pub const HOLONOMIC_TOL: f64 = 1e-10;

pub fn check_holonomic_condition(eta_tau: f64, chi_tau: f64) -> HolonomicCheck {
    let sin_half_eta = (eta_tau / 2.0).sin();
    let sin_chi = chi_tau.sin();
    let product = sin_half_eta * sin_chi;
    HolonomicCheck { passed: product.abs() <= HOLONOMIC_TOL, sin_half_eta, sin_chi, product }
}

/// One constant-χ holonomic loop: bright-state angles, target phase, loop
/// count, loop shape and duration.
#[derive(Debug, Clone)]
pub struct HolonomicPath {
    theta: f64,
    phi: f64,
    gamma: f64,
    k: u32,
    chi: f64,
    profile: EtaProfile,
    tau: f64,
}

impl HolonomicPath {
    pub fn new(theta: f64, phi: f64, gamma: f64, k: u32, profile: EtaProfile, tau: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return reject(format!("theta = {theta} outside [0, π]"));
        }
        if !phi.is_finite() {
            return reject("phi must be finite");
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return reject(format!("duration tau = {tau} must be positive and finite"));
        }
        let chi = chi_from_gamma(gamma, k)?;
        Ok(Self { theta, phi, gamma, k, chi, profile, tau })
    }

    /// Path whose duration follows from Ω₀ under `convention`.
    pub fn with_convention(
        theta: f64,
        phi: f64,
        gamma: f64,
        k: u32,
        profile: EtaProfile,
        omega0: f64,
        convention: DurationConvention,
    ) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return reject(format!("omega0 = {omega0} must be positive"));
        }
        let chi = chi_from_gamma(gamma, k)?;
        let loops = 2.0 * PI * k as f64;
        let tau = match convention {
            DurationConvention::FixedRate => loops / omega0,
            DurationConvention::FixedAmplitude => loops * chi.sin() * profile.peak_slope() / omega0,
        };
        Self::new(theta, phi, gamma, k, profile, tau)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn phi(&self) -> f64 {
        self.phi
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn chi(&self) -> f64 {
        self.chi
    }
    pub fn profile(&self) -> &EtaProfile {
        &self.profile
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn total_angle(&self) -> f64 {
        2.0 * PI * self.k as f64
    }

    pub fn eta(&self, t: f64) -> f64 {
        self.total_angle() * self.profile.g(t / self.tau)
    }

    pub fn eta_dot(&self, t: f64) -> f64 {
        self.total_angle() * self.profile.dg(t / self.tau) / self.tau
    }

    /// Dynamical phase accumulated so far, `α(t) = −η(t)·cos χ / 2`.
    pub fn alpha(&self, t: f64) -> f64 {
        -0.5 * self.eta(t) * self.chi.cos()
    }

    /// Peak Rabi frequency `max η̇·sin χ`.
    pub fn peak_rabi(&self) -> f64 {
        self.total_angle() * self.profile.peak_slope() / self.tau * self.chi.sin()
    }

    pub fn holonomic_check(&self) -> HolonomicCheck {
        check_holonomic_condition(self.eta(self.tau), self.chi)
    }

    /// Uniform grid of `samples` points on [0, τ].
    pub fn grid(&self, samples: usize) -> Vec<f64> {
        uniform_grid(self.tau, samples)
    }
}

pub fn uniform_grid(tau: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2) - 1;
    (0..=n).map(|i| if i == n { tau } else { tau * i as f64 / n as f64 }).collect()
}
