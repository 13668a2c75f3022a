use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64 as C64;

use super::{lambda_propagator, uniform_grid, HolonomicPath, PulseSchedule};
use crate::error::{Error, Result};
use crate::gates::bright_dark_basis;
use crate::linalg::{cis, CMatrix};

/// Relative tolerance on η(0) = 0 and η(τ) = 2kπ.
pub const CYCLIC_TOL: f64 = 1e-12;

/// Off-structure residual allowed when reading controls off `iU̇U†`,
/// relative to max|H|.
pub const STRUCTURE_TOL: f64 = 1e-6;

/// Which form of the general control expressions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ControlFormula {
    /// Half-angle form, consistent with `H = iU̇U†`:
    /// Ω² = 4χ̇² sin⁴(η/2) + (η̇ sin χ + χ̇ cos χ sin η)², tan ξ uses 2χ̇ sin²(η/2).
    #[default]
    HalfAngle,
    /// Full-angle sin⁴η / sin²η variant. Agrees with `HalfAngle` only when χ̇ = 0.
    FullAngle,
}

/// Controls for a constant-χ loop on a uniform grid of `samples` points:
/// Ω = η̇ sin χ, Δ = η̇ cos χ, φ₁ = φ.
pub fn synthesize_constant_chi(path: &HolonomicPath, samples: usize) -> Result<PulseSchedule> {
    let total = 2.0 * PI * path.k() as f64;
    let start = path.eta(0.0);
    let end = path.eta(path.tau());
    if start.abs() > CYCLIC_TOL * total || (end - total).abs() > CYCLIC_TOL * total {
        return Err(Error::ConstraintViolation(format!(
            "loop profile '{}' is not cyclic: η(0) = {start:e}, η(τ) − 2kπ = {:e}",
            path.profile().name(),
            end - total
        )));
    }
    if samples < 2 {
        return crate::error::reject("schedule needs at least two samples");
    }
    let grid = path.grid(samples);
    let (sin_chi, cos_chi) = path.chi().sin_cos();
    let n = grid.len();
    let mut sched = PulseSchedule {
        omega: Vec::with_capacity(n),
        delta: Vec::with_capacity(n),
        phi1: Vec::with_capacity(n),
        xi: vec![FRAC_PI_2; n],
        tau: path.tau(),
        grid,
    };
    for &t in &sched.grid {
        let rate = path.eta_dot(t);
        sched.omega.push((rate * sin_chi).abs());
        sched.delta.push(rate * cos_chi);
        // backwards-running loops flip the sign of Ω into the phase
        sched.phi1.push(if rate < 0.0 { path.phi() + PI } else { path.phi() });
    }
    Ok(sched)
}

/// Output of [`synthesize_general`].
#[derive(Debug, Clone)]
pub struct GeneralSynthesis {
    pub schedule: PulseSchedule,
    /// α(t) on the schedule grid, with α(0) = 0.
    pub alpha: Vec<f64>,
    /// Sample indices where ξ was undefined and filled from neighbours.
    pub filled_xi: Vec<usize>,
}

impl GeneralSynthesis {
    pub fn alpha_tau(&self) -> f64 {
        *self.alpha.last().expect("non-empty schedule")
    }
}

/// Controls for arbitrary smooth η(t), χ(t). Each closure returns
/// `(value, time derivative)`.
pub fn synthesize_general(
    eta: &dyn Fn(f64) -> (f64, f64),
    chi: &dyn Fn(f64) -> (f64, f64),
    phi: f64,
    tau: f64,
    samples: usize,
    formula: ControlFormula,
) -> Result<GeneralSynthesis> {
    if !(tau > 0.0 && tau.is_finite()) {
        return crate::error::reject(format!("duration tau = {tau} must be positive"));
    }
    if samples < 2 {
        return crate::error::reject("schedule needs at least two samples");
    }
    let grid = uniform_grid(tau, samples);
    let n = grid.len();
    let mut omega = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    let mut xi = Vec::with_capacity(n);
    for &t in &grid {
        let (e, ed) = eta(t);
        let (c, cd) = chi(t);
        let (sc, cc) = c.sin_cos();
        let num = ed * sc + cd * cc * e.sin();
        let den = match formula {
            ControlFormula::HalfAngle => 2.0 * cd * (e / 2.0).sin().powi(2),
            ControlFormula::FullAngle => 2.0 * cd * e.sin().powi(2),
        };
        omega.push((den * den + num * num).sqrt());
        delta.push(ed * cc - cd * sc * e.sin());
        xi.push(num.atan2(den));
    }
    let scale = omega.iter().cloned().fold(0.0, f64::max);
    let defined: Vec<bool> = omega.iter().map(|&w| w > 1e-14 * scale).collect();
    let filled_xi: Vec<usize> = (0..n).filter(|&i| !defined[i]).collect();
    fill_by_interpolation(&grid, &mut xi, &defined, FRAC_PI_2);
    unwrap_phase(&mut xi);
    let phi1 = xi.iter().map(|&x| phi + (FRAC_PI_2 - x)).collect();

    let alpha_dot = |t: f64| {
        let (e, ed) = eta(t);
        let (c, cd) = chi(t);
        0.5 * (cd * c.sin() * e.sin() - ed * c.cos())
    };
    let mut alpha = Vec::with_capacity(n);
    alpha.push(0.0);
    for w in grid.windows(2) {
        let prev = *alpha.last().unwrap();
        alpha.push(prev + gauss_legendre(&alpha_dot, w[0], w[1]));
    }

    Ok(GeneralSynthesis { schedule: PulseSchedule { grid, omega, delta, phi1, xi, tau }, alpha, filled_xi })
}

/// Five-point Gauss-Legendre quadrature on [a, b].
fn gauss_legendre(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const NODES: [f64; 5] =
        [0.0, 0.538_469_310_105_683_1, -0.538_469_310_105_683_1, 0.906_179_845_938_664, -0.906_179_845_938_664];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    half * NODES.iter().zip(WEIGHTS).map(|(x, w)| w * f(mid + half * x)).sum::<f64>()
}

fn fill_by_interpolation(grid: &[f64], v: &mut [f64], defined: &[bool], fallback: f64) {
    let known: Vec<usize> = (0..v.len()).filter(|&i| defined[i]).collect();
    if known.is_empty() {
        v.iter_mut().for_each(|x| *x = fallback);
        return;
    }
    for i in 0..v.len() {
        if defined[i] {
            continue;
        }
        let right = known.partition_point(|&j| j < i);
        v[i] = match (right.checked_sub(1).map(|l| known[l]), known.get(right).copied()) {
            (Some(l), Some(r)) => {
                let w = (grid[i] - grid[l]) / (grid[r] - grid[l]);
                v[l] + w * (v[r] - v[l])
            }
            (Some(l), None) => v[l],
            (None, Some(r)) => v[r],
            (None, None) => fallback,
        };
    }
}

fn unwrap_phase(v: &mut [f64]) {
    for i in 1..v.len() {
        let d = v[i] - v[i - 1];
        if d.abs() > PI {
            v[i] -= 2.0 * PI * (d / (2.0 * PI)).round();
        }
    }
}

/// Controls read off `H = iU̇U†` of a closed-form propagator family.
#[derive(Debug, Clone)]
pub struct NumericalControls {
    pub schedule: PulseSchedule,
    /// max over samples of max|H − H†| / max|H|.
    pub hermiticity: f64,
    /// max over samples of the off-structure residual / max|H|.
    pub structure_residual: f64,
    /// max over samples of |⟨0|H|1⟩| / max|H|.
    pub qubit_coupling: f64,
}

/// Finite-difference oracle for the control expressions.
///
/// `family(t)` returns `(η, χ, α)` and must be defined slightly beyond
/// the ends of `grid`.
pub fn derive_controls_numerically(
    theta: f64,
    phi: f64,
    family: &dyn Fn(f64) -> (f64, f64, f64),
    grid: &[f64],
) -> Result<NumericalControls> {
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return crate::error::reject("grid must have at least two strictly increasing samples");
    }
    let spacing = grid.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let h = 0.05 * spacing;
    let u_at = |t: f64| {
        let (e, c, a) = family(t);
        lambda_propagator(theta, phi, e, c, a)
    };
    let (bv, _) = bright_dark_basis(theta, phi);
    let b = bv.amplitudes();
    let e_vec = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)];

    let n = grid.len();
    let mut omega = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    let mut phase = Vec::with_capacity(n);
    let mut hams = Vec::with_capacity(n);
    for &t in grid {
        // fourth-order central difference
        let d1 = &u_at(t + h) - &u_at(t - h);
        let d2 = &u_at(t + 2.0 * h) - &u_at(t - 2.0 * h);
        let du = (&d1.scale_real(8.0) - &d2).scale_real(1.0 / (12.0 * h));
        let ham = (&du * &u_at(t).adjoint()).scale(C64::new(0.0, 1.0));
        let hbe: C64 = (0..3).map(|i| b[i].conj() * ham[(i, 1)]).sum();
        omega.push(2.0 * hbe.norm());
        delta.push(ham[(1, 1)].re);
        phase.push(hbe.arg());
        hams.push(ham);
    }

    let scale = hams.iter().map(CMatrix::max_abs).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut hermiticity: f64 = 0.0;
    let mut qubit_coupling: f64 = 0.0;
    let mut worst = (0.0, 0usize);
    for (i, ham) in hams.iter().enumerate() {
        hermiticity = hermiticity.max(ham.hermiticity_error() / scale);
        qubit_coupling = qubit_coupling.max(ham[(0, 2)].norm().max(ham[(2, 0)].norm()) / scale);
        let coupling = cis(phase[i]) * (omega[i] / 2.0);
        let model = CMatrix::from_fn(3, 3, |r, c| {
            coupling * b[r] * e_vec[c] + coupling.conj() * e_vec[r] * b[c].conj() + e_vec[r] * e_vec[c] * delta[i]
        });
        let resid = ham.max_abs_diff(&model) / scale;
        if resid > worst.0 {
            worst = (resid, i);
        }
    }
    if worst.0 > STRUCTURE_TOL {
        return Err(Error::StructureViolation {
            message: format!("off-Λ matrix elements at sample {} (t = {:e} s)", worst.1, grid[worst.1]),
            residual: worst.0,
            allowed: STRUCTURE_TOL,
        });
    }

    let defined: Vec<bool> = omega.iter().map(|&w| w > 1e-9 * scale).collect();
    fill_by_interpolation(grid, &mut phase, &defined, phi);
    unwrap_phase(&mut phase);
    let xi = phase.iter().map(|&p| phi + FRAC_PI_2 - p).collect();
    Ok(NumericalControls {
        schedule: PulseSchedule { grid: grid.to_vec(), omega, delta, phi1: phase, xi, tau: grid[n - 1] },
        hermiticity,
        structure_residual: worst.0,
        qubit_coupling,
    })
}

/// Finite-difference controls for a constant-χ loop.
pub fn derive_controls_for_path(path: &HolonomicPath, samples: usize) -> Result<NumericalControls> {
    let family = |t: f64| (path.eta(t), path.chi(), path.alpha(t));
    derive_controls_numerically(path.theta(), path.phi(), &family, &path.grid(samples))
}
