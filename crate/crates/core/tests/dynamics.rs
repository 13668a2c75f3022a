mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use holonomy_core::control::{
    closed_form_propagator, synthesize_constant_chi, uniform_grid, DurationConvention, EtaProfile, HolonomicPath,
    PulseSchedule,
};
use holonomy_core::dynamics::*;
use holonomy_core::gates::bright_dark_basis;
use holonomy_core::linalg::{cis, CMatrix, DensityMatrix, StateVector, C64};
use holonomy_core::metrics::state_fidelity;
use holonomy_core::Error;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const OMEGA0: f64 = 2.0 * PI * 300e6;
const GAMMA: f64 = 2.0 * PI * 8e6;

fn constant_schedule(omega: f64, delta: f64, phi1: f64, tau: f64) -> PulseSchedule {
    PulseSchedule {
        grid: vec![0.0, tau],
        omega: vec![omega; 2],
        delta: vec![delta; 2],
        phi1: vec![phi1; 2],
        xi: vec![0.0; 2],
        tau,
    }
}

fn engineered(theta: f64, phi: f64, gamma: f64, k: u32, samples: usize) -> (HolonomicPath, HamiltonianModel) {
    let p =
        HolonomicPath::with_convention(theta, phi, gamma, k, EtaProfile::Linear, OMEGA0, DurationConvention::FixedRate)
            .unwrap();
    let s = synthesize_constant_chi(&p, samples).unwrap();
    let m = lambda_hamiltonian(&s, theta, phi).unwrap();
    (p, m)
}

fn overlap(a: &StateVector, b: &StateVector) -> f64 {
    a.inner(b).norm_sqr()
}

fn mixed(res: &PropagationResult) -> &[DensityMatrix] {
    match &res.trajectory {
        Trajectory::Mixed(r) => r,
        Trajectory::Pure(_) => panic!("expected a density-matrix run"),
    }
}

#[test]
fn lambda_without_drive_is_detuning_only() {
    let delta = 2.0 * PI * 40e6;
    let m = lambda_hamiltonian(&constant_schedule(0.0, delta, 0.3, 1e-7), 1.1, 0.4).unwrap();
    for t in [0.0, 3e-8, 1e-7] {
        let h = m.evaluate(t).unwrap();
        let mut want = CMatrix::zeros(3, 3);
        want[(EXCITED, EXCITED)] = C64::new(delta, 0.0);
        assert_eq!(h.max_abs_diff(&want), 0.0);
    }
}

#[test]
fn lambda_theta_zero_decouples_ground_zero() {
    let m = lambda_hamiltonian(&constant_schedule(OMEGA0, 0.2 * OMEGA0, 0.7, 1e-8), 0.0, 1.3).unwrap();
    let h = m.evaluate(5e-9).unwrap();
    assert_eq!(h[(GROUND_0, EXCITED)].norm(), 0.0);
    assert_eq!(h[(EXCITED, GROUND_0)].norm(), 0.0);
    assert!(h[(GROUND_1, EXCITED)].norm() > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_couples_only_the_bright_state(
        theta in 0.0f64..PI,
        phi in -PI..PI,
        phi1 in -PI..PI,
        omega in 0.0f64..1e9,
        delta in -1e9f64..1e9,
    ) {
        let m = lambda_hamiltonian(&constant_schedule(omega, delta, phi1, 1e-8), theta, phi).unwrap();
        let h = m.evaluate(2e-9).unwrap();
        let (b, d) = bright_dark_basis(theta, phi);
        let e = StateVector::basis(3, EXCITED);
        let raw = h.apply(e.amplitudes());
        let bh: C64 = b.amplitudes().iter().zip(&raw).map(|(x, y)| x.conj() * y).sum();
        let dh: C64 = d.amplitudes().iter().zip(&raw).map(|(x, y)| x.conj() * y).sum();
        let want = cis(phi1) * (omega / 2.0);
        prop_assert!((bh - want).norm() <= 1e-12 * (1.0 + omega));
        prop_assert!(dh.norm() <= 1e-12 * (1.0 + omega));
        prop_assert!(h.hermiticity_error() <= 1e-12 * h.max_abs().max(1.0));
    }
}

#[test]
fn lambda_rejects_times_outside_the_schedule() {
    let m = lambda_hamiltonian(&constant_schedule(OMEGA0, 0.0, 0.0, 1e-8), 1.0, 0.0).unwrap();
    assert!(matches!(m.evaluate(-1e-12), Err(Error::RejectedInput(_))));
    assert!(matches!(m.evaluate(1.1e-8), Err(Error::RejectedInput(_))));
    assert!(m.evaluate(1e-8).is_ok());
}

#[test]
fn zero_hamiltonian_leaves_state_fixed() {
    let m = HamiltonianModel::constant(CMatrix::zeros(3, 3), "zero");
    let psi = StateVector::normalized(vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.5), C64::new(0.7, 0.0)]).unwrap();
    let r = propagate_schrodinger(&m, &psi, &uniform_grid(1e-6, 17)).unwrap();
    for i in 0..r.len() {
        assert!((overlap(&psi, &StateVector::basis(3, 0)) - r.population(i, 0)).abs() <= 1e-15);
    }
    let last = r.final_pure().unwrap();
    for (a, b) in last.amplitudes().iter().zip(psi.amplitudes()) {
        assert!((a - b).norm() <= 1e-15);
    }
}

#[test]
fn resonant_pi_pulse_moves_bright_to_excited() {
    let (theta, phi) = (1.2, 0.4);
    let tau = PI / OMEGA0;
    let m = lambda_hamiltonian(&constant_schedule(OMEGA0, 0.0, 0.0, tau), theta, phi).unwrap();
    let (b, d) = bright_dark_basis(theta, phi);
    let r = propagate_schrodinger(&m, &b, &uniform_grid(tau, 65)).unwrap();
    let last = r.final_pure().unwrap();
    let want = C64::new(0.0, -1.0);
    assert!((last.amplitudes()[EXCITED] - want).norm() <= 1e-12);
    let r = propagate_schrodinger(&m, &d, &uniform_grid(tau, 65)).unwrap();
    assert!((overlap(r.final_pure().unwrap(), &d) - 1.0).abs() <= 1e-12);
}

#[test]
fn engineered_not_flips_zero_to_one() {
    let (p, m) = engineered(FRAC_PI_2, 0.0, PI, 1, 401);
    let r = propagate_schrodinger(&m, &StateVector::basis(3, GROUND_0), &p.grid(401)).unwrap();
    assert!(!r.failed());
    let f = r.final_pure().unwrap().population(GROUND_1);
    assert!(f >= 1.0 - 1e-6, "fidelity {f}");
    assert!(r.diagnostics.max_norm_deviation <= 1e-10);
}

#[test]
fn constant_hamiltonian_matches_taylor_oracle() {
    let mut rng = StdRng::seed_from_u64(11);
    for n in [2, 3, 6] {
        let h = common::random_hermitian(&mut rng, n).scale_real(1e8);
        let t = 3e-8;
        let m = HamiltonianModel::constant(h.clone(), "random");
        let u = propagate_unitary(&m, &uniform_grid(t, 9)).unwrap();
        assert!(u.max_abs_diff(&common::evolve_oracle(&h, t)) <= 1e-10);
    }
}

#[test]
fn engineered_propagation_matches_closed_form() {
    for k in [1, 3] {
        let (p, m) = engineered(0.9, 0.6, 1.7, k, 801);
        let u = propagate_unitary(&m, &p.grid(801)).unwrap();
        let tau = p.tau();
        let want = closed_form_propagator(&p, p.eta(tau), p.chi(), p.alpha(tau));
        assert!(u.max_abs_diff(&want) <= 1e-9, "k={k}: {}", u.max_abs_diff(&want));
    }
}

#[test]
fn schrodinger_composes_over_split_intervals() {
    let (p, m) = engineered(1.0, 0.2, 2.2, 4, 201);
    let tau = p.tau();
    let n = 400;
    let full: Vec<f64> = (0..=n).map(|i| tau * i as f64 / n as f64).collect();
    let (first, second) = (&full[..=n / 2], &full[n / 2..]);
    let u = propagate_unitary(&m, &full).unwrap();
    let split = &propagate_unitary(&m, second).unwrap() * &propagate_unitary(&m, first).unwrap();
    assert!(u.max_abs_diff(&split) <= 1e-9);
}

#[test]
fn schrodinger_grid_doubling() {
    let (p, m) = engineered(FRAC_PI_2, 0.0, PI, 10, 2001);
    let psi0 = StateVector::basis(3, GROUND_0);
    let target = StateVector::basis(3, GROUND_1);
    let coarse = propagate_schrodinger(&m, &psi0, &p.grid(2001)).unwrap();
    let fine = propagate_schrodinger(&m, &psi0, &p.grid(4001)).unwrap();
    let fc = overlap(coarse.final_pure().unwrap(), &target);
    let ff = overlap(fine.final_pure().unwrap(), &target);
    assert!((fc - ff).abs() <= 1e-7, "{fc} vs {ff}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn schrodinger_preserves_norm(seed in any::<u64>(), steps in 2usize..200) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = common::random_hermitian(&mut rng, 4).scale_real(1e8);
        let b = common::random_hermitian(&mut rng, 4).scale_real(1e8);
        let w: f64 = rng.random_range(1e7..1e9);
        let m = HamiltonianModel::new(4, "drifting", move |t| &a + &b.scale_real((w * t).sin()));
        let psi = StateVector::normalized((0..4).map(|_| C64::new(rng.random(), rng.random())).collect()).unwrap();
        let r = propagate_schrodinger(&m, &psi, &uniform_grid(1e-7, steps)).unwrap();
        prop_assert!(!r.failed());
        prop_assert!(r.diagnostics.max_norm_deviation <= 1e-10);
    }
}

#[test]
fn excited_state_decays_exponentially() {
    let (g1, g2) = (GAMMA, GAMMA / 2.0);
    let m = HamiltonianModel::constant(CMatrix::zeros(3, 3), "idle");
    let ch = lambda_channels(g1, g2, 0.0).unwrap();
    let rho0 = StateVector::basis(3, EXCITED).to_density();
    let times = uniform_grid(1e-7, 11);
    let r = propagate_lindblad(&m, &ch, &rho0, &times, LindbladSettings::default()).unwrap();
    for (i, &t) in times.iter().enumerate() {
        let want = (-(g1 + g2) * t).exp();
        assert!((r.population(i, EXCITED) - want).abs() <= 1e-8);
        let to0 = g1 / (g1 + g2) * (1.0 - want);
        assert!((r.population(i, GROUND_0) - to0).abs() <= 1e-8);
    }
}

#[test]
fn dephasing_damps_coherence() {
    let gphi = 2.0 * GAMMA;
    let m = HamiltonianModel::constant(CMatrix::zeros(3, 3), "idle");
    let ch = lambda_channels(0.0, 0.0, gphi).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = StateVector::new(vec![C64::new(h, 0.0), C64::new(h, 0.0), C64::new(0.0, 0.0)]).unwrap();
    let times = uniform_grid(5e-8, 6);
    let r = propagate_lindblad(&m, &ch, &plus.to_density(), &times, LindbladSettings::default()).unwrap();
    for (rho, &t) in mixed(&r).iter().zip(&times) {
        let c = rho.matrix()[(GROUND_0, EXCITED)];
        assert!((c - C64::new(0.5 * (-gphi * t).exp(), 0.0)).norm() <= 1e-8);
        assert!((rho.population(GROUND_0) - 0.5).abs() <= 1e-12);
    }
}

#[test]
fn zero_rates_reduce_to_schrodinger() {
    let (p, m) = engineered(0.8, 0.3, 2.0, 2, 801);
    let psi0 = StateVector::normalized(vec![C64::new(0.6, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.8)]).unwrap();
    let grid = p.grid(801);
    let pure = propagate_schrodinger(&m, &psi0, &grid).unwrap();
    let ch = lambda_channels(0.0, 0.0, 0.0).unwrap();
    let open = propagate_lindblad(&m, &ch, &psi0.to_density(), &[0.0, p.tau()], LindbladSettings::default()).unwrap();
    let f = state_fidelity(&open.final_density(), pure.final_pure().unwrap()).unwrap();
    assert!(f >= 1.0 - 1e-8, "{f}");
}

fn noisy_run(k: u32, settings: LindbladSettings) -> (PropagationResult, f64) {
    let (p, m) = engineered(FRAC_PI_2, 0.0, PI, k, 2001);
    let ch = lambda_channels(GAMMA, GAMMA / 2.0, 2.0 * GAMMA).unwrap();
    let rho0 = StateVector::basis(3, GROUND_0).to_density();
    let r = propagate_lindblad(&m, &ch, &rho0, &uniform_grid(p.tau(), 5), settings).unwrap();
    let f = r.final_density().population(GROUND_1);
    (r, f)
}

#[test]
fn lindblad_keeps_a_valid_density_matrix() {
    for k in [1, 10] {
        let (r, f) = noisy_run(k, LindbladSettings::default());
        assert!(!r.failed());
        assert!(r.diagnostics.max_norm_deviation <= 1e-9);
        assert!(r.diagnostics.min_eigenvalue >= -1e-8);
        for rho in mixed(&r) {
            assert!(rho.matrix().hermiticity_error() <= 1e-15);
            assert!(rho.min_eigenvalue().unwrap() >= -1e-8);
        }
        assert!(f > 0.5 && f < 1.0);
    }
}

#[test]
fn lindblad_grid_doubling() {
    let (_, coarse) = noisy_run(10, LindbladSettings::default());
    let (_, fine) = noisy_run(10, LindbladSettings::default().refined());
    assert!((coarse - fine).abs() <= 1e-6, "{coarse} vs {fine}");
}

#[test]
fn lindblad_composes_over_split_intervals() {
    let (p, m) = engineered(1.0, 0.2, 2.2, 4, 401);
    let ch = lambda_channels(GAMMA, GAMMA / 2.0, 2.0 * GAMMA).unwrap();
    let rho0 = StateVector::basis(3, GROUND_0).to_density();
    let tau = p.tau();
    let settings = LindbladSettings::default();
    // same RK4 step on both halves as on the whole span
    let halves = LindbladSettings { min_steps: settings.min_steps / 2, ..settings };
    let full = propagate_lindblad(&m, &ch, &rho0, &[0.0, tau], settings).unwrap();
    let half = propagate_lindblad(&m, &ch, &rho0, &[0.0, tau / 2.0], halves).unwrap();
    let rest = propagate_lindblad(&m, &ch, &half.final_density(), &[tau / 2.0, tau], halves).unwrap();
    let d = full.final_density().matrix().max_abs_diff(rest.final_density().matrix());
    assert!(d <= 1e-9, "{d}");
}

#[test]
fn lindblad_rejects_bad_inputs() {
    assert!(LindbladChannel::new(CMatrix::identity(3), -1.0, "neg").is_err());
    let m = HamiltonianModel::constant(CMatrix::zeros(3, 3), "idle");
    let rho = StateVector::basis(2, 0).to_density();
    assert!(propagate_lindblad(&m, &[], &rho, &[0.0, 1e-8], LindbladSettings::default()).is_err());
    let ch = vec![LindbladChannel::transition(2, 0, 1, 1.0, "small").unwrap()];
    let rho = StateVector::basis(3, 0).to_density();
    assert!(propagate_lindblad(&m, &ch, &rho, &[0.0, 1e-8], LindbladSettings::default()).is_err());
}

fn cavity(g: f64, omega: f64, delta: f64, detuning: f64, n_max: usize) -> TwoQubitModel {
    TwoQubitModel { g1: g, g2: -0.7 * g, omega1: omega, omega2: 1.3 * omega, delta, detuning, n_max }
}

#[test]
fn cavity_without_couplings_is_diagonal() {
    let det = 2.0 * PI * 5e6;
    let model = cavity(0.0, 0.0, 2.0 * PI * 200e6, det, 2);
    let m = two_nv_cavity_hamiltonian(&model).unwrap();
    let h = m.evaluate(3.3e-9).unwrap();
    for i in 0..model.dim() {
        for j in 0..model.dim() {
            if i != j {
                assert_eq!(h[(i, j)].norm(), 0.0);
            }
        }
    }
    for a in 0..3 {
        for n in 0..=2 {
            for b in 0..3 {
                let ones = (a == GROUND_1) as u8 + (b == GROUND_1) as u8;
                assert_eq!(h[(model.index(a, n, b), model.index(a, n, b))].re, det * ones as f64);
            }
        }
    }
}

#[test]
fn cavity_coupling_conserves_excitations() {
    let model = cavity(2.0 * PI * 10e6, 0.0, 2.0 * PI * 200e6, 0.0, 3);
    let m = two_nv_cavity_hamiltonian(&model).unwrap();
    let dim = model.dim();
    let mut number = CMatrix::zeros(dim, dim);
    for a in 0..3 {
        for n in 0..=3 {
            for b in 0..3 {
                let q = n + (a == EXCITED) as usize + (b == EXCITED) as usize;
                let i = model.index(a, n, b);
                number[(i, i)] = C64::new(q as f64, 0.0);
            }
        }
    }
    let single =
        [model.index(EXCITED, 0, GROUND_0), model.index(GROUND_0, 1, GROUND_0), model.index(GROUND_0, 0, EXCITED)];
    for t in [0.0, 1.7e-9, 4.1e-8] {
        let h = m.evaluate(t).unwrap();
        assert!(h.commutator(&number).max_abs() <= 1e-12 * h.max_abs());
        for &j in &single {
            for i in 0..dim {
                if !single.contains(&i) {
                    assert_eq!(h[(i, j)].norm(), 0.0);
                }
            }
        }
    }
}

#[test]
fn cavity_hamiltonian_is_hermitian() {
    let mut rng = StdRng::seed_from_u64(5);
    let model = cavity(2.0 * PI * 10e6, 2.0 * PI * 12e6, 2.0 * PI * 200e6, 2.0 * PI * 3e6, 4);
    let m = two_nv_cavity_hamiltonian(&model).unwrap();
    for _ in 0..20 {
        let h = m.evaluate(rng.random_range(0.0..1e-6)).unwrap();
        assert!(h.hermiticity_error() <= 1e-12 * h.max_abs().max(1.0));
    }
}

#[test]
fn cavity_truncation_bounds() {
    for n_max in [0, MAX_PHOTONS + 1] {
        let model = cavity(1.0, 1.0, 1.0, 0.0, n_max);
        assert!(matches!(two_nv_cavity_hamiltonian(&model), Err(Error::RejectedInput(_))));
    }
    let model = cavity(1.0, 1.0, 1.0, 0.0, MAX_PHOTONS);
    assert_eq!(two_nv_cavity_hamiltonian(&model).unwrap().dim(), 54);
}

#[test]
fn cavity_step_propagator_matches_fine_lab_frame_steps() {
    let model = cavity(2.0 * PI * 10e6, 2.0 * PI * 10e6, 2.0 * PI * 200e6, 2.0 * PI * 1e6, 2);
    let m = two_nv_cavity_hamiltonian(&model).unwrap();
    let tau = 2e-8;
    let coarse = propagate_unitary(&m, &uniform_grid(tau, 201)).unwrap();
    let lab = HamiltonianModel::new(model.dim(), "lab", move |t| m.evaluate(t).unwrap());
    let fine = propagate_unitary(&lab, &uniform_grid(tau, 40001)).unwrap();
    assert!(coarse.max_abs_diff(&fine) <= 1e-6, "{}", coarse.max_abs_diff(&fine));
}

#[test]
fn propagation_csv_layout() {
    let (p, m) = engineered(FRAC_PI_2, 0.0, PI, 1, 101);
    let r = propagate_schrodinger(&m, &StateVector::basis(3, GROUND_0), &p.grid(5)).unwrap();
    let mut buf = Vec::new();
    r.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t_s,pop_0,pop_e,pop_1,trace_dev");
    assert_eq!(lines.len(), 6);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "0.00000000000e0");
    assert_eq!(first[1], "1.00000000000e0");
    let last: Vec<f64> = lines[5].split(',').map(|x| x.parse().unwrap()).collect();
    assert!((last[3] - 1.0).abs() <= 1e-6);
}
