use std::f64::consts::{FRAC_PI_2, PI};

use holonomy_core::control::{synthesize_constant_chi, DurationConvention, EtaProfile, HolonomicPath};
use holonomy_core::dynamics::*;
use holonomy_core::gates::{bright_dark_basis, single_qubit_target};
use holonomy_core::linalg::{cis, CMatrix, DensityMatrix, StateVector, C64};
use holonomy_core::metrics::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const OMEGA0: f64 = 2.0 * PI * 300e6;
const GAMMA: f64 = 2.0 * PI * 8e6;

fn path(theta: f64, phi: f64, gamma: f64, k: u32, convention: DurationConvention) -> HolonomicPath {
    HolonomicPath::with_convention(theta, phi, gamma, k, EtaProfile::Linear, OMEGA0, convention).unwrap()
}

fn lambda_model(p: &HolonomicPath, samples: usize) -> HamiltonianModel {
    lambda_hamiltonian(&synthesize_constant_chi(p, samples).unwrap(), p.theta(), p.phi()).unwrap()
}

/// sin(ω/2)|0⟩ + cos(ω/2)e^{iκ}|1⟩ embedded in the Λ basis.
fn qubit_input(omega: f64, kappa: f64) -> StateVector {
    StateVector::new(vec![C64::new((omega / 2.0).sin(), 0.0), C64::new(0.0, 0.0), cis(kappa) * (omega / 2.0).cos()])
        .unwrap()
}

fn integrated(p: &HolonomicPath, psi: &StateVector, samples: usize) -> PopulationReport {
    let m = lambda_model(p, samples);
    let r = propagate_schrodinger(&m, psi, &p.grid(samples)).unwrap();
    integrated_excited_population(&r, EXCITED, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // The bracket is the bright-state overlap |⟨b|ψ⟩|² of the input.
    #[test]
    fn bracket_is_bright_overlap(theta in 0.0f64..PI, phi in -PI..PI, omega in 0.0f64..PI, kappa in 0.0f64..2.0 * PI) {
        let (b, _) = bright_dark_basis(theta, phi);
        let direct = b.inner(&qubit_input(omega, kappa)).norm_sqr();
        prop_assert!((population_bracket(theta, omega, kappa, phi) - direct).abs() <= 1e-14);
    }
}

#[test]
fn bracket_on_bright_and_dark_inputs() {
    for (theta, phi) in [(0.3, 0.0), (1.2, 0.9), (2.8, -2.1)] {
        assert!((population_bracket(theta, theta, PI - phi, phi) - 1.0).abs() <= 1e-14);
        assert!(population_bracket(theta, PI - theta, -phi, phi).abs() <= 1e-14);
    }
}

#[test]
fn bracket_matches_propagated_population_on_grid() {
    let phi = 0.7;
    let values = [0.1, 0.8, FRAC_PI_2, 2.2, 3.0];
    let kappas = [0.0, 1.3, PI, 4.0, 5.9];
    let n = 2001;
    for &theta in &values {
        let p = path(theta, phi, PI, 1, DurationConvention::FixedRate);
        assert!((p.chi() - FRAC_PI_2).abs() <= 1e-15);
        let m = lambda_model(&p, n);
        let grid = p.grid(n);
        for &omega in &values {
            for &kappa in &kappas {
                let r = propagate_schrodinger(&m, &qubit_input(omega, kappa), &grid).unwrap();
                let meta = PopulationMeta { path: &p, omega, kappa };
                let rep = integrated_excited_population(&r, EXCITED, Some(meta)).unwrap();
                let f = rep.f_tau.unwrap();
                let err = (rep.integrated - rep.closed_form_value.unwrap()).abs();
                assert!(err <= 1e-6 * f, "θ={theta} ω={omega} κ={kappa}: {err:e}");
            }
        }
    }
}

#[test]
fn dark_input_never_populates_excited_state() {
    let p = path(1.1, 0.4, 2.0, 3, DurationConvention::FixedAmplitude);
    let (_, d) = bright_dark_basis(1.1, 0.4);
    let rep = integrated(&p, &d, 1201);
    assert!(rep.integrated.abs() <= 1e-10 * p.tau());
}

#[test]
fn bright_input_single_loop_integral() {
    let p = path(0.9, 0.3, PI, 1, DurationConvention::FixedRate);
    let want = PI / OMEGA0;
    assert!((f_tau(&p) - want).abs() <= 1e-12 * want);
    let (b, _) = bright_dark_basis(0.9, 0.3);
    let rep = integrated(&p, &b, 4001);
    assert!((rep.integrated - want).abs() <= 1e-6 * want);
    assert!((rep.time_averaged - 0.5).abs() <= 1e-6);
}

#[test]
fn closed_system_lindblad_gives_same_integral() {
    let p = path(0.9, 0.3, 2.4, 2, DurationConvention::FixedRate);
    let psi = qubit_input(1.0, 2.0);
    let m = lambda_model(&p, 1601);
    let times = p.grid(401);
    let pure = propagate_schrodinger(&m, &psi, &times).unwrap();
    let ch = lambda_channels(0.0, 0.0, 0.0).unwrap();
    let open = propagate_lindblad(&m, &ch, &psi.to_density(), &times, LindbladSettings::default()).unwrap();
    let a = integrated_excited_population(&pure, EXCITED, None).unwrap().integrated;
    let b = integrated_excited_population(&open, EXCITED, None).unwrap().integrated;
    assert!((a - b).abs() <= 1e-8 * p.tau());
}

#[test]
fn haar_average_matches_half_f_tau() {
    for (k, conv) in [(1, DurationConvention::FixedRate), (10, DurationConvention::FixedAmplitude)] {
        let p = path(FRAC_PI_2, 0.0, PI, k, conv);
        let avg = average_integrated_population(&p, InputSampling::Haar { n: 10_000, seed: 7 }, 200 * k as usize + 1)
            .unwrap();
        assert!((avg.empirical - avg.haar_candidate).abs() <= 3.0 * avg.standard_error, "{avg:?}");
        assert_eq!(avg.matched, "haar-half");
        assert!((avg.eighth_candidate - avg.f_tau / 8.0).abs() <= 1e-20);
    }
}

#[test]
fn flat_measure_average_is_pi_over_four() {
    let p = path(1.0, 0.5, 2.0, 2, DurationConvention::FixedRate);
    let avg = average_integrated_population(&p, InputSampling::FlatGrid { n_omega: 64, n_kappa: 128 }, 801).unwrap();
    assert!((avg.empirical - avg.flat_measure_candidate).abs() <= 1e-3 * avg.f_tau);
    assert_eq!(avg.matched, "flat-measure-pi-quarter");
    assert_eq!(avg.standard_error, 0.0);
}

#[test]
fn haar_instantaneous_population_row_norm() {
    let p = path(FRAC_PI_2, 0.0, PI, 4, DurationConvention::FixedAmplitude);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..20 {
        let t = p.tau() * i as f64 / 19.0;
        let a = haar_instantaneous_population(&p, t, 10_000, &mut rng);
        assert!((a.mean - a.predicted).abs() <= 3.0 * a.standard_error + 1e-12, "{a:?}");
    }
}

#[test]
fn vanishing_phase_gives_vanishing_population() {
    let p = path(FRAC_PI_2, 0.0, 1e-6, 1, DurationConvention::FixedRate);
    let avg = average_integrated_population(&p, InputSampling::Haar { n: 100, seed: 1 }, 401).unwrap();
    assert!(avg.empirical / p.tau() <= 1e-6);
}

#[test]
fn doubling_k_halves_fixed_rate_exposure() {
    for k in [20, 50, 500] {
        let rows = constant_chi_population_scan(
            PI,
            &[k, 2 * k],
            &EtaProfile::Linear,
            OMEGA0,
            &[DurationConvention::FixedRate],
            64,
        )
        .unwrap();
        let ratio = rows[1].time_avg_pop / rows[0].time_avg_pop;
        assert!((ratio - 0.5).abs() <= 0.05 * 0.5, "k={k}: {ratio}");
    }
}

#[test]
fn population_scan_trends() {
    let ks: Vec<u32> = (1..=20).collect();
    let both = [DurationConvention::FixedRate, DurationConvention::FixedAmplitude];
    let rows = constant_chi_population_scan(PI, &ks, &EtaProfile::Linear, OMEGA0, &both, 64).unwrap();
    assert_eq!(rows.len(), 40);
    for conv in both {
        let pops: Vec<f64> = rows.iter().filter(|r| r.schedule == conv).map(|r| r.time_avg_pop).collect();
        assert!(pops.windows(2).all(|w| w[1] < w[0]), "{conv:?}");
    }
    let gammas: Vec<f64> = (1..20).map(|i| 2.0 * PI * i as f64 / 20.0).collect();
    let pops: Vec<f64> = gammas
        .iter()
        .map(|&g| {
            constant_chi_population_scan(
                g,
                &[10],
                &EtaProfile::Linear,
                OMEGA0,
                &[DurationConvention::FixedAmplitude],
                64,
            )
            .unwrap()[0]
                .time_avg_pop
        })
        .collect();
    assert!(pops.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn single_loop_scan_matches_quadrature() {
    let rows =
        constant_chi_population_scan(PI, &[1, 3], &EtaProfile::Linear, OMEGA0, &[DurationConvention::FixedRate], 256)
            .unwrap();
    for r in &rows {
        let p = path(FRAC_PI_2, 0.0, PI, r.k, DurationConvention::FixedRate);
        // uniform input average of the bright overlap is ½
        let quad = 0.5 * f_tau(&p) / p.tau();
        assert!((r.time_avg_pop - quad).abs() <= 1e-5 * quad);
        assert!((r.time_avg_pop - p.chi().sin().powi(2) / 4.0).abs() <= 1e-5);
    }
}

#[test]
fn state_fidelity_examples() {
    let psi = StateVector::normalized(vec![C64::new(0.2, 0.3), C64::new(-0.5, 0.1)]).unwrap();
    assert!((state_fidelity(&psi.to_density(), &psi).unwrap() - 1.0).abs() <= 1e-15);
    let mixed = DensityMatrix::maximally_mixed(2);
    assert!((state_fidelity(&mixed, &psi).unwrap() - 0.5).abs() <= 1e-15);
    assert!(state_fidelity(&mixed, &StateVector::basis(3, 0)).is_err());

    let (g1, g2) = (GAMMA, GAMMA / 2.0);
    let t = 2f64.ln() / (g1 + g2);
    let m = HamiltonianModel::constant(CMatrix::zeros(3, 3), "idle");
    let ch = lambda_channels(g1, g2, 0.0).unwrap();
    let e = StateVector::basis(3, EXCITED);
    let r = propagate_lindblad(&m, &ch, &e.to_density(), &[0.0, t], LindbladSettings::default()).unwrap();
    assert!((state_fidelity(&r.final_density(), &e).unwrap() - 0.5).abs() <= 1e-8);
}

#[test]
fn zeta_grid_endpoints() {
    let z = zeta_grid(1001);
    assert_eq!(z.len(), 1001);
    assert_eq!(z[0], 0.0);
    assert_eq!(z[1000], 2.0 * PI);
    assert_eq!(z[500], PI);
}

fn not_setup(k: u32) -> (HamiltonianModel, CMatrix) {
    let p = path(FRAC_PI_2, 0.0, PI, k, DurationConvention::FixedAmplitude);
    (lambda_model(&p, 200 * k as usize + 1), single_qubit_target(FRAC_PI_2, PI, 0.0).matrix)
}

fn sweep(
    m: &HamiltonianModel,
    target: &CMatrix,
    rates: (f64, f64, f64),
    n_zeta: usize,
    mode: SweepMode,
) -> FidelityReport {
    let ch = lambda_channels(rates.0, rates.1, rates.2).unwrap();
    let settings = SweepSettings { n_zeta, mode, time_samples: 11, ..SweepSettings::default() };
    gate_fidelity_zeta_sweep(m, &ch, target, settings).unwrap()
}

#[test]
fn noiseless_sweep_is_perfect() {
    let (m, x) = not_setup(1);
    let r = sweep(&m, &x, (0.0, 0.0, 0.0), 101, SweepMode::LinearBasis);
    assert!(r.average >= 1.0 - 1e-6, "{}", r.average);
    assert!(!r.partial());
    assert_eq!(r.definition, "state-overlap-average");
    assert_eq!(r.dynamics.len(), 11);
    assert!((r.dynamics[10].1 - r.average).abs() <= 1e-15);
}

#[test]
fn sweep_report_invariants() {
    let (m, x) = not_setup(2);
    let r = sweep(&m, &x, (GAMMA, GAMMA / 2.0, 2.0 * GAMMA), 61, SweepMode::LinearBasis);
    assert!(r.per_state.iter().all(|&(_, f)| (0.0..=1.0 + 1e-9).contains(&f)));
    let mean = r.per_state.iter().map(|p| p.1).sum::<f64>() / r.per_state.len() as f64;
    assert!((mean - r.average).abs() <= 1e-12);
    assert!(r.min() <= r.average && r.average <= r.max());
    assert!(r.max_trace_deviation <= 1e-9 && r.min_eigenvalue >= -1e-8);
    let again = sweep(&m, &x, (GAMMA, GAMMA / 2.0, 2.0 * GAMMA), 61, SweepMode::LinearBasis);
    assert_eq!(r, again);
    let mut buf = Vec::new();
    r.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next(), Some("zeta_rad,fidelity"));
    assert_eq!(text.lines().count(), 62);
    let j = r.summary_json(serde_json::json!({"k": 2}));
    assert_eq!(j["n_states"], 61);
    assert_eq!(j["parameters"]["k"], 2);
}

#[test]
fn linear_basis_matches_per_state_runs() {
    let (m, x) = not_setup(1);
    let rates = (GAMMA, GAMMA / 2.0, 2.0 * GAMMA);
    let a = sweep(&m, &x, rates, 13, SweepMode::LinearBasis);
    let b = sweep(&m, &x, rates, 13, SweepMode::PerState);
    for (p, q) in a.per_state.iter().zip(&b.per_state) {
        assert_eq!(p.0, q.0);
        assert!((p.1 - q.1).abs() <= 1e-10);
    }
}

#[test]
fn fidelity_falls_with_each_rate() {
    let (m, x) = not_setup(1);
    let scale = [0.0, 0.5, 1.0, 2.0, 4.0];
    for which in 0..3 {
        let avgs: Vec<f64> = scale
            .iter()
            .map(|&s| {
                let mut r = [0.0; 3];
                r[which] = s * GAMMA;
                sweep(&m, &x, (r[0], r[1], r[2]), 21, SweepMode::LinearBasis).average
            })
            .collect();
        assert!(avgs.windows(2).all(|w| w[1] <= w[0]), "rate {which}: {avgs:?}");
    }
}

#[test]
fn sweep_rejects_bad_inputs() {
    let (m, _) = not_setup(1);
    let ch = lambda_channels(0.0, 0.0, 0.0).unwrap();
    assert!(gate_fidelity_zeta_sweep(&m, &ch, &CMatrix::identity(3), SweepSettings::default()).is_err());
    let open = HamiltonianModel::constant(CMatrix::zeros(3, 3), "unbounded");
    assert!(gate_fidelity_zeta_sweep(&open, &ch, &CMatrix::identity(2), SweepSettings::default()).is_err());
    let bad = SweepSettings { qubit_levels: [0, 0], ..SweepSettings::default() };
    assert!(gate_fidelity_zeta_sweep(&m, &ch, &CMatrix::identity(2), bad).is_err());
}

#[test]
fn process_fidelity_of_exact_gate() {
    let x = single_qubit_target(FRAC_PI_2, PI, 0.0).matrix;
    assert!((process_fidelity(&x.scale(cis(0.4)), &x).unwrap() - 1.0).abs() <= 1e-15);
}
