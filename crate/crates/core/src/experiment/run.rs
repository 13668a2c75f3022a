use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::json;

use super::config::{ExperimentConfig, GateSpec, Rates, Scenario, SweepSpec};
use super::table::{Cell, ColumnKind, Provenance, ResultTable};
use crate::control::{synthesize_constant_chi, DurationConvention, HolonomicPath};
use crate::dynamics::{lambda_channels, lambda_hamiltonian, LindbladSettings};
use crate::error::{Error, Result};
use crate::gates::{check_effective_model, single_qubit_target, TwoQubitCheckParams};
use crate::metrics::{
    average_integrated_population, constant_chi_population_scan, f_tau, gate_fidelity_zeta_sweep, FidelityReport,
    InputSampling, SweepSettings,
};

use ColumnKind::{Int, Real, Text};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool (one per core).
    pub jobs: Option<usize>,
    /// Skip writing files when false.
    pub dry: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// First table is the scenario's main result.
    pub tables: Vec<ResultTable>,
    /// Named JSON side reports.
    pub reports: Vec<(String, serde_json::Value)>,
    pub files: Vec<PathBuf>,
}

impl RunOutput {
    pub fn table(&self, name: &str) -> Option<&ResultTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn main(&self) -> &ResultTable {
        &self.tables[0]
    }

    pub fn failed_rows(&self) -> usize {
        self.tables.iter().map(|t| t.failed_rows().len()).sum()
    }
}

fn in_pool<T: Send>(opts: &RunOptions, f: impl FnOnce() -> T + Send) -> Result<T> {
    match opts.jobs {
        None => Ok(f()),
        Some(0) => Err(Error::RejectedInput("--jobs must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::RejectedInput(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn finish(config: &ExperimentConfig, opts: &RunOptions, mut out: RunOutput) -> Result<RunOutput> {
    if opts.dry {
        return Ok(out);
    }
    fs::create_dir_all(&config.output_dir)?;
    for t in &out.tables {
        let path = config.output_dir.join(format!("{}.csv", t.name));
        t.write_csv(&path)?;
        out.files.push(path);
    }
    for (name, value) in &out.reports {
        let path = config.output_dir.join(format!("{name}.json"));
        fs::write(&path, serde_json::to_string_pretty(value)? + "\n")?;
        out.files.push(path);
    }
    Ok(out)
}

/// Execute the configured scenario and write its CSV files.
pub fn run(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutput> {
    let scenario = config.scenario()?;
    let out = in_pool(opts, || match scenario {
        Scenario::Fig1a => fig1(config, "fig1a", &[config.gamma]),
        Scenario::Fig1b => fig1(config, "fig1b", &config.gamma_list),
        Scenario::Fig2Dynamics => fidelity_runs(config, "fig2"),
        Scenario::Fig2DecaySweep | Scenario::Fig2DephasingSweep => sweep_rows(config, scenario),
        Scenario::TwoQubitCheck => two_qubit(config),
        Scenario::Custom if config.sweep.is_some() => sweep_rows(config, scenario),
        Scenario::Custom => fidelity_runs(config, "custom"),
    })??;
    finish(config, opts, out)
}

/// Run the configured rate sweep. A single-point sweep is one ordinary run.
pub fn sweep(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutput> {
    let scenario = config.scenario()?;
    if config.sweep.is_none() {
        return Err(Error::Validation(vec!["sweep requires a sweep block".into()]));
    }
    if matches!(scenario, Scenario::Fig1a | Scenario::Fig1b | Scenario::TwoQubitCheck) {
        return Err(Error::Validation(vec![format!("scenario {} has no rate sweep", scenario.name())]));
    }
    let out = in_pool(opts, || sweep_rows(config, scenario))??;
    finish(config, opts, out)
}

/// Write the pulse schedules each configured gate would use.
pub fn synth(config: &ExperimentConfig, opts: &RunOptions) -> Result<RunOutput> {
    let prov = Provenance::for_config(config);
    let mut index = ResultTable::new(
        "synth_index",
        &[("gate", Text), ("k", Int), ("schedule", Text), ("tau_s", Real), ("peak_omega_rad_s", Real), ("file", Text)],
        prov,
    );
    let mut schedules = Vec::new();
    for &gate in &config.gates {
        let (theta, gamma, phi) = gate.params();
        for convention in config.schedule.conventions() {
            for &k in &config.k_list {
                let path = HolonomicPath::with_convention(
                    theta,
                    phi,
                    gamma,
                    k,
                    config.eta_profile(),
                    config.omega0,
                    convention,
                )?;
                let sched = synthesize_constant_chi(&path, config.schedule_samples)?;
                let file = format!("schedule_{}_k{k}_{}.csv", gate.label(), convention.name());
                let peak = sched.omega.iter().copied().fold(0.0, f64::max);
                index.push(vec![
                    gate.label().into(),
                    k.into(),
                    convention.name().into(),
                    path.tau().into(),
                    peak.into(),
                    file.clone().into(),
                ])?;
                schedules.push((file, sched));
            }
        }
    }
    let mut out = finish(config, opts, RunOutput { tables: vec![index], reports: Vec::new(), files: Vec::new() })?;
    if !opts.dry {
        for (file, sched) in schedules {
            let path = config.output_dir.join(file);
            sched.write_csv(fs::File::create(&path)?)?;
            out.files.push(path);
        }
    }
    Ok(out)
}

fn fig1(config: &ExperimentConfig, name: &str, gammas: &[f64]) -> Result<RunOutput> {
    let prov = Provenance::for_config(config);
    let mut table = ResultTable::new(
        name,
        &[
            ("k", Int),
            ("gamma", Real),
            ("schedule", Text),
            ("time_avg_pop", Real),
            ("integrated_pop_s", Real),
            ("profile", Text),
            ("omega0_rad_s", Real),
            ("tau_s", Real),
            ("chi_rad", Real),
            ("closed_form_time_avg", Real),
            ("status", Text),
        ],
        prov,
    );
    let profile = config.eta_profile();
    let conventions = config.schedule.conventions();
    let rows: Vec<_> = gammas
        .par_iter()
        .map(|&g| constant_chi_population_scan(g, &config.k_list, &profile, config.omega0, &conventions, 64))
        .collect::<Result<Vec<_>>>()?;
    for row in rows.into_iter().flatten() {
        let path = HolonomicPath::with_convention(
            FRAC_PI_2,
            0.0,
            row.gamma,
            row.k,
            profile.clone(),
            config.omega0,
            row.schedule,
        )?;
        // Haar average of |⟨b|ψ⟩|² is ½, so the closed form is f(τ)/(2τ).
        let closed = f_tau(&path) / (2.0 * path.tau());
        table.push(vec![
            row.k.into(),
            row.gamma.into(),
            row.schedule.name().into(),
            row.time_avg_pop.into(),
            row.integrated_pop_s.into(),
            profile.name().into(),
            config.omega0.into(),
            row.tau_s.into(),
            path.chi().into(),
            closed.into(),
            "ok".into(),
        ])?;
    }

    let k = config.k_list[0];
    let path =
        HolonomicPath::with_convention(FRAC_PI_2, 0.0, gammas[0], k, profile.clone(), config.omega0, conventions[0])?;
    let samples = 64 * k as usize + 1;
    let haar = average_integrated_population(&path, InputSampling::Haar { n: 10_000, seed: config.seed }, samples)?;
    let grid = average_integrated_population(&path, InputSampling::FlatGrid { n_omega: 64, n_kappa: 128 }, samples)?;
    let report = json!({
        "k": k,
        "gamma": gammas[0],
        "schedule": conventions[0].name(),
        "f_tau": haar.f_tau,
        "candidates": {
            "half_f_tau": haar.haar_candidate,
            "flat_measure_pi_over_4_f_tau": haar.flat_measure_candidate,
            "eighth_f_tau": haar.eighth_candidate,
        },
        "haar": haar,
        "flat_grid": grid,
        "resolution": "uniform average over inputs gives f(τ)/2; the unnormalized flat (1/4π)dωdκ weight gives (π/4)f(τ); f(τ)/8 matches neither",
    });
    Ok(RunOutput { tables: vec![table], reports: vec![("population_prefactor".into(), report)], files: Vec::new() })
}

#[derive(Debug, Clone, Copy)]
struct FidelityJob {
    gate: GateSpec,
    k: u32,
    convention: DurationConvention,
    rates: Rates,
    value: Option<f64>,
}

struct JobOutcome {
    job: FidelityJob,
    tau: f64,
    report: std::result::Result<FidelityReport, String>,
}

impl JobOutcome {
    fn status(&self) -> &'static str {
        match &self.report {
            Ok(r) if !r.partial() => "ok",
            _ => "failed",
        }
    }
}

fn label(k: u32) -> &'static str {
    if k == 1 {
        "NHQC-baseline"
    } else {
        "DS-NHQC"
    }
}

fn sweep_settings(config: &ExperimentConfig) -> SweepSettings {
    SweepSettings {
        n_zeta: config.n_zeta,
        time_samples: config.time_samples,
        lindblad: LindbladSettings { steps_per_period: config.steps_per_period, min_steps: config.min_steps },
        ..SweepSettings::default()
    }
}

fn run_job(config: &ExperimentConfig, job: FidelityJob) -> JobOutcome {
    let (theta, gamma, phi) = job.gate.params();
    let mut tau = f64::NAN;
    let mut attempt = || -> Result<FidelityReport> {
        let path = HolonomicPath::with_convention(
            theta,
            phi,
            gamma,
            job.k,
            config.eta_profile(),
            config.omega0,
            job.convention,
        )?;
        tau = path.tau();
        let sched = synthesize_constant_chi(&path, config.schedule_samples)?;
        let model = lambda_hamiltonian(&sched, theta, phi)?;
        let channels = lambda_channels(job.rates.gamma1, job.rates.gamma2, job.rates.gamma_phi)?;
        let target = single_qubit_target(theta, gamma, phi).matrix;
        gate_fidelity_zeta_sweep(&model, &channels, &target, sweep_settings(config))
    };
    let report = attempt().map_err(|e| e.to_string());
    JobOutcome { job, tau, report }
}

fn jobs(config: &ExperimentConfig, values: Option<&SweepSpec>) -> Vec<FidelityJob> {
    let mut out = Vec::new();
    for &gate in &config.gates {
        for convention in config.schedule.conventions() {
            for &k in &config.k_list {
                match values {
                    None => out.push(FidelityJob { gate, k, convention, rates: config.rates, value: None }),
                    Some(s) => {
                        for v in s.values() {
                            let rates = s.param.apply(config.rates, v);
                            out.push(FidelityJob { gate, k, convention, rates, value: Some(v) });
                        }
                    }
                }
            }
        }
    }
    out
}

const PARAM_COLUMNS: [(&str, ColumnKind); 10] = [
    ("theta_rad", Real),
    ("gamma_rad", Real),
    ("phi_rad", Real),
    ("profile", Text),
    ("omega0_rad_s", Real),
    ("gamma1_rad_s", Real),
    ("gamma2_rad_s", Real),
    ("gamma_phi_rad_s", Real),
    ("n_zeta", Int),
    ("tau_s", Real),
];

fn param_cells(config: &ExperimentConfig, o: &JobOutcome) -> Vec<Cell> {
    let (theta, gamma, phi) = o.job.gate.params();
    vec![
        theta.into(),
        gamma.into(),
        phi.into(),
        config.profile.as_str().into(),
        config.omega0.into(),
        o.job.rates.gamma1.into(),
        o.job.rates.gamma2.into(),
        o.job.rates.gamma_phi.into(),
        config.n_zeta.into(),
        o.tau.into(),
    ]
}

fn columns(head: &[(&'static str, ColumnKind)]) -> Vec<(&'static str, ColumnKind)> {
    head.iter().copied().chain(PARAM_COLUMNS).collect()
}

fn summary_cells(o: &JobOutcome) -> [Cell; 5] {
    match &o.report {
        Ok(r) => {
            [r.average.into(), r.min().into(), r.max_trace_deviation.into(), r.min_eigenvalue.into(), r.steps.into()]
        }
        Err(_) => [f64::NAN.into(), f64::NAN.into(), f64::NAN.into(), f64::NAN.into(), 0usize.into()],
    }
}

fn fidelity_runs(config: &ExperimentConfig, stem: &str) -> Result<RunOutput> {
    let outcomes: Vec<JobOutcome> = jobs(config, None).into_par_iter().map(|j| run_job(config, j)).collect();
    let prov = Provenance::for_config(config);

    let mut dynamics = ResultTable::new(
        format!("{stem}_dynamics"),
        &columns(&[
            ("gate", Text),
            ("k", Int),
            ("schedule", Text),
            ("t_s", Real),
            ("avg_fidelity", Real),
            ("label", Text),
            ("status", Text),
        ]),
        prov.clone(),
    );
    let mut fin = ResultTable::new(
        format!("{stem}_final"),
        &columns(&[
            ("gate", Text),
            ("k", Int),
            ("schedule", Text),
            ("avg_fidelity", Real),
            ("label", Text),
            ("status", Text),
            ("min_fidelity", Real),
            ("max_trace_deviation", Real),
            ("min_eigenvalue", Real),
            ("rk4_steps", Int),
        ]),
        prov,
    );
    for o in &outcomes {
        let head = |t: Cell, f: Cell| -> Vec<Cell> {
            vec![
                o.job.gate.label().into(),
                o.job.k.into(),
                o.job.convention.name().into(),
                t,
                f,
                label(o.job.k).into(),
                o.status().into(),
            ]
        };
        match &o.report {
            Ok(r) => {
                for &(t, f) in &r.dynamics {
                    let mut row = head(t.into(), f.into());
                    row.extend(param_cells(config, o));
                    dynamics.push(row)?;
                }
            }
            Err(_) => {
                let mut row = head(f64::NAN.into(), f64::NAN.into());
                row.extend(param_cells(config, o));
                dynamics.push(row)?;
            }
        }
        let [avg, min, tr, eig, steps] = summary_cells(o);
        let mut row = vec![
            o.job.gate.label().into(),
            o.job.k.into(),
            o.job.convention.name().into(),
            avg,
            label(o.job.k).into(),
            o.status().into(),
            min,
            tr,
            eig,
            steps,
        ];
        row.extend(param_cells(config, o));
        fin.push(row)?;
    }
    let reports = error_report(&outcomes);
    Ok(RunOutput { tables: vec![dynamics, fin], reports, files: Vec::new() })
}

fn error_report(outcomes: &[JobOutcome]) -> Vec<(String, serde_json::Value)> {
    let errors: Vec<_> = outcomes
        .iter()
        .filter_map(|o| {
            o.report.as_ref().err().map(|e| {
                json!({
                    "gate": o.job.gate.label(),
                    "k": o.job.k,
                    "schedule": o.job.convention.name(),
                    "value_rad_s": o.job.value,
                    "error": e,
                })
            })
        })
        .collect();
    if errors.is_empty() {
        Vec::new()
    } else {
        vec![("failures".into(), serde_json::Value::Array(errors))]
    }
}

fn sweep_rows(config: &ExperimentConfig, scenario: Scenario) -> Result<RunOutput> {
    let spec = config.sweep.ok_or_else(|| Error::Validation(vec!["sweep requires a sweep block".into()]))?;
    let outcomes: Vec<JobOutcome> = jobs(config, Some(&spec)).into_par_iter().map(|j| run_job(config, j)).collect();
    let name = match scenario {
        Scenario::Fig2DecaySweep => "fig2_decay_sweep",
        Scenario::Fig2DephasingSweep => "fig2_dephasing_sweep",
        _ => "custom_sweep",
    };
    let mut table = ResultTable::new(
        name,
        &columns(&[
            ("gate", Text),
            ("k", Int),
            ("schedule", Text),
            ("swept_param", Text),
            ("value_rad_s", Real),
            ("avg_fidelity", Real),
            ("status", Text),
            ("label", Text),
            ("min_fidelity", Real),
            ("max_trace_deviation", Real),
            ("min_eigenvalue", Real),
            ("rk4_steps", Int),
        ]),
        Provenance::for_config(config),
    );
    for o in &outcomes {
        let [avg, min, tr, eig, steps] = summary_cells(o);
        let mut row = vec![
            o.job.gate.label().into(),
            o.job.k.into(),
            o.job.convention.name().into(),
            spec.param.name().into(),
            o.job.value.unwrap_or(f64::NAN).into(),
            avg,
            o.status().into(),
            label(o.job.k).into(),
            min,
            tr,
            eig,
            steps,
        ];
        row.extend(param_cells(config, o));
        table.push(row)?;
    }
    let reports = error_report(&outcomes);
    Ok(RunOutput { tables: vec![table], reports, files: Vec::new() })
}

fn two_qubit(config: &ExperimentConfig) -> Result<RunOutput> {
    let s = config.two_qubit;
    let check = check_effective_model(TwoQubitCheckParams {
        g: s.g,
        omega_peak: s.omega,
        delta: s.delta,
        n_max: s.n_max,
        k: s.k,
        gamma: s.gamma,
        smooth: s.smooth,
        steps: s.steps,
    })?;
    let mut table = ResultTable::new(
        "two_qubit_check",
        &[
            ("input", Text),
            ("fidelity_full_vs_effective", Real),
            ("fidelity_full_vs_target", Real),
            ("fidelity_effective_vs_target", Real),
            ("leakage_n_max", Real),
            ("status", Text),
            ("g_rad_s", Real),
            ("omega_rad_s", Real),
            ("delta_rad_s", Real),
            ("n_max", Int),
            ("k", Int),
            ("gamma_rad", Real),
            ("g1_rad_s", Real),
            ("g2_rad_s", Real),
            ("theta_mix_rad", Real),
            ("tau_s", Real),
            ("steps", Int),
        ],
        Provenance::for_config(config),
    );
    for o in &check.outcomes {
        table.push(vec![
            o.input.as_str().into(),
            o.fidelity_full_vs_effective.into(),
            o.fidelity_full_vs_target.into(),
            o.fidelity_effective_vs_target.into(),
            o.leakage.into(),
            "ok".into(),
            s.g.into(),
            s.omega.into(),
            s.delta.into(),
            s.n_max.into(),
            s.k.into(),
            s.gamma.into(),
            check.g1.into(),
            check.g2.into(),
            check.theta_mix.into(),
            check.tau.into(),
            s.steps.into(),
        ])?;
    }
    Ok(RunOutput { tables: vec![table], reports: Vec::new(), files: Vec::new() })
}
