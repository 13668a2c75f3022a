use std::io::Write;

use crate::error::Result;
use crate::linalg::{DensityMatrix, StateVector};

/// Why a run was flagged as failed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub step: usize,
    pub time: f64,
    pub reason: String,
}

/// Integrator health over a run.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    /// max |⟨ψ|ψ⟩ − 1| (pure) or max |Tr ρ − 1| (mixed) over all steps.
    pub max_norm_deviation: f64,
    /// Smallest eigenvalue of ρ over retained samples (1 for pure runs).
    pub min_eigenvalue: f64,
    pub steps: usize,
    pub failure: Option<RunFailure>,
}

impl Diagnostics {
    pub(crate) fn new() -> Self {
        Self { max_norm_deviation: 0.0, min_eigenvalue: 1.0, steps: 0, failure: None }
    }

    pub(crate) fn fail(&mut self, step: usize, time: f64, reason: String) {
        if self.failure.is_none() {
            self.failure = Some(RunFailure { step, time, reason });
        }
    }
}

#[derive(Debug, Clone)]
pub enum Trajectory {
    Pure(Vec<StateVector>),
    Mixed(Vec<DensityMatrix>),
}

/// States at the requested sample times plus diagnostics.
#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub grid: Vec<f64>,
    pub trajectory: Trajectory,
    pub diagnostics: Diagnostics,
    pub basis_labels: Vec<String>,
}

impl PropagationResult {
    pub fn failed(&self) -> bool {
        self.diagnostics.failure.is_some()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn population(&self, sample: usize, index: usize) -> f64 {
        match &self.trajectory {
            Trajectory::Pure(s) => s[sample].population(index),
            Trajectory::Mixed(r) => r[sample].population(index),
        }
    }

    pub fn populations(&self, index: usize) -> Vec<f64> {
        (0..self.len()).map(|i| self.population(i, index)).collect()
    }

    fn trace_deviation(&self, sample: usize) -> f64 {
        match &self.trajectory {
            Trajectory::Pure(s) => (s[sample].norm_sqr() - 1.0).abs(),
            Trajectory::Mixed(r) => r[sample].trace_deviation(),
        }
    }

    pub fn final_pure(&self) -> Option<&StateVector> {
        match &self.trajectory {
            Trajectory::Pure(s) => s.last(),
            Trajectory::Mixed(_) => None,
        }
    }

    pub fn final_density(&self) -> DensityMatrix {
        match &self.trajectory {
            Trajectory::Pure(s) => s.last().expect("non-empty run").to_density(),
            Trajectory::Mixed(r) => r.last().expect("non-empty run").clone(),
        }
    }

    /// CSV `t_s,pop_<label>...,trace_dev` at 12 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t_s".to_string()];
        header.extend(self.basis_labels.iter().map(|l| format!("pop_{l}")));
        header.push("trace_dev".into());
        w.write_record(&header)?;
        for (i, t) in self.grid.iter().enumerate() {
            let mut row = vec![sci12(*t)];
            row.extend((0..self.basis_labels.len()).map(|j| sci12(self.population(i, j))));
            row.push(sci12(self.trace_deviation(i)));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn sci12(x: f64) -> String {
    format!("{x:.11e}")
}
