//! Excited-state population functionals and gate fidelities.

mod fidelity;
mod population;

pub use fidelity::{
    gate_fidelity_zeta_sweep, process_fidelity, state_fidelity, zeta_grid, FidelityReport, SweepMode, SweepSettings,
};
pub use population::{
    average_integrated_population, constant_chi_population_scan, f_tau, haar_instantaneous_population, haar_qubit,
    integrated_excited_population, population_bracket, AveragePopulation, InputSampling, InstantaneousAverage,
    PopulationMeta, PopulationReport, PopulationRow,
};
