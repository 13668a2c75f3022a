//! Holonomic loop parameters, control synthesis and the closed-form propagator.

mod path;
mod propagator;
mod schedule;
mod synth;

pub use path::{
    check_holonomic_condition, chi_from_gamma, uniform_grid, DurationConvention, EtaProfile, HolonomicCheck,
    HolonomicPath, HOLONOMIC_TOL,
};
pub use propagator::{cayley_klein, closed_form_propagator, lambda_propagator, qubit_block};
pub use schedule::PulseSchedule;
pub use synth::{
    derive_controls_for_path, derive_controls_numerically, synthesize_constant_chi, synthesize_general, ControlFormula,
    GeneralSynthesis, NumericalControls, CYCLIC_TOL, STRUCTURE_TOL,
};
