//! Closed- and open-system propagation of small time-dependent models.

mod cavity;
mod lindblad;
mod model;
mod result;
mod schrodinger;

pub use cavity::{two_nv_cavity_driven, two_nv_cavity_hamiltonian, TwoQubitDrive, TwoQubitModel, MAX_PHOTONS};
pub(crate) use lindblad::evolve_operators;
pub use lindblad::{propagate_lindblad, LindbladSettings, POSITIVITY_FAIL_TOL, TRACE_FAIL_TOL};
pub use model::{lambda_channels, lambda_hamiltonian, HamiltonianModel, LindbladChannel, EXCITED, GROUND_0, GROUND_1};
pub use result::{Diagnostics, PropagationResult, RunFailure, Trajectory};
pub use schrodinger::{propagate_schrodinger, propagate_unitary, NORM_FAIL_TOL};
