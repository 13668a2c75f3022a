//! Target gates, bright/dark bases and the effective two-qubit model.

mod check;
mod single;
mod two;

pub use check::{check_effective_model, computational_block, BasisOutcome, TwoQubitCheck, TwoQubitCheckParams};
pub use single::{bright_dark_basis, qubit_bright_dark, single_qubit_target, GatePreset, SingleQubitTarget};
pub use two::{
    effective_coupling, effective_hamiltonian, effective_hamiltonian_driven, gate_overlap, mixing_angle,
    two_qubit_gate, EffectiveTwoQubitParams, GateJson, EFFECTIVE_BASIS,
};
