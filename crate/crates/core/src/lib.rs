//! Pulse synthesis, propagation and benchmarking for decoherence-suppressed
//! non-adiabatic holonomic gates in Λ systems.

pub mod control;
pub mod dynamics;
mod error;
pub mod experiment;
pub mod gates;
pub mod linalg;
pub mod metrics;

pub use error::{Error, Result};
