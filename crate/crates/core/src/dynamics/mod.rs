//! Quantum states of the trapped particle: the analytic expanding modes, the
//! instantaneous eigenbasis, grid wavefunctions and the grid propagator used
//! to check the designs independently.

pub mod grid;
pub mod hermite;
pub mod mode;
pub mod propagate;

pub use grid::{fidelity, populations, GridState};
pub use mode::{instantaneous_eigenstate, ExpandingMode};
pub use propagate::{propagate, GridConfig, Propagator};
