//! Fast frictionless expansion of a harmonic trap.
//!
//! Scaling functions b(t) are designed to meet rest conditions at both ends
//! of the expansion, and the trap frequency that realizes them is read off
//! the Ermakov equation `b̈ + ω²(t) b = ω₀²/b³`. The same machinery builds the
//! three-jump bang-bang comparison protocols and the slow reference ramps.
//! [`dynamics`] provides the exact expanding-mode solutions and an
//! independent grid propagator to check them.
//!
//! The crate is `no_std` with `alloc` when the default `std` feature is off.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod ansatz;
pub mod bangbang;
pub mod dynamics;
pub mod ermakov;
pub mod error;
pub mod model;
pub mod numeric;
pub mod profile;
pub mod scaling;

pub use ansatz::{design_exp_polynomial, design_phase_constrained, design_polynomial, BoundaryConditions};
pub use bangbang::{bangbang_profile, solve_matching, t_min, BangBangPlan};
pub use ermakov::{adiabaticity_margin, ermakov_forward, inverse_frequency, linear_ramp, uniform_ramp};
pub use error::{Error, Result};
pub use model::{hz_to_angular, make_spec, OscillatorSpec};
pub use profile::FrequencyProfile;
pub use scaling::{Kinematics, ScalingLaw};
