//! Photon occupancy kinetics in an electron-positron-photon system where a
//! drifting carrier population drags the photon gas.
//!
//! Units are natural (`hbar = c = 1`); speeds are fractions of `c` and
//! temperatures are energies. [`model::UnitScale`] converts to a physical
//! scale at the boundary.

// Inputs are screened with `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod carriers;
pub mod cli;
pub mod error;
pub mod kinetics;
pub mod model;
pub mod observables;
pub mod occupancy;
pub mod pulse;

pub use error::{Error, Result};
