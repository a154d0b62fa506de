//! Simulation of a neutral polarizable atom in classical laser fields.
//!
//! The crate computes the cycle-averaged dipole and Röntgen (Abraham) forces
//! acting on a two-level atom, integrates its trajectory, and accumulates the
//! interferometric phase along each arm of an atom interferometer. The phase
//! is split into kinetic, AC Stark and optical He-McKellar-Wilkens (OHMW)
//! parts so that the geometric contribution can be separated from the much
//! larger dynamical ones.
//!
//! Layout:
//!
//! * [`physics`]: constants, species data, laser parameters and the two-level
//!   response (polarizability, saturation, momentum densities).
//! * [`fields`]: plane waves, pulses and beams with analytic cycle averages.
//! * [`dynamics`]: forces and fixed-step RK4 trajectories, including the
//!   single-atom Balazs pulse scenario.
//! * [`phase`]: phase accumulation along trajectories and closed loops.
//! * [`interferometer`]: the two-beam Mach-Zehnder and single-beam LMT schemes.
//! * [`sensitivity`]: Monte Carlo tolerance studies and velocity sweeps.
//! * [`io`]: configuration files, scenario runner and CSV/JSON output.

// negated comparisons below are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod fields;
pub mod interferometer;
pub mod io;
pub mod phase;
pub mod physics;
pub mod sensitivity;

pub use error::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;
