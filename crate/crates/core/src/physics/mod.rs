//! Constants, species data, laser parameters and two-level atom response.

pub mod constants;
mod laser;
mod response;
mod species;

pub use constants::PhysicalConstants;
pub use laser::LaserSpec;
pub use response::{
    detuning, effective_mass_correction, momentum_densities, polarizability_approx, polarizability_full,
    rabi_frequency, saturation_and_emission, MediumParams, MomentumDensities, Saturation,
};
pub use species::{AtomSpecies, SpeciesData};
