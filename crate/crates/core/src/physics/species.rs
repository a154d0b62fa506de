use std::path::Path;

use serde::{Deserialize, Serialize};

use super::constants::{AMU, C};
use crate::{Error, Result};

const LI7_DATA: &str = include_str!("../../data/li7.toml");

/// On-disk form of a species file. Every key is required and unknown keys
/// are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpeciesData {
    pub name: String,
    pub mass_amu: f64,
    pub wavelength_nm: f64,
    pub gamma_over_2pi_hz: f64,
    pub d_ge_si: f64,
}

impl SpeciesData {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("species file: {e}")))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("species file {}: {e}", path.display())))
    }

    pub fn lithium7() -> Self {
        Self::parse(LI7_DATA).expect("bundled 7Li data parses")
    }
}

/// A two-level atom. All fields are SI; `gamma` is an angular rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomSpecies {
    pub name: String,
    /// kg
    pub mass: f64,
    /// Transition angular frequency (rad/s).
    pub omega_a: f64,
    /// Dipole matrix element magnitude (C·m).
    pub d_ge: f64,
    /// Natural linewidth Γ (rad/s).
    pub gamma: f64,
}

impl AtomSpecies {
    pub fn new(name: impl Into<String>, mass: f64, omega_a: f64, d_ge: f64, gamma: f64) -> Result<Self> {
        let atom = AtomSpecies {
            name: name.into(),
            mass,
            omega_a,
            d_ge,
            gamma,
        };
        atom.validate()?;
        Ok(atom)
    }

    pub fn from_data(data: &SpeciesData) -> Result<Self> {
        for (key, value) in [
            ("mass_amu", data.mass_amu),
            ("wavelength_nm", data.wavelength_nm),
            ("gamma_over_2pi_hz", data.gamma_over_2pi_hz),
            ("d_ge_si", data.d_ge_si),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config(format!(
                    "species file: key `{key}` must be finite and positive, got {value}"
                )));
            }
        }
        Self::new(
            data.name.clone(),
            data.mass_amu * AMU,
            2.0 * std::f64::consts::PI * C / (data.wavelength_nm * 1e-9),
            data.d_ge_si,
            2.0 * std::f64::consts::PI * data.gamma_over_2pi_hz,
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_data(&SpeciesData::load(path)?)
    }

    /// ⁷Li on the D₂ line, from the bundled data file.
    pub fn lithium7() -> Self {
        Self::from_data(&SpeciesData::lithium7()).expect("bundled 7Li data is valid")
    }

    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("mass", self.mass),
            ("omega_a", self.omega_a),
            ("d_ge", self.d_ge),
            ("gamma", self.gamma),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(
                    "atom species",
                    format!("{what} must be positive, got {v}"),
                ));
            }
        }
        if self.gamma / self.omega_a >= 1e-3 {
            return Err(Error::invalid(
                "atom species",
                format!("linewidth too broad: gamma/omega_a = {:e}", self.gamma / self.omega_a),
            ));
        }
        Ok(())
    }

    pub fn transition_wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI * C / self.omega_a
    }
}
