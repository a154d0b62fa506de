use serde::{Deserialize, Serialize};

use super::constants::{C, EPS0};
use crate::fields::{profile_area, BeamProfileKind};
use crate::{Error, Result};

/// A continuous-wave laser beam as it would be specified on a lab bench.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaserSpec {
    /// m
    pub wavelength: f64,
    /// W
    pub power: f64,
    /// 1/e amplitude radius (m).
    pub waist: f64,
    pub profile: BeamProfileKind,
}

impl LaserSpec {
    pub fn new(wavelength: f64, power: f64, waist: f64, profile: BeamProfileKind) -> Result<Self> {
        let spec = LaserSpec {
            wavelength,
            power,
            waist,
            profile,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// 50 W CO₂ laser at 10.6 μm with a 100 μm Gaussian waist.
    pub fn co2_50w() -> Self {
        LaserSpec {
            wavelength: 10.6e-6,
            power: 50.0,
            waist: 100e-6,
            profile: BeamProfileKind::Gaussian,
        }
    }

    pub fn with_profile(self, profile: BeamProfileKind) -> Self {
        LaserSpec { profile, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wavelength.is_finite() && self.wavelength > 0.0) {
            return Err(Error::invalid(
                "laser",
                format!("wavelength must be positive, got {}", self.wavelength),
            ));
        }
        if !(self.power.is_finite() && self.power >= 0.0) {
            return Err(Error::invalid(
                "laser",
                format!("power must be non-negative, got {}", self.power),
            ));
        }
        if !(self.waist.is_finite() && self.waist > 0.0) {
            return Err(Error::invalid(
                "laser",
                format!("waist must be positive, got {}", self.waist),
            ));
        }
        self.profile.validate()
    }

    pub fn omega(&self) -> f64 {
        2.0 * std::f64::consts::PI * C / self.wavelength
    }

    /// On-axis intensity (W/m²). For a Gaussian this is 2P/(πw²); other
    /// profiles are normalised to carry the same total power.
    pub fn peak_intensity(&self) -> f64 {
        self.power / profile_area(self.profile, self.waist)
    }

    /// On-axis field amplitude 𝓔̄ (N/C), from I = ½cε₀𝓔̄².
    pub fn peak_amplitude(&self) -> f64 {
        (2.0 * self.peak_intensity() / (C * EPS0)).sqrt()
    }
}
