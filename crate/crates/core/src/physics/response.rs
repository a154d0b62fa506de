//! Two-level atom response to a monochromatic field.

use serde::{Deserialize, Serialize};

use super::constants::{C, EPS0, HBAR};
use super::species::AtomSpecies;
use crate::{Error, Result, Vec3};

/// δ = ω_L − ω_a (rad/s). Negative for red detuning.
pub fn detuning(atom: &AtomSpecies, omega_l: f64) -> f64 {
    omega_l - atom.omega_a
}

/// Ω = d_ge·𝓔̄/ħ for a field of amplitude `field_amplitude` (N/C).
pub fn rabi_frequency(atom: &AtomSpecies, field_amplitude: f64) -> f64 {
    atom.d_ge * field_amplitude / HBAR
}

/// Two-level polarizability including linewidth and power broadening:
/// α = −(d²/ħ) δ / (δ² + Γ²/4 + Ω²/2). Positive below resonance.
pub fn polarizability_full(atom: &AtomSpecies, omega_l: f64, field_amplitude: f64) -> Result<f64> {
    if !(omega_l.is_finite() && omega_l > 0.0) {
        return Err(Error::Domain(format!(
            "laser frequency must be positive, got {omega_l}"
        )));
    }
    if !(field_amplitude.is_finite() && field_amplitude >= 0.0) {
        return Err(Error::Domain(format!(
            "field amplitude must be non-negative, got {field_amplitude}"
        )));
    }
    let delta = detuning(atom, omega_l);
    let rabi = rabi_frequency(atom, field_amplitude);
    let denom = delta * delta + 0.25 * atom.gamma * atom.gamma + 0.5 * rabi * rabi;
    if denom == 0.0 {
        return Err(Error::Domain(
            "polarizability undefined on resonance with zero linewidth and zero field".into(),
        ));
    }
    Ok(-(atom.d_ge * atom.d_ge / HBAR) * delta / denom)
}

/// Far-detuned limit α ≈ −d²/(ħδ).
pub fn polarizability_approx(atom: &AtomSpecies, omega_l: f64) -> Result<f64> {
    let delta = detuning(atom, omega_l);
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::Domain(
            "far-detuned polarizability requires nonzero detuning".into(),
        ));
    }
    Ok(-(atom.d_ge * atom.d_ge) / (HBAR * delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Saturation {
    /// Saturation parameter s.
    pub s: f64,
    /// Excited-state population p₂.
    pub p2: f64,
    /// Mean time before a spontaneous emission, 1/(Γp₂) (s). Infinite when
    /// the field is off.
    pub t_decay: f64,
}

/// s = (Ω²/2)/(δ² + Γ²/4), p₂ = ½s/(1+s), t = 1/(Γp₂).
pub fn saturation_and_emission(atom: &AtomSpecies, omega_l: f64, field_amplitude: f64) -> Result<Saturation> {
    if !(field_amplitude.is_finite() && field_amplitude >= 0.0) {
        return Err(Error::Domain(format!(
            "field amplitude must be non-negative, got {field_amplitude}"
        )));
    }
    let delta = detuning(atom, omega_l);
    let rabi = rabi_frequency(atom, field_amplitude);
    let s = 0.5 * rabi * rabi / (delta * delta + 0.25 * atom.gamma * atom.gamma);
    let p2 = 0.5 * s / (1.0 + s);
    let t_decay = if p2 > 0.0 {
        1.0 / (atom.gamma * p2)
    } else {
        f64::INFINITY
    };
    Ok(Saturation { s, p2, t_decay })
}

/// αE²/(mc²): relative size of the acceleration-dependent mass correction
/// that the leading-order equations of motion drop.
pub fn effective_mass_correction(alpha: f64, field_sq: f64, atom: &AtomSpecies) -> Result<f64> {
    if !(field_sq >= 0.0) {
        return Err(Error::Domain(format!("field_sq must be non-negative, got {field_sq}")));
    }
    Ok(alpha * field_sq / (atom.mass * C * C))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumDensities {
    /// E×H/c² (kg/(m²·s)).
    pub abraham: Vec3,
    /// D×B (kg/(m²·s)).
    pub minkowski: Vec3,
}

pub fn momentum_densities(e: &Vec3, h: &Vec3, d: &Vec3, b: &Vec3) -> MomentumDensities {
    MomentumDensities {
        abraham: e.cross(h) / (C * C),
        minkowski: d.cross(b),
    }
}

/// A dilute gas of polarizable atoms treated as a medium, one atom per
/// `volume`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumParams {
    pub alpha: f64,
    pub volume: f64,
    pub n: f64,
    pub eps_r: f64,
    pub mu_r: f64,
}

impl MediumParams {
    /// n² = ε_r = 1 + α/(ε₀V), μ_r = 1.
    pub fn dilute(alpha: f64, volume: f64) -> Result<Self> {
        if !(volume.is_finite() && volume > 0.0) {
            return Err(Error::invalid(
                "medium",
                format!("volume must be positive, got {volume}"),
            ));
        }
        let eps_r = 1.0 + alpha / (EPS0 * volume);
        if eps_r <= 0.0 {
            return Err(Error::Domain(format!("relative permittivity {eps_r} is not positive")));
        }
        Ok(MediumParams {
            alpha,
            volume,
            n: eps_r.sqrt(),
            eps_r,
            mu_r: 1.0,
        })
    }

    /// ε_rμ_r − 1, the prefactor of the Abraham force density.
    pub fn abraham_susceptibility(&self) -> f64 {
        // eps_r - 1 loses all precision for a single atom in a macroscopic
        // volume; use the defining ratio instead.
        self.alpha / (EPS0 * self.volume) * self.mu_r + (self.mu_r - 1.0)
    }
}
