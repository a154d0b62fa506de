//! A light pulse passing a single atom initially at rest.
//!
//! With both forces the atom ends up displaced along the direction of
//! propagation (the Abraham picture); with the gradient force alone it is
//! displaced against it. In both cases it is left at rest once the pulse
//! has gone.

use serde::{Deserialize, Serialize};

use super::{integrate_with, ForceModel, IntegrateOptions, Trajectory, TrajectoryState};
use crate::fields::{FieldModel, TravelingPulse};
use crate::physics::constants::C;
use crate::physics::AtomSpecies;
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recoil {
    WithLight,
    AgainstLight,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalazsOptions {
    /// Steps across the shortest envelope feature.
    pub steps_per_feature: usize,
    /// End of the simulation; by default shortly after the pulse has passed.
    pub t_end: Option<f64>,
}

impl Default for BalazsOptions {
    fn default() -> Self {
        BalazsOptions {
            steps_per_feature: super::MIN_STEPS_PER_FEATURE,
            t_end: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalazsResult {
    /// m
    pub displacement: Vec3,
    /// kg·m/s
    pub net_impulse: Vec3,
    pub sign: Recoil,
    /// Largest momentum the atom carries while the pulse overlaps it.
    pub peak_impulse: f64,
    pub trajectory: Trajectory,
}

/// α𝓔̄²τ_eff/(4mc) along the pulse direction, with τ_eff = ∫envelope² dt.
/// Leading order in the atom's own displacement.
pub fn balazs_closed_form_displacement(pulse: &TravelingPulse, atom: &AtomSpecies, alpha: f64) -> Vec3 {
    let a2 = pulse.carrier.amplitude * pulse.carrier.amplitude;
    pulse.carrier.direction * (alpha * a2 * pulse.envelope.effective_duration() / (4.0 * atom.mass * C))
}

/// Runs an atom at rest at the origin through `pulse`.
pub fn balazs_experiment(
    pulse: &TravelingPulse,
    atom: &AtomSpecies,
    alpha: f64,
    force_model: ForceModel,
    options: BalazsOptions,
) -> Result<BalazsResult> {
    pulse.envelope.validate()?;
    let origin = Vec3::zeros();
    let (t_start, t_pass) = pulse.passage_interval(&origin);
    let span = t_pass - t_start;
    let t_end = match options.t_end {
        Some(t) if t < t_pass => return Err(Error::PulseNotPassed { t_end: t, t_pass }),
        Some(t) => t,
        None => t_pass + 0.05 * span,
    };
    let (dt, min_steps) = match pulse.envelope.feature_time() {
        Some(feature) => (feature / options.steps_per_feature as f64, options.steps_per_feature),
        None => {
            log::warn!("discontinuous envelope; forces are impulsive and the trajectory is unresolved");
            (span / 1e5, 0)
        }
    };
    let model = FieldModel::TravelingPulse(*pulse);
    let initial = TrajectoryState::new(t_start, origin, Vec3::zeros());
    let trajectory = integrate_with(
        &model,
        force_model,
        alpha,
        atom,
        initial,
        t_end,
        dt,
        IntegrateOptions {
            min_steps_per_feature: min_steps,
        },
    )?;
    let d = trajectory.diagnostics;
    let sign = if d.displacement.dot(&pulse.carrier.direction) >= 0.0 {
        Recoil::WithLight
    } else {
        Recoil::AgainstLight
    };
    Ok(BalazsResult {
        displacement: d.displacement,
        net_impulse: d.net_impulse,
        sign,
        peak_impulse: d.peak_speed_change * atom.mass,
        trajectory,
    })
}
