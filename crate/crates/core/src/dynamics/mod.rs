//! Leading-order equations of motion for a polarizable atom and their
//! fixed-step integration.
//!
//! The cycle-averaged force is `F = (α/4)∇𝓔̄² + αμ₀∂ₜ⟨S⟩`: the gradient
//! (dipole) force plus the Röntgen term, which for a single atom is the
//! Abraham force. Terms of second order in v/c are dropped.

mod balazs;
mod rk4;

use serde::{Deserialize, Serialize};

pub use balazs::{balazs_closed_form_displacement, balazs_experiment, BalazsOptions, BalazsResult, Recoil};
pub use rk4::rk4_step;

use crate::fields::FieldModel;
use crate::physics::constants::{C, MU0};
use crate::physics::{AtomSpecies, MediumParams};
use crate::{Error, Result, Vec3};

/// |v|/c must stay below this for the leading-order equations to apply.
pub const BETA_LIMIT: f64 = 0.1;

/// Default minimum number of steps across the shortest envelope feature.
pub const MIN_STEPS_PER_FEATURE: usize = 1000;

/// Which forces act on the atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForceModel {
    /// Gradient force only (what the Minkowski picture predicts).
    DipoleOnly,
    /// Gradient force plus the Röntgen/Abraham force.
    DipolePlusAbraham,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryState {
    /// s
    pub t: f64,
    /// m
    pub x: Vec3,
    /// m/s
    pub v: Vec3,
}

impl TrajectoryState {
    pub fn new(t: f64, x: Vec3, v: Vec3) -> Self {
        TrajectoryState { t, x, v }
    }

    pub fn at_rest(x: Vec3) -> Self {
        Self::new(0.0, x, Vec3::zeros())
    }

    pub fn beta(&self) -> f64 {
        self.v.norm() / C
    }

    pub fn check_beta(&self) -> Result<()> {
        let beta = self.beta();
        if !(beta < BETA_LIMIT) {
            return Err(Error::BetaGuard { t: self.t, beta });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// kg·m/s
    pub net_impulse: Vec3,
    /// m
    pub displacement: Vec3,
    pub max_beta: f64,
    /// Largest |v(t) − v(0)| along the trajectory (m/s).
    pub peak_speed_change: f64,
}

/// States on a uniform time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<TrajectoryState>,
    pub dt: f64,
    pub diagnostics: Diagnostics,
}

impl Trajectory {
    /// Builds a trajectory from precomputed states, e.g. a straight line.
    pub fn from_states(states: Vec<TrajectoryState>, mass: f64) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::invalid("trajectory", "need at least two states"));
        }
        let dt = (states[states.len() - 1].t - states[0].t) / (states.len() - 1) as f64;
        let traj = Trajectory {
            diagnostics: diagnostics(&states, mass),
            states,
            dt,
        };
        traj.check_uniform()?;
        Ok(traj)
    }

    /// Straight-line motion `x0 + v t` for t in [0, duration], `steps` intervals.
    pub fn straight_line(x0: Vec3, v: Vec3, duration: f64, steps: usize, mass: f64) -> Result<Self> {
        let steps = steps.max(1);
        let dt = duration / steps as f64;
        let states = (0..=steps)
            .map(|i| {
                let t = i as f64 * dt;
                TrajectoryState::new(t, x0 + v * t, v)
            })
            .collect();
        Self::from_states(states, mass)
    }

    pub fn first(&self) -> &TrajectoryState {
        &self.states[0]
    }

    pub fn last(&self) -> &TrajectoryState {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn duration(&self) -> f64 {
        self.last().t - self.first().t
    }

    pub fn check_uniform(&self) -> Result<()> {
        if !(self.dt > 0.0) {
            return Err(Error::NonUniformGrid { index: 0 });
        }
        let t0 = self.states[0].t;
        for (i, s) in self.states.iter().enumerate() {
            let expected = t0 + i as f64 * self.dt;
            if (s.t - expected).abs() > 1e-9 * self.dt {
                return Err(Error::NonUniformGrid { index: i });
            }
        }
        Ok(())
    }
}

fn diagnostics(states: &[TrajectoryState], mass: f64) -> Diagnostics {
    let first = &states[0];
    let last = &states[states.len() - 1];
    Diagnostics {
        net_impulse: (last.v - first.v) * mass,
        displacement: last.x - first.x,
        max_beta: states.iter().map(TrajectoryState::beta).fold(0.0, f64::max),
        peak_speed_change: states.iter().map(|s| (s.v - first.v).norm()).fold(0.0, f64::max),
    }
}

/// The two force contributions at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Forces {
    /// (α/4)∇𝓔̄² (N)
    pub dipole: Vec3,
    /// αμ₀∂ₜ⟨S⟩ (N); zero under [`ForceModel::DipoleOnly`].
    pub abraham: Vec3,
}

impl Forces {
    pub fn total(&self) -> Vec3 {
        self.dipole + self.abraham
    }
}

fn forces_unchecked(model: &FieldModel, force_model: ForceModel, alpha: f64, x: &Vec3, t: f64) -> Forces {
    let ca = model.cycle_averaged(x, t);
    let abraham = match force_model {
        ForceModel::DipoleOnly => Vec3::zeros(),
        ForceModel::DipolePlusAbraham => ca.poynting_bar_rate * (alpha * MU0),
    };
    Forces {
        dipole: ca.grad_e_sq_bar * (0.25 * alpha),
        abraham,
    }
}

/// Cycle-averaged force on an atom of polarizability `alpha` in `state`.
pub fn force_at(model: &FieldModel, force_model: ForceModel, alpha: f64, state: &TrajectoryState) -> Result<Forces> {
    state.check_beta()?;
    Ok(forces_unchecked(model, force_model, alpha, &state.x, state.t))
}

/// Stark potential −(α/4)𝓔̄² (J).
pub fn stark_potential(model: &FieldModel, alpha: f64, x: &Vec3, t: f64) -> f64 {
    -0.25 * alpha * model.cycle_averaged(x, t).e_sq_bar
}

/// The Abraham force density (ε_rμ_r − 1)/c² ∂ₜS integrated over the
/// volume occupied by one atom of a dilute medium.
pub fn abraham_force_in_medium(medium: &MediumParams, poynting_rate: &Vec3) -> Vec3 {
    poynting_rate * (medium.abraham_susceptibility() / (C * C) * medium.volume)
}

/// Integration controls beyond the time grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrateOptions {
    /// Required steps across the shortest envelope feature.
    pub min_steps_per_feature: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            min_steps_per_feature: MIN_STEPS_PER_FEATURE,
        }
    }
}

/// Fixed-step RK4 from `initial` to `t_end`. The step is adjusted down so
/// that a whole number of steps fits the interval.
pub fn integrate(
    model: &FieldModel,
    force_model: ForceModel,
    alpha: f64,
    atom: &AtomSpecies,
    initial: TrajectoryState,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate_with(
        model,
        force_model,
        alpha,
        atom,
        initial,
        t_end,
        dt,
        IntegrateOptions::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn integrate_with(
    model: &FieldModel,
    force_model: ForceModel,
    alpha: f64,
    atom: &AtomSpecies,
    initial: TrajectoryState,
    t_end: f64,
    dt: f64,
    options: IntegrateOptions,
) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("integration", format!("dt must be positive, got {dt}")));
    }
    let span = t_end - initial.t;
    if !(span > 0.0) {
        return Err(Error::invalid("integration", "t_end must be after the initial time"));
    }
    if let Some(feature) = model.feature_time() {
        let required = options.min_steps_per_feature as f64;
        if feature / dt < required * (1.0 - 1e-9) {
            return Err(Error::invalid(
                "integration",
                format!(
                    "dt = {dt:e} s gives {:.1} steps across a {feature:e} s envelope feature; need {required}",
                    feature / dt
                ),
            ));
        }
    }
    for w in model.warnings() {
        log::warn!("{w}");
    }
    initial.check_beta()?;

    let steps = (span / dt * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let inv_mass = 1.0 / atom.mass;
    let rhs = |t: f64, y: &[f64; 6]| -> [f64; 6] {
        let x = Vec3::new(y[0], y[1], y[2]);
        let a = forces_unchecked(model, force_model, alpha, &x, t).total() * inv_mass;
        [y[3], y[4], y[5], a.x, a.y, a.z]
    };

    let mut states = Vec::with_capacity(steps + 1);
    states.push(initial);
    let mut y = [
        initial.x.x,
        initial.x.y,
        initial.x.z,
        initial.v.x,
        initial.v.y,
        initial.v.z,
    ];
    for i in 0..steps {
        let t = initial.t + i as f64 * h;
        y = rk4_step(&rhs, t, &y, h);
        let state = TrajectoryState::new(
            initial.t + (i + 1) as f64 * h,
            Vec3::new(y[0], y[1], y[2]),
            Vec3::new(y[3], y[4], y[5]),
        );
        state.check_beta()?;
        states.push(state);
    }
    Ok(Trajectory {
        diagnostics: diagnostics(&states, atom.mass),
        states,
        dt: h,
    })
}
