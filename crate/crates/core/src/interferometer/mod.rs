//! Two interferometer layouts for isolating the OHMW phase.
//!
//! Geometry A is a Mach-Zehnder with one traveling beam per arm, the two
//! beams running in opposite directions: the atoms co-propagate with the
//! light in one arm and counter-propagate in the other. Geometry B splits a
//! cloud inside a single beam, sending the two halves with and against the
//! light at ±n recoil velocities.
//!
//! Beam splitters are instantaneous momentum kicks; their phases are common
//! to both arms and are not tracked.

use serde::{Deserialize, Serialize};

use crate::dynamics::{integrate, ForceModel, Trajectory, TrajectoryState};
use crate::fields::{Beam, BeamProfileKind, CounterpropagatingPair, FieldModel, Traveling};
use crate::phase::{ohmw_loop, phase_along, ClosedPath, PhaseBreakdown};
use crate::physics::constants::{C, HBAR};
use crate::physics::{AtomSpecies, LaserSpec};
use crate::{Error, Result, Vec3};

pub const DEFAULT_STEPS: usize = 1000;

/// Axial path length per arm used for the Geometry B default (m).
pub const DEFAULT_PATH_LENGTH: f64 = 0.05;

/// ħk/m for light of wavelength `lambda`.
pub fn recoil_velocity(atom: &AtomSpecies, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid("splitting_wavelength_m", "must be positive"));
    }
    Ok(HBAR * 2.0 * std::f64::consts::PI / lambda / atom.mass)
}

/// Deviation of an atomic trajectory from its beam axis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Misalignment {
    /// In-plane angle between trajectory and beam axis.
    pub theta_rad: f64,
    /// Transverse offset at the start of the arm, in waists.
    pub offset_waists: f64,
}

impl Misalignment {
    pub fn new(theta_rad: f64, offset_waists: f64) -> Self {
        Misalignment {
            theta_rad,
            offset_waists,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta_rad.abs() < 0.1) {
            return Err(Error::invalid(
                "misalignment",
                format!("|theta| must be below 0.1 rad, got {}", self.theta_rad),
            ));
        }
        if !self.offset_waists.is_finite() {
            return Err(Error::invalid("misalignment", "offset must be finite"));
        }
        Ok(())
    }

    /// Negated angle and offset: the mirror image through the beam axis.
    pub fn reflected(&self) -> Self {
        Misalignment::new(-self.theta_rad, -self.offset_waists)
    }
}

/// How each arm of Geometry A is lit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArmIllumination {
    /// One traveling beam per arm, the two running in opposite directions.
    #[default]
    CounterOriented,
    /// A retro-reflected standing wave on each arm (no net Poynting vector).
    StandingWave,
}

/// How arm trajectories are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArmMotion {
    /// RK4 under the dipole and Abraham forces. The beam is a dipole trap
    /// of order 100 μK deep, so slow arms oscillate transversely.
    #[default]
    Integrated,
    /// Straight lines at the initial velocity.
    Ballistic,
}

/// Two-beam Mach-Zehnder. Arm R runs along +x at y = +s/2 inside a beam
/// traveling along +x; arm L runs along +x at y = −s/2 inside a beam
/// traveling along −x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryA {
    pub laser: LaserSpec,
    /// s (m)
    pub arm_separation: f64,
    /// L (m)
    pub length: f64,
    /// v (m/s)
    pub speed: f64,
    /// Beam L carries (1 + imbalance) times the power of beam R.
    pub intensity_imbalance: f64,
    /// Applied to arm L relative to beam L.
    pub misalignment: Misalignment,
    pub illumination: ArmIllumination,
    /// Flip both beams.
    pub reverse_beams: bool,
    pub motion: ArmMotion,
    pub steps: usize,
}

impl GeometryA {
    pub fn new(laser: LaserSpec, length: f64, speed: f64) -> Self {
        GeometryA {
            laser,
            arm_separation: 1e-3,
            length,
            speed,
            intensity_imbalance: 0.0,
            misalignment: Misalignment::default(),
            illumination: ArmIllumination::CounterOriented,
            reverse_beams: false,
            motion: ArmMotion::Integrated,
            steps: DEFAULT_STEPS,
        }
    }

    /// The configuration worked through in the text: CO₂ laser, 5 cm, 1000 m/s.
    pub fn reference() -> Self {
        Self::new(LaserSpec::co2_50w(), 0.05, 1000.0)
    }

    pub fn with_speed(&self, speed: f64) -> Self {
        GeometryA { speed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        self.laser.validate()?;
        self.misalignment.validate()?;
        if !(self.arm_separation > 0.0 && self.length > 0.0 && self.speed > 0.0) {
            return Err(Error::invalid(
                "geometry_a",
                "separation, length and speed must be positive",
            ));
        }
        if !(self.intensity_imbalance > -1.0) {
            return Err(Error::invalid("geometry_a", "intensity imbalance must exceed -1"));
        }
        if self.steps < 2 {
            return Err(Error::invalid("geometry_a", "need at least two steps"));
        }
        if self.arm_separation < 4.0 * self.laser.waist {
            log::warn!(
                "arm separation {} m is under four waists; the beams overlap",
                self.arm_separation
            );
        }
        Ok(())
    }

    pub fn interaction_time(&self) -> f64 {
        self.length / self.speed
    }

    /// (beam R, beam L) as traveling beams.
    pub fn beams(&self) -> Result<(Beam, Beam)> {
        let half = 0.5 * self.arm_separation;
        let mut r = Beam::from_laser(&self.laser, Vec3::x(), Vec3::new(0.0, half, 0.0))?;
        let mut l = Beam::from_laser(&self.laser, -Vec3::x(), Vec3::new(0.0, -half, 0.0))?;
        l.peak_amplitude *= (1.0 + self.intensity_imbalance).sqrt();
        if self.reverse_beams {
            r = r.reversed();
            l = l.reversed();
        }
        Ok((r, l))
    }

    pub fn field(&self) -> Result<FieldModel> {
        let (r, l) = self.beams()?;
        let arm = |b: Beam| -> Result<FieldModel> {
            Ok(match self.illumination {
                ArmIllumination::CounterOriented => FieldModel::Beam(b),
                ArmIllumination::StandingWave => {
                    FieldModel::CounterpropagatingPair(CounterpropagatingPair::retro_reflected(Traveling::Beam(b))?)
                }
            })
        };
        Ok(FieldModel::Superposition(vec![arm(r)?, arm(l)?]))
    }

    /// Initial states of arms R and L after the first splitter.
    pub fn initial_states(&self) -> (TrajectoryState, TrajectoryState) {
        let half = 0.5 * self.arm_separation;
        let m = self.misalignment;
        let r = TrajectoryState::new(0.0, Vec3::new(0.0, half, 0.0), Vec3::new(self.speed, 0.0, 0.0));
        let l = TrajectoryState::new(
            0.0,
            Vec3::new(0.0, -half + m.offset_waists * self.laser.waist, 0.0),
            Vec3::new(m.theta_rad.cos(), m.theta_rad.sin(), 0.0) * self.speed,
        );
        (r, l)
    }
}

/// Single-beam LMT scheme. Both clouds start at the split point and move
/// along ±x at n·v_rec; the trajectory is tilted by θ in the xy-plane and
/// the split point sits `offset_waists` waists off axis along y.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryB {
    pub laser: LaserSpec,
    /// Recoils per arm; the sign selects which cloud moves with the light.
    pub n_recoils: i64,
    /// v_rec (m/s)
    pub recoil_velocity: f64,
    /// T (s)
    pub interaction_time: f64,
    pub misalignment: Misalignment,
    pub motion: ArmMotion,
    pub steps: usize,
}

impl GeometryB {
    /// Recoil velocity from the atom's own transition and T chosen for
    /// a 5 cm axial path per arm.
    pub fn new(laser: LaserSpec, atom: &AtomSpecies, n_recoils: i64) -> Result<Self> {
        let recoil_velocity = recoil_velocity(atom, atom.transition_wavelength())?;
        let speed = (n_recoils as f64 * recoil_velocity).abs();
        if speed == 0.0 {
            return Err(Error::invalid("n_recoils", "must be non-zero"));
        }
        Ok(GeometryB {
            laser,
            n_recoils,
            recoil_velocity,
            interaction_time: DEFAULT_PATH_LENGTH / speed,
            misalignment: Misalignment::default(),
            motion: ArmMotion::Integrated,
            steps: DEFAULT_STEPS,
        })
    }

    /// 50 W CO₂ laser with a second-order super-Gaussian profile, 400 recoils.
    pub fn reference(atom: &AtomSpecies) -> Result<Self> {
        let laser = LaserSpec::co2_50w().with_profile(BeamProfileKind::SuperGaussian { order: 2 });
        Self::new(laser, atom, 400)
    }

    pub fn with_misalignment(&self, misalignment: Misalignment) -> Self {
        GeometryB {
            misalignment,
            ..self.clone()
        }
    }

    pub fn with_motion(&self, motion: ArmMotion) -> Self {
        GeometryB { motion, ..self.clone() }
    }

    /// Arm velocity (signed, m/s).
    pub fn arm_speed(&self) -> f64 {
        self.n_recoils as f64 * self.recoil_velocity
    }

    pub fn path_length(&self) -> f64 {
        self.arm_speed().abs() * self.interaction_time
    }

    /// Same axial path, arm speed `speed`, by rescaling the recoil velocity.
    pub fn with_speed(&self, speed: f64) -> Self {
        let path = self.path_length();
        GeometryB {
            recoil_velocity: speed / self.n_recoils as f64,
            interaction_time: path / speed.abs(),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.laser.validate()?;
        self.misalignment.validate()?;
        if self.n_recoils == 0 {
            return Err(Error::invalid("n_recoils", "must be non-zero"));
        }
        if !(self.recoil_velocity > 0.0 && self.interaction_time > 0.0) {
            return Err(Error::invalid(
                "geometry_b",
                "recoil velocity and interaction time must be positive",
            ));
        }
        if self.steps < 2 {
            return Err(Error::invalid("geometry_b", "need at least two steps"));
        }
        Ok(())
    }

    pub fn beam(&self) -> Result<Beam> {
        Beam::from_laser(&self.laser, Vec3::x(), Vec3::zeros())
    }

    pub fn initial_states(&self) -> (TrajectoryState, TrajectoryState) {
        let m = self.misalignment;
        let x0 = Vec3::new(0.0, m.offset_waists * self.laser.waist, 0.0);
        let dir = Vec3::new(m.theta_rad.cos(), m.theta_rad.sin(), 0.0);
        let v = dir * self.arm_speed();
        (TrajectoryState::new(0.0, x0, v), TrajectoryState::new(0.0, x0, -v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InterferometerDiagnostics {
    /// Velocity change expected on entering the light, α𝓔̄²/(2mc) (m/s).
    pub entrance_kick_m_per_s: f64,
    /// Largest distance of each arm from its beam axis (m).
    pub max_r_perp_r_m: f64,
    pub max_r_perp_l_m: f64,
    pub max_beta: f64,
    pub interaction_time_s: f64,
    /// |ohmw/stark| on arm R.
    pub ohmw_to_stark_ratio: f64,
    /// OHMW phase from the closed-loop integral, where the layout has one.
    pub loop_ohmw_rad: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InterferometerResult {
    pub phase_r: PhaseBreakdown,
    pub phase_l: PhaseBreakdown,
    /// R − L
    pub delta: PhaseBreakdown,
    pub stark_residual_rad: f64,
    pub ohmw_signal_rad: f64,
    pub diagnostics: InterferometerDiagnostics,
}

impl InterferometerResult {
    fn new(phase_r: PhaseBreakdown, phase_l: PhaseBreakdown, diagnostics: InterferometerDiagnostics) -> Self {
        let delta = phase_r - phase_l;
        InterferometerResult {
            phase_r,
            phase_l,
            delta,
            stark_residual_rad: delta.stark,
            ohmw_signal_rad: delta.ohmw,
            diagnostics,
        }
    }
}

/// Largest distance from the beam axis, failing if it ever exceeds a waist.
fn check_inside(traj: &Trajectory, beam: &Beam, arm: &'static str) -> Result<f64> {
    let mut max: f64 = 0.0;
    for s in &traj.states {
        let r = beam.radial_distance(&s.x);
        if r > beam.waist {
            return Err(Error::ExitedBeam { arm, t: s.t, r_perp: r });
        }
        max = max.max(r);
    }
    Ok(max)
}

#[allow(clippy::too_many_arguments)]
fn fly(
    model: &FieldModel,
    motion: ArmMotion,
    alpha: f64,
    atom: &AtomSpecies,
    initial: TrajectoryState,
    t: f64,
    steps: usize,
) -> Result<Trajectory> {
    match motion {
        ArmMotion::Integrated => integrate(
            model,
            ForceModel::DipolePlusAbraham,
            alpha,
            atom,
            initial,
            t,
            t / steps as f64,
        ),
        ArmMotion::Ballistic => Trajectory::straight_line(initial.x, initial.v, t, steps, atom.mass),
    }
}

fn entrance_kick(alpha: f64, e_sq: f64, atom: &AtomSpecies) -> f64 {
    alpha * e_sq / (2.0 * atom.mass * C)
}

pub fn run_geometry_a(g: &GeometryA, atom: &AtomSpecies, alpha: f64) -> Result<InterferometerResult> {
    g.validate()?;
    let model = g.field()?;
    let (beam_r, beam_l) = g.beams()?;
    let (r0, l0) = g.initial_states();
    let t = g.interaction_time();
    let (traj_r, traj_l) = rayon::join(
        || fly(&model, g.motion, alpha, atom, r0, t, g.steps),
        || fly(&model, g.motion, alpha, atom, l0, t, g.steps),
    );
    let (traj_r, traj_l) = (traj_r?, traj_l?);
    let max_r = check_inside(&traj_r, &beam_r, "R")?;
    let max_l = check_inside(&traj_l, &beam_l, "L")?;

    let phase_r = phase_along(&traj_r, &model, alpha, atom)?;
    let phase_l = phase_along(&traj_l, &model, alpha, atom)?;

    let corners = [traj_r.first().x, traj_r.last().x, traj_l.last().x, traj_l.first().x];
    let path = ClosedPath::polygon(&corners, g.steps)?;
    let loop_ohmw = ohmw_loop(&path, &model, alpha, 0.0);

    let diagnostics = InterferometerDiagnostics {
        entrance_kick_m_per_s: entrance_kick(alpha, beam_r.peak_amplitude.powi(2), atom),
        max_r_perp_r_m: max_r,
        max_r_perp_l_m: max_l,
        max_beta: traj_r.diagnostics.max_beta.max(traj_l.diagnostics.max_beta),
        interaction_time_s: t,
        ohmw_to_stark_ratio: (phase_r.ohmw / phase_r.stark).abs(),
        loop_ohmw_rad: Some(loop_ohmw),
    };
    Ok(InterferometerResult::new(phase_r, phase_l, diagnostics))
}

pub fn run_geometry_b(g: &GeometryB, atom: &AtomSpecies, alpha: f64) -> Result<InterferometerResult> {
    g.validate()?;
    let beam = g.beam()?;
    let model = FieldModel::Beam(beam);
    let (r0, l0) = g.initial_states();
    let t = g.interaction_time;
    let (traj_r, traj_l) = rayon::join(
        || fly(&model, g.motion, alpha, atom, r0, t, g.steps),
        || fly(&model, g.motion, alpha, atom, l0, t, g.steps),
    );
    let (traj_r, traj_l) = (traj_r?, traj_l?);
    let max_r = check_inside(&traj_r, &beam, "R")?;
    let max_l = check_inside(&traj_l, &beam, "L")?;

    let phase_r = phase_along(&traj_r, &model, alpha, atom)?;
    let phase_l = phase_along(&traj_l, &model, alpha, atom)?;
    let diagnostics = InterferometerDiagnostics {
        entrance_kick_m_per_s: entrance_kick(alpha, beam.peak_amplitude.powi(2), atom),
        max_r_perp_r_m: max_r,
        max_r_perp_l_m: max_l,
        max_beta: traj_r.diagnostics.max_beta.max(traj_l.diagnostics.max_beta),
        interaction_time_s: t,
        ohmw_to_stark_ratio: (phase_r.ohmw / phase_r.stark).abs(),
        loop_ohmw_rad: None,
    };
    Ok(InterferometerResult::new(phase_r, phase_l, diagnostics))
}

#[cfg(test)]
mod tests;
