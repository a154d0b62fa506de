//! Interferometric phase from the cycle-averaged Lagrangian.
//!
//! Along a trajectory the phase is split into
//!
//! * kinetic: ħ⁻¹∫½mv² dt
//! * stark:   ħ⁻¹∫(α/4)𝓔̄² dt
//! * ohmw:    −ħ⁻¹∫(α/2)β·(𝓔̄×𝓑̄c) dt
//!
//! The rest energy is dropped everywhere; it is common to both arms.

use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::fields::FieldModel;
use crate::physics::constants::{C, HBAR};
use crate::physics::AtomSpecies;
use crate::{Error, Result, Vec3};

/// Largest allowed |Σdr| of a closed path (m).
pub const CLOSURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhaseBreakdown {
    #[serde(rename = "kinetic_rad")]
    pub kinetic: f64,
    #[serde(rename = "stark_rad")]
    pub stark: f64,
    #[serde(rename = "ohmw_rad")]
    pub ohmw: f64,
    #[serde(rename = "total_rad")]
    pub total: f64,
}

impl PhaseBreakdown {
    pub fn new(kinetic: f64, stark: f64, ohmw: f64) -> Self {
        PhaseBreakdown {
            kinetic,
            stark,
            ohmw,
            total: kinetic + stark + ohmw,
        }
    }

    /// Stark plus OHMW; the part that depends on the light.
    pub fn interaction(&self) -> f64 {
        self.stark + self.ohmw
    }

    pub fn largest(&self) -> f64 {
        self.kinetic.abs().max(self.stark.abs()).max(self.ohmw.abs())
    }
}

impl Sub for PhaseBreakdown {
    type Output = PhaseBreakdown;

    fn sub(self, rhs: Self) -> Self {
        PhaseBreakdown {
            kinetic: self.kinetic - rhs.kinetic,
            stark: self.stark - rhs.stark,
            ohmw: self.ohmw - rhs.ohmw,
            total: self.total - rhs.total,
        }
    }
}

impl Add for PhaseBreakdown {
    type Output = PhaseBreakdown;

    fn add(self, rhs: Self) -> Self {
        PhaseBreakdown {
            kinetic: self.kinetic + rhs.kinetic,
            stark: self.stark + rhs.stark,
            ohmw: self.ohmw + rhs.ohmw,
            total: self.total + rhs.total,
        }
    }
}

impl Neg for PhaseBreakdown {
    type Output = PhaseBreakdown;

    fn neg(self) -> Self {
        PhaseBreakdown {
            kinetic: -self.kinetic,
            stark: -self.stark,
            ohmw: -self.ohmw,
            total: -self.total,
        }
    }
}

/// Composite quadrature weights for `n` uniform intervals of width `h`.
/// Simpson for even `n`; for odd `n` the last three intervals use the 3/8
/// rule. A single interval falls back to the trapezoid.
pub fn quadrature_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n + 1];
    match n {
        0 => {}
        1 => {
            w[0] = 0.5 * h;
            w[1] = 0.5 * h;
        }
        _ => {
            let simpson_end = if n.is_multiple_of(2) { n } else { n - 3 };
            for i in (0..simpson_end).step_by(2) {
                w[i] += h / 3.0;
                w[i + 1] += 4.0 * h / 3.0;
                w[i + 2] += h / 3.0;
            }
            if n % 2 == 1 {
                let s = n - 3;
                for (j, c) in [1.0, 3.0, 3.0, 1.0].iter().enumerate() {
                    w[s + j] += 3.0 * h / 8.0 * c;
                }
            }
        }
    }
    w
}

/// Integrates samples taken on a uniform grid of spacing `h`.
pub fn integrate_uniform(samples: &[f64], h: f64) -> f64 {
    if samples.len() < 2 {
        return 0.0;
    }
    quadrature_weights(samples.len() - 1, h)
        .iter()
        .zip(samples)
        .map(|(w, f)| w * f)
        .sum()
}

/// Phase accumulated along `traj` in `model`.
pub fn phase_along(traj: &Trajectory, model: &FieldModel, alpha: f64, atom: &AtomSpecies) -> Result<PhaseBreakdown> {
    traj.check_uniform()?;
    let n = traj.states.len();
    let (mut kin, mut stark, mut ohmw) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for s in &traj.states {
        let ca = model.cycle_averaged(&s.x, s.t);
        kin.push(0.5 * atom.mass * s.v.norm_squared());
        stark.push(0.25 * alpha * ca.e_sq_bar);
        ohmw.push(-0.5 * alpha * s.v.dot(&ca.e_bar_cross_b_bar()));
    }
    let h = traj.dt;
    Ok(PhaseBreakdown::new(
        integrate_uniform(&kin, h) / HBAR,
        integrate_uniform(&stark, h) / HBAR,
        integrate_uniform(&ohmw, h) / HBAR,
    ))
}

/// One quadrature node of a line integral: position and weighted step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathElement {
    pub x: Vec3,
    pub dr: Vec3,
}

/// A closed path discretised as weighted nodes, Σ f(x)·dr ≈ ∮ f·dr.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedPath {
    elements: Vec<PathElement>,
}

impl ClosedPath {
    pub fn new(elements: Vec<PathElement>) -> Result<Self> {
        let path = ClosedPath { elements };
        let residual = path.closure_residual();
        if !(residual <= CLOSURE_TOL) {
            return Err(Error::OpenPath { residual });
        }
        Ok(path)
    }

    /// Polygon through `vertices` (closed back to the first one), each edge
    /// split into `intervals_per_edge` Simpson intervals (rounded up to even).
    pub fn polygon(vertices: &[Vec3], intervals_per_edge: usize) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::invalid("path", "a polygon needs at least two vertices"));
        }
        let n = intervals_per_edge.max(2);
        let n = n + n % 2;
        let weights = quadrature_weights(n, 1.0 / n as f64);
        let mut elements = Vec::with_capacity(vertices.len() * (n + 1));
        for (i, a) in vertices.iter().enumerate() {
            let b = vertices[(i + 1) % vertices.len()];
            let edge = b - a;
            for (j, w) in weights.iter().enumerate() {
                elements.push(PathElement {
                    x: a + edge * (j as f64 / n as f64),
                    dr: edge * *w,
                });
            }
        }
        Self::new(elements)
    }

    pub fn elements(&self) -> &[PathElement] {
        &self.elements
    }

    pub fn closure_residual(&self) -> f64 {
        self.elements.iter().fold(Vec3::zeros(), |acc, e| acc + e.dr).norm()
    }

    /// Same path traversed the other way. Node order is kept so that sums
    /// over the reversed path are exact negatives.
    pub fn reversed(&self) -> Self {
        ClosedPath {
            elements: self
                .elements
                .iter()
                .map(|e| PathElement { x: e.x, dr: -e.dr })
                .collect(),
        }
    }
}

/// Σ (B(x)×d(x))·dr over the path.
fn hmw_sum(path: &ClosedPath, b: impl Fn(&Vec3) -> Vec3, d: impl Fn(&Vec3) -> Vec3) -> f64 {
    path.elements.iter().map(|e| b(&e.x).cross(&d(&e.x)).dot(&e.dr)).sum()
}

/// Static He-McKellar-Wilkens phase ħ⁻¹∮(B×d)·dr.
pub fn static_hmw_phase(path: &ClosedPath, b: impl Fn(&Vec3) -> Vec3, d: impl Fn(&Vec3) -> Vec3) -> f64 {
    hmw_sum(path, b, d) / HBAR
}

/// Optical HMW phase (1/2ħ)∮(𝓑̄×d*)·dr for given amplitude fields `b_bar`
/// and induced dipole `d_star = α𝓔̄`.
pub fn ohmw_loop_fields(path: &ClosedPath, b_bar: impl Fn(&Vec3) -> Vec3, d_star: impl Fn(&Vec3) -> Vec3) -> f64 {
    hmw_sum(path, b_bar, d_star) / (2.0 * HBAR)
}

/// Optical HMW phase of `path` in `model`, with envelopes frozen at `t`.
/// Uses the cycle-averaged 𝓑̄×𝓔̄, so it also covers multi-beam models.
pub fn ohmw_loop(path: &ClosedPath, model: &FieldModel, alpha: f64, t: f64) -> f64 {
    let sum: f64 = path
        .elements
        .iter()
        .map(|e| model.cycle_averaged(&e.x, t).b_bar_cross_e_bar.dot(&e.dr))
        .sum();
    alpha * sum / (2.0 * HBAR)
}

/// Closed-form phase estimates for co-propagation over a length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseEstimates {
    /// −α𝓔̄²L/(ħc)
    #[serde(rename = "ohmw_est_rad")]
    pub ohmw: f64,
    /// α𝓔̄²L/(2ħv)
    #[serde(rename = "stark_est_rad")]
    pub stark: f64,
    /// |ohmw/stark| = 2v/c
    pub ratio: f64,
}

pub fn estimate_phases(alpha: f64, e_sq_bar: f64, length: f64, v: f64) -> Result<PhaseEstimates> {
    if !(length > 0.0) {
        return Err(Error::invalid("length_m", "must be positive"));
    }
    if !(v > 0.0) {
        return Err(Error::invalid("speed_m_per_s", "must be positive"));
    }
    if !(e_sq_bar >= 0.0) {
        return Err(Error::invalid("e_sq_bar", "must be non-negative"));
    }
    let ohmw = -alpha * e_sq_bar * length / (HBAR * C);
    let stark = alpha * e_sq_bar * length / (2.0 * HBAR * v);
    Ok(PhaseEstimates {
        ohmw,
        stark,
        ratio: 2.0 * v / C,
    })
}

/// Phase from the full relativistic Lagrangian, rest energy removed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactPhase {
    /// ħ⁻¹∫mc²(1 − 1/γ) dt
    #[serde(rename = "free_rad")]
    pub free: f64,
    /// ħ⁻¹∫¼γα[|Ẽ + v×B̃|² − |Ẽ·β|²] dt
    #[serde(rename = "interaction_rad")]
    pub interaction: f64,
    #[serde(rename = "total_rad")]
    pub total: f64,
}

pub fn exact_lagrangian_phase(
    traj: &Trajectory,
    model: &FieldModel,
    alpha: f64,
    atom: &AtomSpecies,
) -> Result<ExactPhase> {
    traj.check_uniform()?;
    let mc2 = atom.mass * C * C;
    let (mut free, mut inter) = (Vec::new(), Vec::new());
    for s in &traj.states {
        s.check_beta()?;
        let b2 = s.v.norm_squared() / (C * C);
        let inv_gamma = (1.0 - b2).sqrt();
        // 1 − 1/γ without cancellation
        free.push(mc2 * b2 / (1.0 + inv_gamma));
        inter.push(0.25 * alpha * model.moving_frame_e_sq_bar(&s.x, s.t, &s.v) * inv_gamma);
    }
    let free = integrate_uniform(&free, traj.dt) / HBAR;
    let interaction = integrate_uniform(&inter, traj.dt) / HBAR;
    Ok(ExactPhase {
        free,
        interaction,
        total: free + interaction,
    })
}

#[cfg(test)]
mod tests;
