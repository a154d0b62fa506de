//! Tolerance studies: seeded Monte Carlo over misalignment and intensity
//! imbalance, and the velocity sweep separating geometric from dynamical
//! phase.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::interferometer::{run_geometry_a, run_geometry_b, GeometryA, GeometryB, InterferometerResult, Misalignment};
use crate::physics::constants::C;
use crate::physics::AtomSpecies;
use crate::{Error, Result};

pub const DEFAULT_TRUNCATION_SIGMAS: f64 = 3.0;

fn default_truncation() -> f64 {
    DEFAULT_TRUNCATION_SIGMAS
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSpec {
    pub theta_sigma_rad: f64,
    pub offset_sigma_waists: f64,
    /// Relative; Geometry A only.
    #[serde(default)]
    pub intensity_imbalance_sigma: f64,
    pub n_samples: usize,
    pub rng_seed: u64,
    /// Draws beyond this many σ are rejected and redrawn.
    #[serde(default = "default_truncation")]
    pub truncation_sigmas: f64,
}

impl PerturbationSpec {
    pub fn new(theta_sigma_rad: f64, offset_sigma_waists: f64, n_samples: usize, rng_seed: u64) -> Self {
        PerturbationSpec {
            theta_sigma_rad,
            offset_sigma_waists,
            intensity_imbalance_sigma: 0.0,
            n_samples,
            rng_seed,
            truncation_sigmas: DEFAULT_TRUNCATION_SIGMAS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, s) in [
            ("theta_sigma_rad", self.theta_sigma_rad),
            ("offset_sigma_waists", self.offset_sigma_waists),
            ("intensity_imbalance_sigma", self.intensity_imbalance_sigma),
        ] {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::invalid(
                    "perturbation",
                    format!("{name} must be a non-negative number"),
                ));
            }
        }
        if self.n_samples == 0 {
            return Err(Error::invalid("perturbation", "n_samples must be at least 1"));
        }
        if !(self.truncation_sigmas > 0.0) {
            return Err(Error::invalid("perturbation", "truncation_sigmas must be positive"));
        }
        Ok(())
    }

    /// The perturbation with every quantity at its σ value.
    pub fn worst_case(&self) -> SampleInputs {
        SampleInputs {
            theta_rad: self.theta_sigma_rad,
            offset_waists: self.offset_sigma_waists,
            intensity_imbalance: self.intensity_imbalance_sigma,
        }
    }
}

/// Either interferometer layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "geometry", rename_all = "snake_case")]
pub enum Scheme {
    A(GeometryA),
    B(GeometryB),
}

impl Scheme {
    pub fn run(&self, atom: &AtomSpecies, alpha: f64) -> Result<InterferometerResult> {
        match self {
            Scheme::A(g) => run_geometry_a(g, atom, alpha),
            Scheme::B(g) => run_geometry_b(g, atom, alpha),
        }
    }

    /// Nominal geometry plus the sampled deviations.
    pub fn perturbed(&self, p: &SampleInputs) -> Scheme {
        match self {
            Scheme::A(g) => Scheme::A(GeometryA {
                misalignment: Misalignment::new(
                    g.misalignment.theta_rad + p.theta_rad,
                    g.misalignment.offset_waists + p.offset_waists,
                ),
                intensity_imbalance: g.intensity_imbalance + p.intensity_imbalance,
                ..g.clone()
            }),
            Scheme::B(g) => Scheme::B(g.with_misalignment(Misalignment::new(
                g.misalignment.theta_rad + p.theta_rad,
                g.misalignment.offset_waists + p.offset_waists,
            ))),
        }
    }

    /// Same spatial layout, arm speed `v`.
    pub fn with_speed(&self, v: f64) -> Scheme {
        match self {
            Scheme::A(g) => Scheme::A(g.with_speed(v)),
            Scheme::B(g) => Scheme::B(g.with_speed(v)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SampleInputs {
    pub theta_rad: f64,
    pub offset_waists: f64,
    pub intensity_imbalance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub index: usize,
    pub inputs: SampleInputs,
    pub stark_residual_rad: f64,
    pub ohmw_signal_rad: f64,
    /// Set when this sample failed; the phases are then NaN.
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub mean: f64,
    /// Sample standard deviation (n − 1); zero for a single value.
    pub std: f64,
    /// Nearest-rank 95th percentile.
    pub p95: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Option<Stats> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let rank = ((0.95 * n).ceil() as usize).clamp(1, sorted.len());
        Some(Stats {
            mean,
            std,
            p95: sorted[rank - 1],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub abs_stark_residual_rad: Option<Stats>,
    pub ohmw_signal_rad: Option<Stats>,
    /// |ohmw − nominal| / |nominal|
    pub ohmw_relative_deviation: Option<Stats>,
    pub n_ok: usize,
    pub n_failed: usize,
}

impl Summary {
    pub fn of(samples: &[Sample], nominal_ohmw: f64) -> Summary {
        let ok: Vec<&Sample> = samples.iter().filter(|s| s.error.is_none()).collect();
        let stark: Vec<f64> = ok.iter().map(|s| s.stark_residual_rad.abs()).collect();
        let ohmw: Vec<f64> = ok.iter().map(|s| s.ohmw_signal_rad).collect();
        let dev: Vec<f64> = ohmw.iter().map(|o| ((o - nominal_ohmw) / nominal_ohmw).abs()).collect();
        Summary {
            abs_stark_residual_rad: Stats::of(&stark),
            ohmw_signal_rad: Stats::of(&ohmw),
            ohmw_relative_deviation: Stats::of(&dev),
            n_ok: ok.len(),
            n_failed: samples.len() - ok.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub nominal: InterferometerResult,
    /// Every deviation at its σ value, all with the same sign.
    pub worst_case: Option<InterferometerResult>,
    pub samples: Vec<Sample>,
    pub summary: Summary,
}

fn truncated(rng: &mut ChaCha8Rng, sigma: f64, k: f64) -> f64 {
    loop {
        let z: f64 = rng.sample(StandardNormal);
        if z.abs() <= k {
            return sigma * z;
        }
    }
}

/// Deviations for every sample, drawn in index order. The standard normal
/// stream is consumed even for zero σ, so the draws for one quantity do not
/// depend on the others' σ.
pub fn draw_inputs(scheme: &Scheme, spec: &PerturbationSpec) -> Vec<SampleInputs> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let k = spec.truncation_sigmas;
    (0..spec.n_samples)
        .map(|_| {
            let theta_rad = truncated(&mut rng, spec.theta_sigma_rad, k);
            let offset_waists = truncated(&mut rng, spec.offset_sigma_waists, k);
            let intensity_imbalance = match scheme {
                Scheme::A(_) => truncated(&mut rng, spec.intensity_imbalance_sigma, k),
                Scheme::B(_) => 0.0,
            };
            SampleInputs {
                theta_rad,
                offset_waists,
                intensity_imbalance,
            }
        })
        .collect()
}

/// Runs the interferometer for each drawn deviation. Failing samples are
/// kept with their error message; only the nominal run is fatal.
pub fn monte_carlo(scheme: &Scheme, spec: &PerturbationSpec, atom: &AtomSpecies, alpha: f64) -> Result<SweepResult> {
    spec.validate()?;
    let nominal = scheme.run(atom, alpha)?;
    let worst_case = scheme.perturbed(&spec.worst_case()).run(atom, alpha).ok();
    let inputs = draw_inputs(scheme, spec);
    let samples: Vec<Sample> = inputs
        .par_iter()
        .enumerate()
        .map(|(index, p)| match scheme.perturbed(p).run(atom, alpha) {
            Ok(r) => Sample {
                index,
                inputs: *p,
                stark_residual_rad: r.stark_residual_rad,
                ohmw_signal_rad: r.ohmw_signal_rad,
                error: None,
            },
            Err(e) => Sample {
                index,
                inputs: *p,
                stark_residual_rad: f64::NAN,
                ohmw_signal_rad: f64::NAN,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let summary = Summary::of(&samples, nominal.ohmw_signal_rad);
    Ok(SweepResult {
        nominal,
        worst_case,
        samples,
        summary,
    })
}

/// Least-squares fit φ(v) = a/v + b.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VelocityFit {
    /// a (rad·m/s): the dynamical, Stark-like part.
    pub fit_a_over_v: f64,
    /// b (rad): the velocity-independent, geometric part.
    pub fit_const: f64,
    /// √Σ residual² (rad).
    pub residual_norm: f64,
    pub velocities_m_per_s: Vec<f64>,
    pub phases_rad: Vec<f64>,
}

pub fn fit_inverse_velocity(velocities: &[f64], phases: &[f64]) -> Result<VelocityFit> {
    if velocities.len() != phases.len() {
        return Err(Error::invalid(
            "velocity sweep",
            "velocities and phases differ in length",
        ));
    }
    if velocities.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::invalid("velocity sweep", "velocities must be positive"));
    }
    let mut distinct = velocities.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::SingularFit(format!(
            "need at least 3 distinct velocities, got {}",
            distinct.len()
        )));
    }
    let n = velocities.len() as f64;
    let x: Vec<f64> = velocities.iter().map(|v| 1.0 / v).collect();
    let mx = x.iter().sum::<f64>() / n;
    let my = phases.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|xi| (xi - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(phases).map(|(xi, yi)| (xi - mx) * (yi - my)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    let residual_norm = x
        .iter()
        .zip(phases)
        .map(|(xi, yi)| (yi - a * xi - b).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(VelocityFit {
        fit_a_over_v: a,
        fit_const: b,
        residual_norm,
        velocities_m_per_s: velocities.to_vec(),
        phases_rad: phases.to_vec(),
    })
}

/// Runs the scheme at each speed and fits the light-induced phase of arm R
/// (Stark plus OHMW) to a/v + b. The kinetic term grows like v and is left
/// out of the fit.
pub fn velocity_sweep(scheme: &Scheme, atom: &AtomSpecies, alpha: f64, velocities: &[f64]) -> Result<VelocityFit> {
    for v in velocities {
        if !(*v > 0.0 && *v < 0.1 * C) {
            return Err(Error::invalid(
                "velocity sweep",
                format!("speed {v} m/s is outside (0, 0.1c)"),
            ));
        }
    }
    let phases = velocities
        .par_iter()
        .map(|v| scheme.with_speed(*v).run(atom, alpha).map(|r| r.phase_r.interaction()))
        .collect::<Result<Vec<f64>>>()?;
    fit_inverse_velocity(velocities, &phases)
}
