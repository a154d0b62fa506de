//! Scenario dispatch.

use crate::dynamics::{balazs_closed_form_displacement, balazs_experiment, ForceModel};
use crate::fields::{PlaneWave, TravelingPulse};
use crate::interferometer::{run_geometry_a, run_geometry_b};
use crate::physics::{polarizability_full, AtomSpecies};
use crate::sensitivity::{monte_carlo, velocity_sweep};
use crate::{Result, Vec3};

use super::check::reference_check;
use super::config::{RunConfig, Scenario};
use super::output::{BalazsOutput, BalazsRun, Outputs, RunOutput, SCHEMA_VERSION};

/// Polarizability in effect: the configured value or the two-level result
/// at the laser's peak field.
pub fn resolve_alpha(cfg: &RunConfig, atom: &AtomSpecies) -> Result<f64> {
    match cfg.alpha_c2_m_per_n {
        Some(a) => Ok(a),
        None => {
            let laser = cfg.laser.spec()?;
            polarizability_full(atom, laser.omega(), laser.peak_amplitude())
        }
    }
}

/// Runs `scenario`. `seed` replaces the Monte Carlo seed of the config.
pub fn run(scenario: Scenario, cfg: &RunConfig, seed: Option<u64>) -> Result<RunOutput> {
    cfg.require(scenario)?;
    let species = cfg.species_data()?;
    let atom = AtomSpecies::from_data(&species)?;
    let laser = cfg.laser.spec()?;
    let alpha = resolve_alpha(cfg, &atom)?;

    let mut inputs = cfg.clone();
    inputs.scenario = Some(scenario);
    inputs.species = Some(species);
    inputs.species_file = None;
    inputs.output = None;
    if scenario == Scenario::Check && inputs.check.is_none() {
        inputs.check = Some(Default::default());
    }
    if let (Some(seed), Some(s)) = (seed, inputs.sensitivity.as_mut()) {
        s.rng_seed = seed;
    }
    let echoed_seed = match scenario {
        Scenario::Sensitivity => inputs.sensitivity.map(|s| s.rng_seed),
        _ => seed,
    };
    log::info!("scenario {scenario}: species {}, alpha = {alpha:e} C^2 m/N", atom.name);

    let outputs = match scenario {
        Scenario::Check => Outputs::Check(reference_check(
            inputs.check.as_ref().expect("filled above"),
            &laser,
            &atom,
            alpha,
        )?),
        Scenario::Balazs => {
            let b = inputs.balazs.expect("required");
            let e0 = laser.peak_amplitude();
            let carrier = PlaneWave::new(e0, Vec3::x(), Vec3::y(), laser.omega())?;
            let pulse = TravelingPulse::new(carrier, b.envelope()?, 0.0)?;
            let (with, without) = rayon::join(
                || balazs_experiment(&pulse, &atom, alpha, ForceModel::DipolePlusAbraham, b.options()),
                || balazs_experiment(&pulse, &atom, alpha, ForceModel::DipoleOnly, b.options()),
            );
            Outputs::Balazs(BalazsOutput {
                alpha_c2_m_per_n: alpha,
                field_amplitude_n_per_c: e0,
                effective_duration_s: pulse.envelope.effective_duration(),
                closed_form_displacement_m: balazs_closed_form_displacement(&pulse, &atom, alpha),
                runs: vec![
                    BalazsRun::new(ForceModel::DipolePlusAbraham, &with?),
                    BalazsRun::new(ForceModel::DipoleOnly, &without?),
                ],
            })
        }
        Scenario::PhaseA => {
            let g = inputs.phase_a.expect("required").geometry(laser);
            Outputs::Interferometer(run_geometry_a(&g, &atom, alpha)?)
        }
        Scenario::PhaseB => {
            let g = inputs.phase_b.expect("required").geometry(laser, &atom)?;
            Outputs::Interferometer(run_geometry_b(&g, &atom, alpha)?)
        }
        Scenario::Sweep => {
            let s = inputs.sweep.as_ref().expect("required");
            let scheme = inputs.scheme(s.geometry, &atom)?;
            Outputs::Sweep(velocity_sweep(&scheme, &atom, alpha, &s.velocities_m_per_s)?)
        }
        Scenario::Sensitivity => {
            let s = inputs.sensitivity.expect("required");
            let scheme = inputs.scheme(s.geometry, &atom)?;
            let result = monte_carlo(&scheme, &s.spec(), &atom, alpha)?;
            if result.summary.n_failed > 0 {
                log::warn!("{} of {} samples failed", result.summary.n_failed, s.n_samples);
            }
            Outputs::Sensitivity(result)
        }
    };
    Ok(RunOutput {
        schema_version: SCHEMA_VERSION,
        scenario,
        seed: echoed_seed,
        inputs,
        outputs,
    })
}
