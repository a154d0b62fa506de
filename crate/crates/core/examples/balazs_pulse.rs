//! A light pulse passes a single atom at rest. With the Abraham force the
//! atom is left displaced along the light; with the gradient force alone,
//! against it.
//!
//! `cargo run --example balazs_pulse`

use ohmw::dynamics::{balazs_closed_form_displacement, balazs_experiment, ForceModel};
use ohmw::fields::{Envelope, PlaneWave, TravelingPulse};
use ohmw::physics::{polarizability_full, AtomSpecies, LaserSpec};
use ohmw::Vec3;

fn main() -> ohmw::Result<()> {
    let atom = AtomSpecies::lithium7();
    let laser = LaserSpec::co2_50w();
    let carrier = PlaneWave::new(laser.peak_amplitude(), Vec3::x(), Vec3::y(), laser.omega())?;
    let alpha = polarizability_full(&atom, laser.omega(), laser.peak_amplitude())?;

    for envelope in [
        Envelope::SmoothstepEdges {
            duration: 1e-6,
            edge: 2e-7,
        },
        Envelope::Gaussian { sigma: 3e-7 },
    ] {
        let pulse = TravelingPulse::new(carrier, envelope, 0.0)?;
        println!("{envelope:?}");
        for model in [ForceModel::DipolePlusAbraham, ForceModel::DipoleOnly] {
            let r = balazs_experiment(&pulse, &atom, alpha, model, Default::default())?;
            println!(
                "  {model:?}: dx = {:+.4e} m ({:?}), residual momentum {:.1e} of peak",
                r.displacement.x,
                r.sign,
                r.net_impulse.norm() / r.peak_impulse
            );
        }
        println!(
            "  closed form: {:+.4e} m",
            balazs_closed_form_displacement(&pulse, &atom, alpha).x
        );
    }
    Ok(())
}
