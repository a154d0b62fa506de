//! Large-momentum-transfer split inside one beam: both arms see the same
//! Stark shift, and the OHMW phase is odd in the arm velocity.
//!
//! The CO₂ beam also traps the slow arms, so straight-line and integrated
//! arms give different residuals once the split is misaligned.
//!
//! `cargo run --example single_beam_lmt`

use ohmw::fields::BeamProfileKind;
use ohmw::interferometer::{run_geometry_b, ArmMotion, GeometryB, Misalignment};
use ohmw::physics::{polarizability_full, AtomSpecies, LaserSpec};

fn main() -> ohmw::Result<()> {
    let atom = AtomSpecies::lithium7();
    let laser = LaserSpec::co2_50w();
    let alpha = polarizability_full(&atom, laser.omega(), laser.peak_amplitude())?;
    let tilt = Misalignment::new(0.02_f64.to_radians(), 0.02);

    for profile in [BeamProfileKind::Gaussian, BeamProfileKind::SuperGaussian { order: 2 }] {
        let g = GeometryB::new(laser.with_profile(profile), &atom, 400)?;
        println!(
            "{profile:?}: arm speed {:.2} m/s, T = {:.3e} s",
            g.arm_speed(),
            g.interaction_time
        );
        for motion in [ArmMotion::Integrated, ArmMotion::Ballistic] {
            let nominal = run_geometry_b(&g.with_motion(motion), &atom, alpha)?;
            let worst = run_geometry_b(&g.with_motion(motion).with_misalignment(tilt), &atom, alpha)?;
            println!(
                "  {motion:?}: ohmw {:+.4e} rad, misaligned stark residual {:+.3e} rad, ohmw change {:.1e}",
                nominal.ohmw_signal_rad,
                worst.stark_residual_rad,
                (worst.ohmw_signal_rad / nominal.ohmw_signal_rad - 1.0).abs()
            );
        }
    }
    Ok(())
}
