//! Two-beam interferometer: each arm runs inside its own beam, the beams
//! point in opposite directions, so the Stark phases cancel and the OHMW
//! phases add.
//!
//! `cargo run --example mach_zehnder`

use ohmw::interferometer::{run_geometry_a, ArmIllumination, GeometryA};
use ohmw::physics::{polarizability_full, AtomSpecies, LaserSpec};

fn main() -> ohmw::Result<()> {
    let atom = AtomSpecies::lithium7();
    let laser = LaserSpec::co2_50w();
    let alpha = polarizability_full(&atom, laser.omega(), laser.peak_amplitude())?;

    let base = GeometryA::reference();
    let cases = [
        ("reference", base.clone()),
        (
            "1% imbalance",
            GeometryA {
                intensity_imbalance: 0.01,
                ..base.clone()
            },
        ),
        (
            "beams reversed",
            GeometryA {
                reverse_beams: true,
                ..base.clone()
            },
        ),
        (
            "standing waves",
            GeometryA {
                illumination: ArmIllumination::StandingWave,
                ..base
            },
        ),
    ];
    println!(
        "{:<16} {:>14} {:>14} {:>14}",
        "case", "stark_res_rad", "ohmw_rad", "loop_rad"
    );
    for (name, g) in cases {
        let r = run_geometry_a(&g, &atom, alpha)?;
        println!(
            "{name:<16} {:>14.4e} {:>14.4e} {:>14.4e}",
            r.stark_residual_rad,
            r.ohmw_signal_rad,
            r.diagnostics.loop_ohmw_rad.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
