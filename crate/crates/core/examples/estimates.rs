//! Order-of-magnitude numbers for ⁷Li in a 50 W CO₂ beam.
//!
//! `cargo run --example estimates`

use ohmw::phase::estimate_phases;
use ohmw::physics::{effective_mass_correction, polarizability_full, saturation_and_emission, AtomSpecies, LaserSpec};

fn main() -> ohmw::Result<()> {
    let atom = AtomSpecies::lithium7();
    let laser = LaserSpec::co2_50w();
    let e0 = laser.peak_amplitude();
    let alpha = polarizability_full(&atom, laser.omega(), e0)?;
    let sat = saturation_and_emission(&atom, laser.omega(), e0)?;

    println!("peak field        {e0:.4e} N/C");
    println!("alpha             {alpha:.4e} C^2 m/N");
    println!(
        "alpha E^2/(m c^2) {:.3e}",
        effective_mass_correction(alpha, e0 * e0, &atom)?
    );
    println!("s = {:.3e}, p2 = {:.3e}, t_decay = {:.2} s", sat.s, sat.p2, sat.t_decay);

    for v in [100.0, 1000.0, 10_000.0] {
        let est = estimate_phases(alpha, e0 * e0, 0.05, v)?;
        println!(
            "v = {v:>7} m/s: phi_ohmw = {:+.2} mrad, phi_s = {:.3e} rad, ratio = {:.3e}",
            est.ohmw * 1e3,
            est.stark,
            est.ratio
        );
    }
    Ok(())
}
