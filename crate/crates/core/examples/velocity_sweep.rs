//! Separating the geometric phase from the dynamical one: fit the arm
//! phase to a/v + b over several speeds.
//!
//! `cargo run --example velocity_sweep`

use ohmw::interferometer::GeometryA;
use ohmw::physics::{polarizability_full, AtomSpecies, LaserSpec};
use ohmw::sensitivity::{velocity_sweep, Scheme};

fn main() -> ohmw::Result<()> {
    let atom = AtomSpecies::lithium7();
    let laser = LaserSpec::co2_50w();
    let alpha = polarizability_full(&atom, laser.omega(), laser.peak_amplitude())?;
    let speeds = [250.0, 500.0, 1000.0, 2000.0, 4000.0];

    let fit = velocity_sweep(&Scheme::A(GeometryA::reference()), &atom, alpha, &speeds)?;
    for (v, p) in fit.velocities_m_per_s.iter().zip(&fit.phases_rad) {
        println!("{v:>7.0} m/s  {p:+.6e} rad");
    }
    println!(
        "a = {:.5e} rad m/s, b = {:+.5e} rad, residual {:.1e}",
        fit.fit_a_over_v, fit.fit_const, fit.residual_norm
    );
    Ok(())
}
