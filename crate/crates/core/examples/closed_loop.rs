//! The OHMW phase as a loop integral, compared with the arm-by-arm result,
//! and the factor of two between the optical and static versions.
//!
//! `cargo run --example closed_loop`

use ohmw::fields::{Beam, FieldModel};
use ohmw::phase::{ohmw_loop, ohmw_loop_fields, static_hmw_phase, ClosedPath};
use ohmw::physics::{polarizability_full, AtomSpecies, LaserSpec};
use ohmw::Vec3;

fn main() -> ohmw::Result<()> {
    let atom = AtomSpecies::lithium7();
    let laser = LaserSpec::co2_50w();
    let alpha = polarizability_full(&atom, laser.omega(), laser.peak_amplitude())?;
    let s = 1e-3;
    let beam = Beam::from_laser(&laser, Vec3::x(), Vec3::zeros())?;
    let r = Beam {
        origin: Vec3::new(0.0, s / 2.0, 0.0),
        ..beam
    };
    let l = Beam {
        origin: Vec3::new(0.0, -s / 2.0, 0.0),
        ..beam
    }
    .reversed();
    let model = FieldModel::Superposition(vec![FieldModel::Beam(r), FieldModel::Beam(l)]);

    let rect = [
        Vec3::new(0.0, s / 2.0, 0.0),
        Vec3::new(0.05, s / 2.0, 0.0),
        Vec3::new(0.05, -s / 2.0, 0.0),
        Vec3::new(0.0, -s / 2.0, 0.0),
    ];
    for n in [10, 50, 200] {
        let path = ClosedPath::polygon(&rect, n)?;
        println!(
            "{n:>4} intervals per edge: loop = {:+.9e} rad",
            ohmw_loop(&path, &model, alpha, 0.0)
        );
    }

    // static HMW with an arbitrary B field and dipole density
    let path = ClosedPath::polygon(&rect, 100)?;
    let b = |x: &Vec3| Vec3::new(0.0, 0.0, 0.1 + 10.0 * x.y);
    let d = |x: &Vec3| Vec3::new(0.0, 1e-30 * (1.0 + x.x), 0.0);
    let full = static_hmw_phase(&path, b, d);
    let optical = ohmw_loop_fields(&path, b, d);
    println!(
        "static {full:+.6e} rad, optical {optical:+.6e} rad, ratio {}",
        optical / full
    );
    Ok(())
}
