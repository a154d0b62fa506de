//! Seeded Monte Carlo over misalignment of the single-beam scheme.
//!
//! `cargo run --release --example tolerance_monte_carlo -- [n_samples] [seed]`

use ohmw::fields::BeamProfileKind;
use ohmw::interferometer::GeometryB;
use ohmw::physics::{polarizability_full, AtomSpecies, LaserSpec};
use ohmw::sensitivity::{monte_carlo, PerturbationSpec, Scheme};

fn main() -> ohmw::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1);

    let atom = AtomSpecies::lithium7();
    let laser = LaserSpec::co2_50w().with_profile(BeamProfileKind::SuperGaussian { order: 2 });
    let alpha = polarizability_full(&atom, laser.omega(), laser.peak_amplitude())?;
    let scheme = Scheme::B(GeometryB::new(laser, &atom, 400)?);
    let spec = PerturbationSpec::new(0.02_f64.to_radians(), 0.02, n, seed);

    let r = monte_carlo(&scheme, &spec, &atom, alpha)?;
    println!("nominal ohmw {:+.5e} rad", r.nominal.ohmw_signal_rad);
    if let Some(w) = &r.worst_case {
        println!("worst case: stark residual {:+.3e} rad", w.stark_residual_rad);
    }
    let s = &r.summary;
    println!("{} ok, {} failed", s.n_ok, s.n_failed);
    if let (Some(res), Some(dev)) = (s.abs_stark_residual_rad, s.ohmw_relative_deviation) {
        println!(
            "|stark residual|: mean {:.3} rad, std {:.3}, p95 {:.3}",
            res.mean, res.std, res.p95
        );
        println!("ohmw deviation:   mean {:.2e}, p95 {:.2e}", dev.mean, dev.p95);
    }
    Ok(())
}
