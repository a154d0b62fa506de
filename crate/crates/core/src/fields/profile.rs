use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Fraction of the waist over which the flat-top profile rolls off.
pub const FLAT_TOP_ROLLOFF: f64 = 0.1;

/// Transverse amplitude profile of a collimated beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BeamProfileKind {
    /// exp(−r²/w²)
    Gaussian,
    /// exp(−(r²/w²)^order); order 1 is the Gaussian.
    SuperGaussian { order: u32 },
    /// 1 inside the waist, cosine roll-off over `FLAT_TOP_ROLLOFF · w`.
    FlatTop,
}

impl BeamProfileKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            BeamProfileKind::SuperGaussian { order } if *order < 1 => Err(Error::invalid(
                "beam profile",
                "super-Gaussian order must be at least 1",
            )),
            _ => Ok(()),
        }
    }
}

/// Amplitude profile in [0, 1] at distance `r_perp` from the beam axis.
pub fn beam_amplitude_profile(kind: BeamProfileKind, r_perp: f64, waist: f64) -> f64 {
    profile_with_gradient(kind, r_perp, waist).0
}

/// Returns `(f, h)` with `f` the amplitude profile and `h = f'(r)/r`, so
/// that the transverse gradient is `h · r_perp_vector`. `h` stays finite on
/// the axis.
pub(crate) fn profile_with_gradient(kind: BeamProfileKind, r: f64, waist: f64) -> (f64, f64) {
    let w2 = waist * waist;
    match kind {
        BeamProfileKind::Gaussian => {
            let f = (-r * r / w2).exp();
            (f, -2.0 * f / w2)
        }
        BeamProfileKind::SuperGaussian { order } => {
            let q = r * r / w2;
            let p = order as i32;
            let f = (-q.powi(p)).exp();
            (f, -2.0 * order as f64 * f * q.powi(p - 1) / w2)
        }
        BeamProfileKind::FlatTop => {
            let width = FLAT_TOP_ROLLOFF * waist;
            if r <= waist {
                (1.0, 0.0)
            } else if r < waist + width {
                let s = (r - waist) / width;
                let f = 0.5 * (1.0 + (std::f64::consts::PI * s).cos());
                let df = -0.5 * std::f64::consts::PI * (std::f64::consts::PI * s).sin() / width;
                (f, df / r)
            } else {
                (0.0, 0.0)
            }
        }
    }
}

/// ∫|f|² dA over the transverse plane (m²). Converts power to peak
/// intensity.
pub fn profile_area(kind: BeamProfileKind, waist: f64) -> f64 {
    use std::f64::consts::PI;
    let w2 = waist * waist;
    match kind {
        BeamProfileKind::Gaussian | BeamProfileKind::SuperGaussian { order: 1 } => 0.5 * PI * w2,
        BeamProfileKind::SuperGaussian { order } => {
            // πw² ∫₀^∞ exp(−2u^p) du with u = r²/w²
            let p = order as i32;
            let upper = 30f64.powf(1.0 / order as f64);
            PI * w2 * simpson(|u| (-2.0 * u.powi(p)).exp(), 0.0, upper, 20_000)
        }
        BeamProfileKind::FlatTop => {
            let edge = simpson(
                |r| {
                    let f = beam_amplitude_profile(kind, r, waist);
                    f * f * r
                },
                waist,
                waist * (1.0 + FLAT_TOP_ROLLOFF),
                2_000,
            );
            PI * w2 + 2.0 * PI * edge
        }
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + i as f64 * h);
    }
    sum * h / 3.0
}
