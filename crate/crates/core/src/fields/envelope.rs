use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Gaussian envelopes are treated as zero beyond this many sigmas.
pub const GAUSSIAN_CUTOFF_SIGMAS: f64 = 10.0;

/// Slowly varying pulse envelope with values in [0, 1], a function of a
/// local time `u` (retarded time for traveling pulses).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    /// Flat top on [0, duration] with linear ramps of `rise_time`.
    Square { duration: f64, rise_time: f64 },
    /// exp(−u²/2σ²), centred on u = 0.
    Gaussian { sigma: f64 },
    /// Flat top on [0, duration] with cubic smoothstep edges of length `edge`.
    SmoothstepEdges { duration: f64, edge: f64 },
}

impl Envelope {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::invalid("envelope", reason));
        match *self {
            Envelope::Square { duration, rise_time }
            | Envelope::SmoothstepEdges {
                duration,
                edge: rise_time,
            } => {
                if !(duration > 0.0 && duration.is_finite()) {
                    return bad(format!("duration must be positive, got {duration}"));
                }
                if !(rise_time >= 0.0 && 2.0 * rise_time <= duration) {
                    return bad(format!("edge {rise_time} must lie in [0, duration/2]"));
                }
            }
            Envelope::Gaussian { sigma } => {
                if !(sigma > 0.0 && sigma.is_finite()) {
                    return bad(format!("sigma must be positive, got {sigma}"));
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, u: f64) -> f64 {
        self.value_and_derivative(u).0
    }

    pub fn derivative(&self, u: f64) -> f64 {
        self.value_and_derivative(u).1
    }

    pub fn value_and_derivative(&self, u: f64) -> (f64, f64) {
        match *self {
            Envelope::Square { duration, rise_time } => {
                if u < 0.0 || u > duration {
                    (0.0, 0.0)
                } else if rise_time == 0.0 {
                    (1.0, 0.0)
                } else if u < rise_time {
                    (u / rise_time, 1.0 / rise_time)
                } else if u > duration - rise_time {
                    ((duration - u) / rise_time, -1.0 / rise_time)
                } else {
                    (1.0, 0.0)
                }
            }
            Envelope::Gaussian { sigma } => {
                if u.abs() > GAUSSIAN_CUTOFF_SIGMAS * sigma {
                    return (0.0, 0.0);
                }
                let g = (-0.5 * u * u / (sigma * sigma)).exp();
                (g, -u / (sigma * sigma) * g)
            }
            Envelope::SmoothstepEdges { duration, edge } => {
                if u < 0.0 || u > duration {
                    (0.0, 0.0)
                } else if edge == 0.0 {
                    (1.0, 0.0)
                } else if u < edge {
                    smoothstep(u / edge, 1.0 / edge)
                } else if u > duration - edge {
                    let (v, d) = smoothstep((duration - u) / edge, 1.0 / edge);
                    (v, -d)
                } else {
                    (1.0, 0.0)
                }
            }
        }
    }

    /// Interval of `u` outside which the envelope vanishes.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            Envelope::Square { duration, .. } | Envelope::SmoothstepEdges { duration, .. } => (0.0, duration),
            Envelope::Gaussian { sigma } => {
                let half = GAUSSIAN_CUTOFF_SIGMAS * sigma;
                (-half, half)
            }
        }
    }

    /// Shortest timescale on which the envelope changes; `None` when it has
    /// a jump.
    pub fn feature_time(&self) -> Option<f64> {
        match *self {
            Envelope::Square { rise_time: t, .. } | Envelope::SmoothstepEdges { edge: t, .. } => (t > 0.0).then_some(t),
            Envelope::Gaussian { sigma } => Some(sigma),
        }
    }

    pub fn is_discontinuous(&self) -> bool {
        self.feature_time().is_none()
    }

    /// ∫ envelope² du.
    pub fn effective_duration(&self) -> f64 {
        match *self {
            Envelope::Square { duration, rise_time } => duration - 2.0 * rise_time + 2.0 * rise_time / 3.0,
            Envelope::Gaussian { sigma } => sigma * std::f64::consts::PI.sqrt(),
            // ∫₀¹ (3s² − 2s³)² ds = 13/35
            Envelope::SmoothstepEdges { duration, edge } => duration - 2.0 * edge + 26.0 / 35.0 * edge,
        }
    }
}

/// 3s² − 2s³ and its derivative scaled by `ds_du`.
fn smoothstep(s: f64, ds_du: f64) -> (f64, f64) {
    (s * s * (3.0 - 2.0 * s), 6.0 * s * (1.0 - s) * ds_du)
}
