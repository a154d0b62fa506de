//! Classical field configurations with analytic cycle averages.
//!
//! Every traveling component is stored as a complex phasor Ẽ(x, t) with the
//! optical carrier e^{−iωt} factored out, so that
//! `E = Re(Ẽ e^{−iωt})` and `B = Re(B̃ e^{−iωt})` with `B̃ = k̂×Ẽ/c`.
//! Quadratic quantities averaged over one optical cycle then follow from
//! the phasors directly: ⟨E·E⟩ = ½|Ẽ|² and ⟨E×B⟩ = ½Re(Ẽ×B̃*).
//! Components sharing a frequency add coherently; components at different
//! frequencies are treated as mutually incoherent.

mod envelope;
mod profile;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use envelope::{Envelope, GAUSSIAN_CUTOFF_SIGMAS};
pub use profile::{beam_amplitude_profile, profile_area, BeamProfileKind, FLAT_TOP_ROLLOFF};

use crate::physics::constants::{C, MU0};
use crate::physics::LaserSpec;
use crate::{Error, Result, Vec3};

type CVec3 = Vector3<Complex64>;

const UNIT_TOL: f64 = 1e-12;

/// Envelopes varying faster than this many optical periods (in units of
/// 1/ω) make the cycle average meaningless.
pub const MIN_ENVELOPE_CYCLES: f64 = 100.0;

fn unit(v: Vec3, what: &'static str) -> Result<Vec3> {
    let n = v.norm();
    if !(n.is_finite() && n > 0.0) {
        return Err(Error::invalid(what, "direction vector must be nonzero"));
    }
    Ok(v / n)
}

/// Some unit vector perpendicular to `k`.
pub fn perpendicular_to(k: &Vec3) -> Vec3 {
    let trial = if k.z.abs() < 0.9 { Vec3::z() } else { Vec3::x() };
    let p = trial - k * k.dot(&trial);
    p / p.norm()
}

fn check_transverse(direction: &Vec3, polarization: &Vec3) -> Result<()> {
    if (direction.norm() - 1.0).abs() > UNIT_TOL || (polarization.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::invalid(
            "field",
            "direction and polarization must be unit vectors",
        ));
    }
    if direction.dot(polarization).abs() > UNIT_TOL {
        return Err(Error::invalid(
            "field",
            "polarization is not transverse to the wavevector",
        ));
    }
    Ok(())
}

fn real(v: &Vec3) -> CVec3 {
    v.map(|a| Complex64::new(a, 0.0))
}

/// A monochromatic plane wave `E = amplitude · polarization · cos(k·x − ωt + phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    /// N/C
    pub amplitude: f64,
    pub direction: Vec3,
    pub polarization: Vec3,
    /// rad/s
    pub omega: f64,
    /// rad
    pub phase: f64,
}

impl PlaneWave {
    pub fn new(amplitude: f64, direction: Vec3, polarization: Vec3, omega: f64) -> Result<Self> {
        let direction = unit(direction, "plane wave")?;
        let polarization = unit(polarization, "plane wave")?;
        let wave = PlaneWave {
            amplitude,
            direction,
            polarization,
            omega,
            phase: 0.0,
        };
        wave.validate()?;
        Ok(wave)
    }

    /// Plane wave along `direction` with an arbitrary transverse polarization.
    pub fn along(direction: Vec3, amplitude: f64, omega: f64) -> Result<Self> {
        let k = unit(direction, "plane wave")?;
        Self::new(amplitude, k, perpendicular_to(&k), omega)
    }

    pub fn with_phase(self, phase: f64) -> Self {
        PlaneWave { phase, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.amplitude.is_finite() && self.amplitude >= 0.0) {
            return Err(Error::invalid("plane wave", "amplitude must be non-negative"));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::invalid("plane wave", "omega must be positive"));
        }
        check_transverse(&self.direction, &self.polarization)
    }

    pub fn reversed(&self) -> Self {
        PlaneWave {
            direction: -self.direction,
            ..*self
        }
    }

    fn carrier(&self, x: &Vec3) -> CVec3 {
        let k = self.omega / C;
        let arg = k * self.direction.dot(x) + self.phase;
        real(&self.polarization) * Complex64::from_polar(self.amplitude, arg)
    }

    fn component(&self, x: &Vec3) -> Component {
        let e = self.carrier(x);
        let k = self.omega / C;
        let i = Complex64::i();
        Component {
            omega: self.omega,
            k_hat: self.direction,
            e,
            de_dt: CVec3::zeros(),
            grad: std::array::from_fn(|j| e * (i * k * self.direction[j])),
        }
    }
}

/// A collimated beam: the transverse profile does not change along the axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Beam {
    pub axis: Vec3,
    /// A point on the axis (m); also the phase reference.
    pub origin: Vec3,
    /// m
    pub waist: f64,
    /// N/C
    pub peak_amplitude: f64,
    pub profile: BeamProfileKind,
    /// rad/s
    pub omega: f64,
    pub polarization: Vec3,
    pub phase: f64,
}

impl Beam {
    pub fn new(
        axis: Vec3,
        origin: Vec3,
        waist: f64,
        peak_amplitude: f64,
        profile: BeamProfileKind,
        omega: f64,
    ) -> Result<Self> {
        let axis = unit(axis, "beam")?;
        let beam = Beam {
            axis,
            origin,
            waist,
            peak_amplitude,
            profile,
            omega,
            polarization: perpendicular_to(&axis),
            phase: 0.0,
        };
        beam.validate()?;
        Ok(beam)
    }

    pub fn from_laser(laser: &LaserSpec, axis: Vec3, origin: Vec3) -> Result<Self> {
        laser.validate()?;
        Self::new(
            axis,
            origin,
            laser.waist,
            laser.peak_amplitude(),
            laser.profile,
            laser.omega(),
        )
    }

    pub fn with_polarization(self, polarization: Vec3) -> Result<Self> {
        let beam = Beam {
            polarization: unit(polarization, "beam")?,
            ..self
        };
        beam.validate()?;
        Ok(beam)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.waist.is_finite() && self.waist > 0.0) {
            return Err(Error::invalid("beam", "waist must be positive"));
        }
        if !(self.peak_amplitude.is_finite() && self.peak_amplitude >= 0.0) {
            return Err(Error::invalid("beam", "amplitude must be non-negative"));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::invalid("beam", "omega must be positive"));
        }
        self.profile.validate()?;
        check_transverse(&self.axis, &self.polarization)
    }

    pub fn reversed(&self) -> Self {
        Beam {
            axis: -self.axis,
            ..*self
        }
    }

    /// Vector from the axis to `x`, perpendicular to the axis.
    pub fn radial_offset(&self, x: &Vec3) -> Vec3 {
        let r = x - self.origin;
        r - self.axis * self.axis.dot(&r)
    }

    pub fn radial_distance(&self, x: &Vec3) -> f64 {
        self.radial_offset(x).norm()
    }

    fn component(&self, x: &Vec3) -> Component {
        let r = x - self.origin;
        let z = self.axis.dot(&r);
        let r_perp = r - self.axis * z;
        let (f, h) = profile::profile_with_gradient(self.profile, r_perp.norm(), self.waist);
        let k = self.omega / C;
        let carrier = real(&self.polarization) * Complex64::from_polar(self.peak_amplitude, k * z + self.phase);
        let e = carrier * Complex64::new(f, 0.0);
        let i = Complex64::i();
        Component {
            omega: self.omega,
            k_hat: self.axis,
            e,
            de_dt: CVec3::zeros(),
            grad: std::array::from_fn(|j| e * (i * k * self.axis[j]) + carrier * Complex64::new(h * r_perp[j], 0.0)),
        }
    }
}

/// A single traveling component: plane wave or beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Traveling {
    PlaneWave(PlaneWave),
    Beam(Beam),
}

impl Traveling {
    pub fn direction(&self) -> Vec3 {
        match self {
            Traveling::PlaneWave(w) => w.direction,
            Traveling::Beam(b) => b.axis,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Traveling::PlaneWave(w) => w.validate(),
            Traveling::Beam(b) => b.validate(),
        }
    }

    fn reversed(&self) -> Self {
        match self {
            Traveling::PlaneWave(w) => Traveling::PlaneWave(w.reversed()),
            Traveling::Beam(b) => Traveling::Beam(b.reversed()),
        }
    }

    fn component(&self, x: &Vec3) -> Component {
        match self {
            Traveling::PlaneWave(w) => w.component(x),
            Traveling::Beam(b) => b.component(x),
        }
    }
}

/// A plane-wave carrier modulated by an envelope of retarded time
/// `u = t − t_arrival − k̂·x/c`; the pulse translates rigidly at c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TravelingPulse {
    pub carrier: PlaneWave,
    pub envelope: Envelope,
    /// Time at which envelope time u = 0 crosses the origin (s).
    pub t_arrival: f64,
}

impl TravelingPulse {
    pub fn new(carrier: PlaneWave, envelope: Envelope, t_arrival: f64) -> Result<Self> {
        carrier.validate()?;
        envelope.validate()?;
        Ok(TravelingPulse {
            carrier,
            envelope,
            t_arrival,
        })
    }

    pub fn retarded_time(&self, x: &Vec3, t: f64) -> f64 {
        t - self.t_arrival - self.carrier.direction.dot(x) / C
    }

    /// Lab-time interval during which the envelope overlaps point `x`.
    pub fn passage_interval(&self, x: &Vec3) -> (f64, f64) {
        let (a, b) = self.envelope.support();
        let delay = self.t_arrival + self.carrier.direction.dot(x) / C;
        (a + delay, b + delay)
    }

    fn component(&self, x: &Vec3, t: f64) -> Component {
        let c0 = self.carrier.carrier(x);
        let (g, dg) = self.envelope.value_and_derivative(self.retarded_time(x, t));
        let k = self.carrier.omega / C;
        let i = Complex64::i();
        let e = c0 * Complex64::new(g, 0.0);
        let de_dt = c0 * Complex64::new(dg, 0.0);
        let dir = self.carrier.direction;
        Component {
            omega: self.carrier.omega,
            k_hat: dir,
            e,
            de_dt,
            grad: std::array::from_fn(|j| e * (i * k * dir[j]) + de_dt * Complex64::new(-dir[j] / C, 0.0)),
        }
    }
}

/// Two traveling components propagating in opposite directions, optionally
/// switched on and off together by a common envelope of lab time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterpropagatingPair {
    pub forward: Traveling,
    pub backward: Traveling,
    pub envelope: Option<Envelope>,
}

impl CounterpropagatingPair {
    pub fn new(forward: Traveling, backward: Traveling, envelope: Option<Envelope>) -> Result<Self> {
        let pair = CounterpropagatingPair {
            forward,
            backward,
            envelope,
        };
        pair.validate()?;
        Ok(pair)
    }

    /// `component` together with its mirror image propagating the other way.
    pub fn retro_reflected(component: Traveling) -> Result<Self> {
        Self::new(component, component.reversed(), None)
    }

    pub fn with_envelope(self, envelope: Envelope) -> Result<Self> {
        Self::new(self.forward, self.backward, Some(envelope))
    }

    pub fn validate(&self) -> Result<()> {
        self.forward.validate()?;
        self.backward.validate()?;
        if (self.forward.direction() + self.backward.direction()).norm() > UNIT_TOL {
            return Err(Error::invalid(
                "counterpropagating pair",
                "directions must be antiparallel",
            ));
        }
        if let Some(env) = &self.envelope {
            env.validate()?;
        }
        Ok(())
    }
}

/// A classical field configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldModel {
    Vacuum,
    PlaneWave(PlaneWave),
    TravelingPulse(TravelingPulse),
    Beam(Beam),
    CounterpropagatingPair(CounterpropagatingPair),
    Superposition(Vec<FieldModel>),
}

/// Instantaneous lab-frame fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantFields {
    /// N/C
    pub e: Vec3,
    /// T
    pub b: Vec3,
}

/// Quadratic field quantities averaged over one optical cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleAveraged {
    /// 𝓔̄² = 2⟨E·E⟩ ((N/C)²).
    pub e_sq_bar: f64,
    /// ⟨E×H⟩ (W/m²).
    pub poynting_bar: Vec3,
    /// 𝓑̄×𝓔̄ = −2⟨E×B⟩ (T·N/C).
    pub b_bar_cross_e_bar: Vec3,
    /// ∇𝓔̄² ((N/C)²/m).
    pub grad_e_sq_bar: Vec3,
    /// ∂ₜ⟨E×H⟩ at fixed position (W/(m²·s)).
    pub poynting_bar_rate: Vec3,
}

impl CycleAveraged {
    pub fn zero() -> Self {
        CycleAveraged {
            e_sq_bar: 0.0,
            poynting_bar: Vec3::zeros(),
            b_bar_cross_e_bar: Vec3::zeros(),
            grad_e_sq_bar: Vec3::zeros(),
            poynting_bar_rate: Vec3::zeros(),
        }
    }

    /// 𝓔̄×𝓑̄ = 2⟨E×B⟩.
    pub fn e_bar_cross_b_bar(&self) -> Vec3 {
        -self.b_bar_cross_e_bar
    }
}

/// Phasor of one traveling component and its derivatives at a point.
struct Component {
    omega: f64,
    k_hat: Vec3,
    e: CVec3,
    de_dt: CVec3,
    /// grad[j] = ∂Ẽ/∂x_j
    grad: [CVec3; 3],
}

impl Component {
    fn b(&self) -> CVec3 {
        real(&self.k_hat).cross(&self.e) / Complex64::new(C, 0.0)
    }

    fn db_dt(&self) -> CVec3 {
        real(&self.k_hat).cross(&self.de_dt) / Complex64::new(C, 0.0)
    }

    fn scale(&mut self, g: f64, dg: f64) {
        let g = Complex64::new(g, 0.0);
        self.de_dt = self.de_dt * g + self.e * Complex64::new(dg, 0.0);
        self.e *= g;
        for d in &mut self.grad {
            *d *= g;
        }
    }
}

/// Coherent sum of all components at one frequency.
struct Group {
    omega: f64,
    e: CVec3,
    b: CVec3,
    de_dt: CVec3,
    db_dt: CVec3,
    grad: [CVec3; 3],
}

fn same_frequency(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

fn group(components: Vec<Component>) -> Vec<Group> {
    let mut groups: Vec<Group> = Vec::new();
    for c in components {
        let (b, db_dt) = (c.b(), c.db_dt());
        match groups.iter_mut().find(|g| same_frequency(g.omega, c.omega)) {
            Some(g) => {
                g.e += c.e;
                g.b += b;
                g.de_dt += c.de_dt;
                g.db_dt += db_dt;
                for j in 0..3 {
                    g.grad[j] += c.grad[j];
                }
            }
            None => groups.push(Group {
                omega: c.omega,
                e: c.e,
                b,
                de_dt: c.de_dt,
                db_dt,
                grad: c.grad,
            }),
        }
    }
    groups
}

/// Re(a × conj(b)).
fn re_cross_conj(a: &CVec3, b: &CVec3) -> Vec3 {
    a.cross(&b.map(|z| z.conj())).map(|z| z.re)
}

/// Re(conj(a) · b).
fn re_dotc(a: &CVec3, b: &CVec3) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

impl FieldModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldModel::Vacuum => Ok(()),
            FieldModel::PlaneWave(w) => w.validate(),
            FieldModel::TravelingPulse(p) => {
                p.carrier.validate()?;
                p.envelope.validate()
            }
            FieldModel::Beam(b) => b.validate(),
            FieldModel::CounterpropagatingPair(p) => p.validate(),
            FieldModel::Superposition(parts) => parts.iter().try_for_each(|p| p.validate()),
        }
    }

    fn envelopes(&self) -> Vec<(Envelope, f64)> {
        match self {
            FieldModel::TravelingPulse(p) => vec![(p.envelope, p.carrier.omega)],
            FieldModel::CounterpropagatingPair(CounterpropagatingPair {
                envelope: Some(env),
                forward,
                ..
            }) => {
                let omega = match forward {
                    Traveling::PlaneWave(w) => w.omega,
                    Traveling::Beam(b) => b.omega,
                };
                vec![(*env, omega)]
            }
            FieldModel::Superposition(parts) => parts.iter().flat_map(|p| p.envelopes()).collect(),
            _ => Vec::new(),
        }
    }

    /// Shortest envelope timescale, `None` for static fields or when an
    /// envelope has a jump (see [`FieldModel::has_discontinuity`]).
    pub fn feature_time(&self) -> Option<f64> {
        self.envelopes()
            .iter()
            .filter_map(|(e, _)| e.feature_time())
            .min_by(f64::total_cmp)
    }

    pub fn has_discontinuity(&self) -> bool {
        self.envelopes().iter().any(|(e, _)| e.is_discontinuous())
    }

    pub fn is_static(&self) -> bool {
        self.envelopes().is_empty()
    }

    /// Conditions under which the model is admissible but the cycle-averaged
    /// description is questionable.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (env, omega) in self.envelopes() {
            match env.feature_time() {
                None => out.push(format!("envelope {env:?} is discontinuous; forces are impulsive")),
                Some(t) if t * omega < MIN_ENVELOPE_CYCLES => out.push(format!(
                    "envelope timescale {t:e} s is shorter than {MIN_ENVELOPE_CYCLES}/omega; cycle averaging is inaccurate"
                )),
                _ => {}
            }
        }
        out
    }

    /// The same configuration with every propagation direction reversed.
    pub fn reversed(&self) -> FieldModel {
        match self {
            FieldModel::Vacuum => FieldModel::Vacuum,
            FieldModel::PlaneWave(w) => FieldModel::PlaneWave(w.reversed()),
            FieldModel::TravelingPulse(p) => FieldModel::TravelingPulse(TravelingPulse {
                carrier: p.carrier.reversed(),
                ..*p
            }),
            FieldModel::Beam(b) => FieldModel::Beam(b.reversed()),
            FieldModel::CounterpropagatingPair(p) => FieldModel::CounterpropagatingPair(CounterpropagatingPair {
                forward: p.forward.reversed(),
                backward: p.backward.reversed(),
                envelope: p.envelope,
            }),
            FieldModel::Superposition(parts) => FieldModel::Superposition(parts.iter().map(|p| p.reversed()).collect()),
        }
    }

    fn collect_components(&self, x: &Vec3, t: f64, out: &mut Vec<Component>) {
        match self {
            FieldModel::Vacuum => {}
            FieldModel::PlaneWave(w) => out.push(w.component(x)),
            FieldModel::TravelingPulse(p) => out.push(p.component(x, t)),
            FieldModel::Beam(b) => out.push(b.component(x)),
            FieldModel::CounterpropagatingPair(p) => {
                let (g, dg) = p.envelope.map_or((1.0, 0.0), |env| env.value_and_derivative(t));
                for part in [&p.forward, &p.backward] {
                    let mut c = part.component(x);
                    c.scale(g, dg);
                    out.push(c);
                }
            }
            FieldModel::Superposition(parts) => {
                for p in parts {
                    p.collect_components(x, t, out);
                }
            }
        }
    }

    fn groups(&self, x: &Vec3, t: f64) -> Vec<Group> {
        let mut components = Vec::with_capacity(2);
        self.collect_components(x, t, &mut components);
        group(components)
    }

    pub fn instantaneous_fields(&self, x: &Vec3, t: f64) -> InstantFields {
        let mut e = Vec3::zeros();
        let mut b = Vec3::zeros();
        for g in self.groups(x, t) {
            let phase = Complex64::from_polar(1.0, -g.omega * t);
            e += (g.e * phase).map(|z| z.re);
            b += (g.b * phase).map(|z| z.re);
        }
        InstantFields { e, b }
    }

    /// Analytic cycle averages at `x`, with the envelopes frozen at time `t`.
    pub fn cycle_averaged(&self, x: &Vec3, t: f64) -> CycleAveraged {
        let mut out = CycleAveraged::zero();
        for g in self.groups(x, t) {
            out.e_sq_bar += g.e.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let exb = re_cross_conj(&g.e, &g.b);
            out.b_bar_cross_e_bar -= exb;
            out.poynting_bar += exb / (2.0 * MU0);
            out.poynting_bar_rate += (re_cross_conj(&g.de_dt, &g.b) + re_cross_conj(&g.e, &g.db_dt)) / (2.0 * MU0);
            for j in 0..3 {
                out.grad_e_sq_bar[j] += 2.0 * re_dotc(&g.e, &g.grad[j]);
            }
        }
        out
    }

    /// Cycle-averaged γ²[(E + v×B)² − (E·β)²] · 2 at `x` for an observer
    /// moving with velocity `v`; equals the rest-frame 𝓔̄² of the atom.
    pub fn moving_frame_e_sq_bar(&self, x: &Vec3, t: f64, v: &Vec3) -> f64 {
        let beta = v / C;
        let gamma_sq = 1.0 / (1.0 - beta.norm_squared());
        let v = real(v);
        let beta = real(&beta);
        self.groups(x, t)
            .iter()
            .map(|g| {
                let motional = g.e + v.cross(&g.b);
                let along = g.e.dot(&beta);
                motional.iter().map(|z| z.norm_sqr()).sum::<f64>() - along.norm_sqr()
            })
            .sum::<f64>()
            * gamma_sq
    }

    /// Real amplitude vectors (𝓔̄, 𝓑̄) of a model made of one traveling
    /// component, so that E = 𝓔̄ cos(·) and B = 𝓑̄ cos(·). `None` for models
    /// with several components.
    pub fn amplitude_vectors(&self, x: &Vec3, t: f64) -> Option<(Vec3, Vec3)> {
        let (k_hat, pol, amplitude) = match self {
            FieldModel::PlaneWave(w) => (w.direction, w.polarization, w.amplitude),
            FieldModel::Beam(b) => {
                let f = beam_amplitude_profile(b.profile, b.radial_distance(x), b.waist);
                (b.axis, b.polarization, b.peak_amplitude * f)
            }
            FieldModel::TravelingPulse(p) => {
                let g = p.envelope.value(p.retarded_time(x, t));
                (p.carrier.direction, p.carrier.polarization, p.carrier.amplitude * g)
            }
            _ => return None,
        };
        let e_bar = pol * amplitude;
        Some((e_bar, k_hat.cross(&e_bar) / C))
    }
}

/// Cycle averages by direct Simpson quadrature of the instantaneous fields
/// over one period of `omega` centred on `t`. Cross-check for the analytic
/// path; `samples` is rounded up to an even number, minimum 64.
pub fn cycle_averaged_numeric(model: &FieldModel, x: &Vec3, t: f64, omega: f64, samples: usize) -> (f64, Vec3) {
    let n = samples.max(64) + samples % 2;
    let period = 2.0 * std::f64::consts::PI / omega;
    let h = period / n as f64;
    let t0 = t - 0.5 * period;
    let mut e_sq = 0.0;
    let mut exb = Vec3::zeros();
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let f = model.instantaneous_fields(x, t0 + i as f64 * h);
        e_sq += w * f.e.dot(&f.e);
        exb += f.e.cross(&f.b) * w;
    }
    let norm = h / 3.0 / period;
    // 𝓔̄² = 2⟨E·E⟩, ⟨S⟩ = ⟨E×B⟩/μ₀
    (2.0 * e_sq * norm, exb * (norm / MU0))
}

/// Central finite-difference gradient of 𝓔̄².
pub fn grad_e_sq_bar_fd(model: &FieldModel, x: &Vec3, t: f64, step: f64) -> Vec3 {
    Vec3::from_fn(|j, _| {
        let mut dx = Vec3::zeros();
        dx[j] = step;
        (model.cycle_averaged(&(x + dx), t).e_sq_bar - model.cycle_averaged(&(x - dx), t).e_sq_bar) / (2.0 * step)
    })
}

/// Central finite-difference time derivative of ⟨S⟩.
pub fn poynting_bar_rate_fd(model: &FieldModel, x: &Vec3, t: f64, step: f64) -> Vec3 {
    (model.cycle_averaged(x, t + step).poynting_bar - model.cycle_averaged(x, t - step).poynting_bar) / (2.0 * step)
}

#[cfg(test)]
mod tests;
