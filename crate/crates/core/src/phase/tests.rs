use proptest::prelude::*;

use super::*;
use crate::dynamics::TrajectoryState;
use crate::fields::{Beam, CounterpropagatingPair, PlaneWave, Traveling};
use crate::physics::LaserSpec;

const ALPHA: f64 = 5e-39;
const L: f64 = 0.05;

fn li() -> AtomSpecies {
    AtomSpecies::lithium7()
}

fn beam() -> Beam {
    Beam::from_laser(&LaserSpec::co2_50w(), Vec3::x(), Vec3::zeros()).unwrap()
}

fn arm(y: f64, v: f64, steps: usize) -> Trajectory {
    Trajectory::straight_line(Vec3::new(0.0, y, 0.0), Vec3::new(v, 0.0, 0.0), L / v, steps, li().mass).unwrap()
}

#[test]
fn weights_integrate_cubics_exactly() {
    let f = |t: f64| 2.0 - t + 3.0 * t * t - 0.5 * t.powi(3);
    let exact = |t: f64| 2.0 * t - 0.5 * t * t + t.powi(3) - 0.125 * t.powi(4);
    for n in [2usize, 3, 4, 5, 7, 10, 11] {
        let h = 1.7 / n as f64;
        let samples: Vec<f64> = (0..=n).map(|i| f(i as f64 * h)).collect();
        let got = integrate_uniform(&samples, h);
        assert!((got - exact(1.7)).abs() < 1e-13, "n = {n}");
    }
    assert_eq!(integrate_uniform(&[1.0, 3.0], 2.0), 4.0);
}

#[test]
fn free_flight_phase() {
    let (v, t) = (12.5, 2e-3);
    let traj = Trajectory::straight_line(Vec3::zeros(), Vec3::new(0.0, v, 0.0), t, 100, li().mass).unwrap();
    let p = phase_along(&traj, &FieldModel::Vacuum, ALPHA, &li()).unwrap();
    let expected = li().mass * v * v * t / (2.0 * HBAR);
    assert!((p.kinetic / expected - 1.0).abs() < 1e-13);
    assert_eq!((p.stark, p.ohmw), (0.0, 0.0));
    assert_eq!(p.total, p.kinetic);
}

#[test]
fn on_axis_arm_matches_hand_integral() {
    let b = beam();
    let model = FieldModel::Beam(b);
    let v = 1000.0;
    let p = phase_along(&arm(0.0, v, 200), &model, ALPHA, &li()).unwrap();
    let e2 = b.peak_amplitude * b.peak_amplitude;
    let ohmw = -ALPHA * e2 * L / (2.0 * HBAR * C);
    let stark = ALPHA * e2 * L / (4.0 * HBAR * v);
    assert!((p.ohmw / ohmw - 1.0).abs() < 1e-12);
    assert!((p.stark / stark - 1.0).abs() < 1e-12);
    assert!((-0.013..-0.007).contains(&p.ohmw), "{}", p.ohmw);
    assert!((p.total - (p.kinetic + p.stark + p.ohmw)).abs() <= 1e-12 * p.largest());
}

#[test]
fn grid_halving_is_converged() {
    let model = FieldModel::Beam(beam());
    let tilted = |steps| {
        let v = Vec3::new(1000.0, 0.9, -0.4);
        Trajectory::straight_line(Vec3::new(0.0, -2e-5, 1e-5), v, L / 1000.0, steps, li().mass).unwrap()
    };
    let a = phase_along(&tilted(400), &model, ALPHA, &li()).unwrap();
    let b = phase_along(&tilted(800), &model, ALPHA, &li()).unwrap();
    for (x, y) in [(a.kinetic, b.kinetic), (a.stark, b.stark), (a.ohmw, b.ohmw)] {
        assert!((x - y).abs() < 1e-8 * y.abs());
    }
}

#[test]
fn ohmw_is_velocity_independent() {
    let model = FieldModel::Beam(beam());
    let slow = phase_along(&arm(3e-5, 500.0, 300), &model, ALPHA, &li()).unwrap();
    let fast = phase_along(&arm(3e-5, 1000.0, 300), &model, ALPHA, &li()).unwrap();
    assert!((fast.ohmw / slow.ohmw - 1.0).abs() < 1e-8);
    assert!((fast.stark / slow.stark - 0.5).abs() < 1e-8);
    assert!((fast.kinetic / slow.kinetic - 2.0).abs() < 1e-8);
}

#[test]
fn beam_reversal_flips_only_ohmw() {
    let model = FieldModel::Beam(beam());
    let traj = arm(2e-5, 1000.0, 100);
    let a = phase_along(&traj, &model, ALPHA, &li()).unwrap();
    let b = phase_along(&traj, &model.reversed(), ALPHA, &li()).unwrap();
    assert_eq!(a.ohmw, -b.ohmw);
    assert_eq!(a.stark, b.stark);
    assert_eq!(a.kinetic, b.kinetic);
}

#[test]
fn standing_wave_has_no_ohmw() {
    let pair =
        FieldModel::CounterpropagatingPair(CounterpropagatingPair::retro_reflected(Traveling::Beam(beam())).unwrap());
    let traj = Trajectory::straight_line(
        Vec3::new(0.0, 1e-5, 0.0),
        Vec3::new(3.0, 0.0, 0.0),
        1e-4,
        200,
        li().mass,
    )
    .unwrap();
    let single = phase_along(&traj, &FieldModel::Beam(beam()), ALPHA, &li()).unwrap();
    let p = phase_along(&traj, &pair, ALPHA, &li()).unwrap();
    assert!(
        p.ohmw.abs() < 1e-12 * single.ohmw.abs(),
        "{} vs {}",
        p.ohmw,
        single.ohmw
    );
}

fn two_beams(s: f64) -> FieldModel {
    let b = beam();
    let r = Beam {
        origin: Vec3::new(0.0, s / 2.0, 0.0),
        ..b
    };
    let l = Beam {
        origin: Vec3::new(0.0, -s / 2.0, 0.0),
        ..b
    }
    .reversed();
    FieldModel::Superposition(vec![FieldModel::Beam(r), FieldModel::Beam(l)])
}

#[test]
fn loop_equals_arm_difference() {
    let s = 1e-3;
    let model = two_beams(s);
    let pr = phase_along(&arm(s / 2.0, 1000.0, 100), &model, ALPHA, &li()).unwrap();
    let pl = phase_along(&arm(-s / 2.0, 1000.0, 100), &model, ALPHA, &li()).unwrap();
    let rect = [
        Vec3::new(0.0, s / 2.0, 0.0),
        Vec3::new(L, s / 2.0, 0.0),
        Vec3::new(L, -s / 2.0, 0.0),
        Vec3::new(0.0, -s / 2.0, 0.0),
    ];
    let path = ClosedPath::polygon(&rect, 200).unwrap();
    let loop_phase = ohmw_loop(&path, &model, ALPHA, 0.0);
    let delta = pr.ohmw - pl.ohmw;
    assert!((loop_phase / delta - 1.0).abs() < 1e-6, "{loop_phase} vs {delta}");
    assert!((-0.026..-0.014).contains(&delta));
    assert_eq!(ohmw_loop(&path.reversed(), &model, ALPHA, 0.0), -loop_phase);
}

#[test]
fn loop_outside_beam_vanishes() {
    let model = FieldModel::Beam(beam());
    let sq = [
        Vec3::new(0.0, 0.01, 0.0),
        Vec3::new(0.01, 0.01, 0.0),
        Vec3::new(0.01, 0.02, 0.0),
        Vec3::new(0.0, 0.02, 0.0),
    ];
    assert_eq!(
        ohmw_loop(&ClosedPath::polygon(&sq, 10).unwrap(), &model, ALPHA, 0.0),
        0.0
    );
}

#[test]
fn open_path_is_rejected() {
    let e = vec![PathElement {
        x: Vec3::zeros(),
        dr: Vec3::new(1e-6, 0.0, 0.0),
    }];
    assert!(matches!(ClosedPath::new(e), Err(Error::OpenPath { .. })));
}

#[test]
fn duality_and_uniform_fields() {
    let pts = [
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(0.02, 1e-4, 0.0),
        Vec3::new(0.015, 9e-4, 2e-4),
        Vec3::new(-0.001, 8e-4, 0.0),
    ];
    let path = ClosedPath::polygon(&pts, 50).unwrap();
    let b = |x: &Vec3| Vec3::new(0.3 * x.y, -1e-3 * x.z.sin(), 0.01 + x.x * x.y);
    let d = |x: &Vec3| Vec3::new(1e-30 * (1.0 + x.y * 1e3), 2e-31, -3e-30 * x.x);
    let full = static_hmw_phase(&path, b, d);
    let half = ohmw_loop_fields(&path, b, d);
    assert!(full != 0.0);
    assert_eq!(half * 2.0, full);

    let bu = Vec3::new(0.1, 0.2, -0.3);
    let du = Vec3::new(1e-29, -2e-29, 5e-30);
    let scale = bu.cross(&du).norm() * 0.05 / HBAR;
    assert!(static_hmw_phase(&path, |_| bu, |_| du).abs() < 1e-12 * scale);
}

#[test]
fn closed_form_estimates() {
    let b = beam();
    let e2 = b.peak_amplitude.powi(2);
    let est = estimate_phases(ALPHA, e2, L, 1000.0).unwrap();
    assert!((-0.026..-0.014).contains(&est.ohmw), "{}", est.ohmw);
    assert!((est.ratio - 2000.0 / C).abs() < 1e-15);
    assert!(((est.ohmw / est.stark).abs() - est.ratio).abs() < 1e-15);
    assert!((2.0e3..3.8e3).contains(&est.stark));
    assert!(estimate_phases(ALPHA, e2, 0.0, 1.0).is_err());
    assert!(estimate_phases(ALPHA, e2, 1.0, -1.0).is_err());
}

#[test]
fn exact_lagrangian_at_rest_is_stark() {
    let model = FieldModel::Beam(beam());
    let states = (0..=50)
        .map(|i| TrajectoryState::new(i as f64 * 1e-6, Vec3::new(0.0, 3e-5, 0.0), Vec3::zeros()))
        .collect();
    let traj = Trajectory::from_states(states, li().mass).unwrap();
    let exact = exact_lagrangian_phase(&traj, &model, ALPHA, &li()).unwrap();
    let lead = phase_along(&traj, &model, ALPHA, &li()).unwrap();
    assert_eq!(exact.interaction, lead.stark);
    assert_eq!(exact.free, 0.0);
}

#[test]
fn exact_lagrangian_agrees_to_beta_squared() {
    let model = FieldModel::Beam(beam());
    let v = 1000.0;
    let beta2 = (v / C).powi(2);
    let traj = arm(1e-5, v, 200);
    let exact = exact_lagrangian_phase(&traj, &model, ALPHA, &li()).unwrap();
    let lead = phase_along(&traj, &model, ALPHA, &li()).unwrap();
    assert!(((exact.interaction - lead.interaction()) / lead.interaction()).abs() < 1e-10);
    assert!(((exact.total - lead.total) / lead.total).abs() < 10.0 * beta2);
    assert!(((exact.free - lead.kinetic) / lead.kinetic).abs() < beta2);
}

/// Boost the instantaneous lab fields into the atom frame, sample them along
/// the worldline over one Doppler-shifted period, and return 2⟨E'²⟩.
fn boosted_e_sq(w: &PlaneWave, v: &Vec3) -> f64 {
    let model = FieldModel::PlaneWave(*w);
    let beta = v / C;
    let gamma = 1.0 / (1.0 - beta.norm_squared()).sqrt();
    let n_hat = beta.normalize();
    let period = 2.0 * std::f64::consts::PI / (w.omega * (1.0 - beta.dot(&w.direction)));
    let n = 256;
    let mut acc = 0.0;
    for i in 0..n {
        let t = period * i as f64 / n as f64;
        let f = model.instantaneous_fields(&(v * t), t);
        let par = n_hat * n_hat.dot(&f.e);
        let perp = f.e + v.cross(&f.b) - par;
        let e_rest = par + perp * gamma;
        acc += e_rest.norm_squared();
    }
    2.0 * acc / n as f64
}

#[test]
fn rest_frame_amplitude_is_doppler_shifted() {
    let w = PlaneWave::new(1.3e6, Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.6, 0.8), 1.8e14).unwrap();
    let model = FieldModel::PlaneWave(w);
    for v in [
        Vec3::new(0.3 * C, 0.0, 0.0),
        Vec3::new(-0.2 * C, 0.1 * C, 0.05 * C),
        Vec3::new(1000.0, 0.0, 0.0),
    ] {
        let beta = v / C;
        let gamma_sq = 1.0 / (1.0 - beta.norm_squared());
        let doppler = w.amplitude.powi(2) * gamma_sq * (1.0 - beta.dot(&w.direction)).powi(2);
        let got = model.moving_frame_e_sq_bar(&Vec3::zeros(), 0.0, &v);
        assert!((got / doppler - 1.0).abs() < 1e-12);
        assert!((boosted_e_sq(&w, &v) / doppler - 1.0).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn breakdown_total_is_sum(k in -1e6f64..1e6, s in -1e4f64..1e4, o in -1.0f64..1.0) {
        let p = PhaseBreakdown::new(k, s, o);
        prop_assert!((p.total - (p.kinetic + p.stark + p.ohmw)).abs() <= 1e-12 * p.largest());
        let d = p - PhaseBreakdown::new(o, k, s);
        prop_assert_eq!(d.stark, s - k);
    }

    #[test]
    fn reversing_any_polygon_negates(ys in proptest::collection::vec(-2e-4f64..2e-4, 3..6)) {
        let pts: Vec<Vec3> = ys.iter().enumerate().map(|(i, y)| Vec3::new(i as f64 * 0.01, *y, 0.0)).collect();
        let path = ClosedPath::polygon(&pts, 8).unwrap();
        let model = FieldModel::Beam(beam());
        prop_assert_eq!(ohmw_loop(&path, &model, ALPHA, 0.0), -ohmw_loop(&path.reversed(), &model, ALPHA, 0.0));
    }
}
