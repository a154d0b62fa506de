use super::*;
use crate::physics::constants::EPS0;

const OMEGA: f64 = 1.777e14;

fn beam(profile: BeamProfileKind) -> Beam {
    let laser = LaserSpec::co2_50w().with_profile(profile);
    Beam::from_laser(&laser, Vec3::x(), Vec3::zeros()).unwrap()
}

#[test]
fn plane_wave_at_origin() {
    let w = PlaneWave::new(3.0, Vec3::z(), Vec3::x(), OMEGA).unwrap();
    let f = FieldModel::PlaneWave(w).instantaneous_fields(&Vec3::zeros(), 0.0);
    assert!((f.e - Vec3::new(3.0, 0.0, 0.0)).norm() < 1e-15);
    assert!((f.b.norm() - 3.0 / C).abs() < 1e-22);
    // E×B along k
    assert!(f.e.cross(&f.b).z > 0.0);
}

#[test]
fn standing_wave_node() {
    let w = PlaneWave::new(2.0, Vec3::x(), Vec3::y(), OMEGA).unwrap();
    let pair =
        FieldModel::CounterpropagatingPair(CounterpropagatingPair::retro_reflected(Traveling::PlaneWave(w)).unwrap());
    let lambda = 2.0 * std::f64::consts::PI * C / OMEGA;
    let node = Vec3::new(lambda / 4.0, 0.3, -0.2);
    for t in [0.0, 1.3e-15, 7.7e-14] {
        let f = pair.instantaneous_fields(&node, t);
        assert!(f.e.norm() < 1e-12 * 4.0, "{t}: {}", f.e.norm());
    }
    // antinode has twice the single amplitude at t = 0
    let f = pair.instantaneous_fields(&Vec3::zeros(), 0.0);
    assert!((f.e.norm() - 4.0).abs() < 1e-12);
}

#[test]
fn superposition_is_linear() {
    let w = PlaneWave::new(2.0, Vec3::new(1.0, 1.0, 0.0), Vec3::z(), OMEGA)
        .unwrap()
        .with_phase(0.4);
    let single = FieldModel::PlaneWave(w);
    let double = FieldModel::Superposition(vec![single.clone(), single.clone()]);
    for (x, t) in [(Vec3::new(1e-6, 2e-6, 0.0), 3e-15), (Vec3::new(-4e-5, 0.0, 1.0), 0.0)] {
        let a = single.instantaneous_fields(&x, t);
        let b = double.instantaneous_fields(&x, t);
        assert_eq!(b.e, a.e * 2.0);
        assert_eq!(b.b, a.b * 2.0);
    }
}

#[test]
fn plane_wave_cycle_averages() {
    let e0 = 1.2e6;
    let w = PlaneWave::new(e0, Vec3::y(), Vec3::z(), OMEGA).unwrap();
    let ca = FieldModel::PlaneWave(w).cycle_averaged(&Vec3::new(0.1, 0.2, 0.3), 0.0);
    assert!((ca.e_sq_bar / (e0 * e0) - 1.0).abs() < 1e-14);
    let s = EPS0 * C * e0 * e0 / 2.0;
    assert!((ca.poynting_bar.norm() / s - 1.0).abs() < 1e-10);
    // direction of ⟨S⟩ is the wavevector
    assert!((ca.poynting_bar.normalize() - Vec3::y()).norm() < 1e-14);
    assert!(ca.grad_e_sq_bar.norm() < 1e-12 * e0 * e0 * OMEGA / C);
    assert_eq!(ca.poynting_bar_rate, Vec3::zeros());
    // 𝓔̄×𝓑̄ = 𝓔̄²/c k̂
    assert!((ca.e_bar_cross_b_bar() - Vec3::y() * (e0 * e0 / C)).norm() < 1e-12 * e0 * e0 / C);
}

#[test]
fn numeric_and_analytic_cycle_average_agree() {
    let w = PlaneWave::new(7.5e5, Vec3::new(0.3, -0.2, 1.0), Vec3::new(1.0, 0.0, -0.3), OMEGA)
        .unwrap()
        .with_phase(1.1);
    let model = FieldModel::PlaneWave(w);
    let x = Vec3::new(3e-6, -1e-6, 2e-6);
    let ca = model.cycle_averaged(&x, 2e-14);
    let (e_sq, s) = cycle_averaged_numeric(&model, &x, 2e-14, OMEGA, 64);
    assert!((e_sq / ca.e_sq_bar - 1.0).abs() < 1e-8);
    assert!((s - ca.poynting_bar).norm() < 1e-8 * ca.poynting_bar.norm());

    let b = FieldModel::Beam(beam(BeamProfileKind::Gaussian));
    let x = Vec3::new(1e-3, 40e-6, -25e-6);
    let ca = b.cycle_averaged(&x, 0.0);
    let (e_sq, s) = cycle_averaged_numeric(&b, &x, 0.0, b_omega(&b), 128);
    assert!((e_sq / ca.e_sq_bar - 1.0).abs() < 1e-8);
    assert!((s - ca.poynting_bar).norm() < 1e-8 * ca.poynting_bar.norm());
}

fn b_omega(m: &FieldModel) -> f64 {
    match m {
        FieldModel::Beam(b) => b.omega,
        _ => unreachable!(),
    }
}

#[test]
fn counterpropagating_pair_has_no_net_poynting() {
    for traveling in [
        Traveling::PlaneWave(PlaneWave::new(1e6, Vec3::x(), Vec3::y(), OMEGA).unwrap()),
        Traveling::Beam(beam(BeamProfileKind::Gaussian)),
    ] {
        let pair = CounterpropagatingPair::retro_reflected(traveling)
            .unwrap()
            .with_envelope(Envelope::SmoothstepEdges {
                duration: 1e-6,
                edge: 2e-7,
            })
            .unwrap();
        let model = FieldModel::CounterpropagatingPair(pair);
        let single = FieldModel::Superposition(vec![match traveling {
            Traveling::PlaneWave(w) => FieldModel::PlaneWave(w),
            Traveling::Beam(b) => FieldModel::Beam(b),
        }]);
        let scale = single.cycle_averaged(&Vec3::zeros(), 0.0).poynting_bar.norm();
        for i in 0..500 {
            let x = Vec3::new(i as f64 * 1.37e-7, (i % 7) as f64 * 1e-5, 0.0);
            let t = i as f64 * 2e-9;
            let ca = model.cycle_averaged(&x, t);
            assert!(ca.poynting_bar.norm() < 1e-12 * scale);
            assert!(ca.poynting_bar_rate.norm() < 1e-12 * scale / 2e-7);
            assert!(ca.b_bar_cross_e_bar.norm() < 1e-12 * scale * MU0 * 2.0);
        }
    }
}

#[test]
fn gaussian_field_scale() {
    let ca = FieldModel::Beam(beam(BeamProfileKind::Gaussian)).cycle_averaged(&Vec3::new(0.02, 0.0, 0.0), 0.0);
    let e = ca.e_sq_bar.sqrt();
    assert!((e - 1.55e6).abs() < 0.01e6, "{e}");
}

#[test]
fn transversality() {
    let models = [
        FieldModel::PlaneWave(PlaneWave::along(Vec3::new(1.0, 2.0, -0.5), 1e5, OMEGA).unwrap()),
        FieldModel::Beam(beam(BeamProfileKind::SuperGaussian { order: 2 })),
    ];
    let k = [Vec3::new(1.0, 2.0, -0.5).normalize(), Vec3::x()];
    for (m, k) in models.iter().zip(k) {
        for i in 0..100 {
            let x = Vec3::new(i as f64 * 3e-6, (i as f64 * 0.37).sin() * 5e-5, (i as f64).cos() * 5e-5);
            let f = m.instantaneous_fields(&x, i as f64 * 1e-15);
            assert!(f.e.dot(&k).abs() <= 1e-10 * f.e.norm().max(1.0));
            assert!(f.b.dot(&k).abs() <= 1e-10 * f.b.norm().max(1e-8));
        }
    }
}

#[test]
fn gaussian_gradient_finite_difference() {
    let b = beam(BeamProfileKind::Gaussian);
    let model = FieldModel::Beam(b);
    for x in [
        Vec3::new(0.0, 0.5 * b.waist, 0.0),
        Vec3::new(1e-3, 0.3 * b.waist, 0.4 * b.waist),
    ] {
        let analytic = model.cycle_averaged(&x, 0.0).grad_e_sq_bar;
        let fd = grad_e_sq_bar_fd(&model, &x, 0.0, b.waist / 1e4);
        assert!((analytic - fd).norm() < 1e-6 * analytic.norm(), "{analytic} {fd}");
    }
}

#[test]
fn pulse_rate_and_gradient() {
    let w = PlaneWave::new(1.55e6, Vec3::x(), Vec3::y(), OMEGA).unwrap();
    let env = Envelope::Gaussian { sigma: 1e-7 };
    let p = FieldModel::TravelingPulse(TravelingPulse::new(w, env, 0.0).unwrap());
    for t in [-1.5e-7, -3e-8, 5e-8, 2.2e-7] {
        let x = Vec3::new(1.0, 0.0, 0.0);
        let t = t + 1.0 / C;
        let ca = p.cycle_averaged(&x, t);
        let fd = poynting_bar_rate_fd(&p, &x, t, 1e-7 / 1e4);
        assert!((ca.poynting_bar_rate - fd).norm() < 1e-6 * ca.poynting_bar_rate.norm());
        // retarded time: ∂ₓ𝓔̄² = −(1/c) ∂ₜ𝓔̄²
        let s = ca.poynting_bar_rate.x * 2.0 * MU0 * C;
        assert!((ca.grad_e_sq_bar.x + s / C).abs() < 1e-10 * ca.grad_e_sq_bar.x.abs());
    }
}

#[test]
fn reversal_negates_flux() {
    let models = [
        FieldModel::Beam(beam(BeamProfileKind::Gaussian)),
        FieldModel::PlaneWave(
            PlaneWave::along(Vec3::new(0.2, 1.0, 0.1), 3e5, OMEGA)
                .unwrap()
                .with_phase(0.3),
        ),
    ];
    for m in models {
        let r = m.reversed();
        for i in 0..50 {
            let x = Vec3::new(i as f64 * 1e-6, 2e-5, -1e-5);
            let a = m.cycle_averaged(&x, 0.0);
            let b = r.cycle_averaged(&x, 0.0);
            assert!((a.e_sq_bar - b.e_sq_bar).abs() <= 1e-15 * a.e_sq_bar);
            assert!((b.poynting_bar + a.poynting_bar).norm() <= 1e-15 * a.poynting_bar.norm());
            assert!((b.b_bar_cross_e_bar + a.b_bar_cross_e_bar).norm() <= 1e-15 * a.b_bar_cross_e_bar.norm());
        }
    }
}

#[test]
fn amplitude_vectors_reproduce_cross_product() {
    let m = FieldModel::Beam(beam(BeamProfileKind::SuperGaussian { order: 2 }));
    let x = Vec3::new(0.01, 3e-5, 1e-5);
    let (e, b) = m.amplitude_vectors(&x, 0.0).unwrap();
    let ca = m.cycle_averaged(&x, 0.0);
    assert!((b.cross(&e) - ca.b_bar_cross_e_bar).norm() < 1e-13 * ca.b_bar_cross_e_bar.norm());
    assert!((e.norm_squared() / ca.e_sq_bar - 1.0).abs() < 1e-13);
    assert!(FieldModel::Superposition(vec![]).amplitude_vectors(&x, 0.0).is_none());
}

#[test]
fn validation() {
    assert!(PlaneWave::new(1.0, Vec3::x(), Vec3::new(1.0, 1.0, 0.0), OMEGA).is_err());
    assert!(PlaneWave::new(1.0, Vec3::zeros(), Vec3::y(), OMEGA).is_err());
    let w = PlaneWave::new(1.0, Vec3::x(), Vec3::y(), OMEGA).unwrap();
    let skew = PlaneWave::new(1.0, Vec3::new(-1.0, 0.1, 0.0), Vec3::z(), OMEGA).unwrap();
    assert!(CounterpropagatingPair::new(Traveling::PlaneWave(w), Traveling::PlaneWave(skew), None).is_err());
    assert!(Beam::new(Vec3::x(), Vec3::zeros(), 0.0, 1.0, BeamProfileKind::Gaussian, OMEGA).is_err());
}

#[test]
fn warnings_for_fast_or_sharp_envelopes() {
    let w = PlaneWave::new(1.0, Vec3::x(), Vec3::y(), OMEGA).unwrap();
    let fast = FieldModel::TravelingPulse(TravelingPulse::new(w, Envelope::Gaussian { sigma: 1e-14 }, 0.0).unwrap());
    assert_eq!(fast.warnings().len(), 1);
    let sharp = FieldModel::TravelingPulse(
        TravelingPulse::new(
            w,
            Envelope::Square {
                duration: 1e-6,
                rise_time: 0.0,
            },
            0.0,
        )
        .unwrap(),
    );
    assert!(sharp.has_discontinuity());
    assert_eq!(sharp.warnings().len(), 1);
    let fine = FieldModel::TravelingPulse(TravelingPulse::new(w, Envelope::Gaussian { sigma: 1e-7 }, 0.0).unwrap());
    assert!(fine.warnings().is_empty());
    assert_eq!(fine.feature_time(), Some(1e-7));
    assert!(FieldModel::Beam(beam(BeamProfileKind::FlatTop)).is_static());
}
