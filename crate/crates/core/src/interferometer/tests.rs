use super::*;
use crate::physics::polarizability_full;

fn li() -> AtomSpecies {
    AtomSpecies::lithium7()
}

fn alpha() -> f64 {
    let laser = LaserSpec::co2_50w();
    polarizability_full(&li(), laser.omega(), laser.peak_amplitude()).unwrap()
}

const WORST: Misalignment = Misalignment {
    theta_rad: 0.02 * std::f64::consts::PI / 180.0,
    offset_waists: 0.02,
};

#[test]
fn lithium_recoil() {
    let v = recoil_velocity(&li(), 671e-9).unwrap();
    let by_hand = 1.054_571_817e-34 * 2.0 * std::f64::consts::PI / 671e-9 / (7.016 * 1.660_539_066_6e-27);
    assert!((v / by_hand - 1.0).abs() < 1e-12);
    assert!((0.084..0.086).contains(&v));
    assert!((2.0 * 400.0 * v / C - 2.26e-7).abs() < 0.01e-7);
    let heavy = AtomSpecies {
        mass: 2.0 * li().mass,
        ..li()
    };
    assert!((recoil_velocity(&heavy, 671e-9).unwrap() / v - 0.5).abs() < 1e-15);
    assert!(recoil_velocity(&li(), 0.0).is_err());
}

#[test]
fn geometry_a_reference() {
    let g = GeometryA::reference();
    let r = run_geometry_a(&g, &li(), alpha()).unwrap();
    assert!((-0.026..-0.014).contains(&r.ohmw_signal_rad), "{}", r.ohmw_signal_rad);
    assert!(r.stark_residual_rad.abs() < 1e-9);
    assert_eq!(r.delta.kinetic, 0.0);
    assert_eq!(r.delta, r.phase_r - r.phase_l);
    let lp = r.diagnostics.loop_ohmw_rad.unwrap();
    assert!((lp / r.ohmw_signal_rad - 1.0).abs() < 1e-6);
    assert!((1e-9..3e-9).contains(&r.diagnostics.entrance_kick_m_per_s));
    assert!((r.diagnostics.ohmw_to_stark_ratio - 2.0 * g.speed / C).abs() < 1e-9);
}

#[test]
fn intensity_imbalance_leaves_a_stark_residual() {
    let g = GeometryA {
        intensity_imbalance: 0.01,
        ..GeometryA::reference()
    };
    let r = run_geometry_a(&g, &li(), alpha()).unwrap();
    let expected = -0.01 * r.phase_r.stark;
    assert!((r.stark_residual_rad / expected - 1.0).abs() < 1e-9);
    assert!(
        (10.0..20.0).contains(&r.stark_residual_rad.abs()),
        "{}",
        r.stark_residual_rad
    );
}

#[test]
fn reversing_both_beams() {
    let g = GeometryA {
        intensity_imbalance: 0.01,
        ..GeometryA::reference()
    };
    let a = run_geometry_a(&g, &li(), alpha()).unwrap();
    let b = run_geometry_a(
        &GeometryA {
            reverse_beams: true,
            ..g
        },
        &li(),
        alpha(),
    )
    .unwrap();
    assert!((a.ohmw_signal_rad + b.ohmw_signal_rad).abs() < 1e-12 * a.ohmw_signal_rad.abs());
    assert!((a.stark_residual_rad - b.stark_residual_rad).abs() < 1e-12 * a.stark_residual_rad.abs());
}

#[test]
fn standing_waves_give_no_signal() {
    let g = GeometryA::reference();
    let traveling = run_geometry_a(&g, &li(), alpha()).unwrap();
    let standing = run_geometry_a(
        &GeometryA {
            illumination: ArmIllumination::StandingWave,
            ..g
        },
        &li(),
        alpha(),
    )
    .unwrap();
    assert!(standing.ohmw_signal_rad.abs() < 1e-12 * traveling.ohmw_signal_rad.abs());
}

#[test]
fn signal_does_not_depend_on_speed() {
    let g = GeometryA::reference();
    let a = run_geometry_a(&g, &li(), alpha()).unwrap();
    let b = run_geometry_a(&g.with_speed(2.0 * g.speed), &li(), alpha()).unwrap();
    assert!((b.ohmw_signal_rad / a.ohmw_signal_rad - 1.0).abs() < 1e-6);
    assert!((b.phase_r.stark / a.phase_r.stark - 0.5).abs() < 1e-6);
}

#[test]
fn arm_leaving_the_beam_is_an_error() {
    let g = GeometryA {
        misalignment: Misalignment::new(0.01, 0.0),
        ..GeometryA::reference()
    };
    assert!(matches!(
        run_geometry_a(&g, &li(), alpha()),
        Err(Error::ExitedBeam { arm: "L", .. })
    ));
    let b = GeometryB::reference(&li())
        .unwrap()
        .with_misalignment(Misalignment::new(0.0, 1.2));
    assert!(matches!(
        run_geometry_b(&b, &li(), alpha()),
        Err(Error::ExitedBeam { .. })
    ));
}

#[test]
fn geometry_b_reference() {
    let g = GeometryB::reference(&li()).unwrap();
    assert!((g.path_length() - DEFAULT_PATH_LENGTH).abs() < 1e-15);
    let r = run_geometry_b(&g, &li(), alpha()).unwrap();
    let v = g.arm_speed();
    assert!((r.diagnostics.ohmw_to_stark_ratio - 2.0 * v / C).abs() < 1e-9);
    assert!((1e-7..1e-6).contains(&r.diagnostics.ohmw_to_stark_ratio));
    assert!(r.stark_residual_rad.abs() < 1e-9);

    let e2 = g.beam().unwrap().peak_amplitude.powi(2);
    let expected = -alpha() * e2 * g.path_length() / (HBAR * C);
    assert!((r.ohmw_signal_rad / expected - 1.0).abs() < 1e-9);
}

#[test]
fn geometry_b_tolerance_point() {
    let g = GeometryB::reference(&li()).unwrap();
    let nominal = run_geometry_b(&g, &li(), alpha()).unwrap();
    let worst = run_geometry_b(&g.with_misalignment(WORST), &li(), alpha()).unwrap();
    assert!(
        (0.1..30.0).contains(&worst.stark_residual_rad.abs()),
        "{}",
        worst.stark_residual_rad
    );
    assert!(((worst.ohmw_signal_rad - nominal.ohmw_signal_rad) / nominal.ohmw_signal_rad).abs() < 0.15);
}

#[test]
fn flat_profile_helps_straight_arms() {
    let g = GeometryB::reference(&li())
        .unwrap()
        .with_misalignment(WORST)
        .with_motion(ArmMotion::Ballistic);
    let gaussian = GeometryB {
        laser: LaserSpec::co2_50w(),
        ..g.clone()
    };
    let s = run_geometry_b(&g, &li(), alpha()).unwrap();
    let gr = run_geometry_b(&gaussian, &li(), alpha()).unwrap();
    assert!(
        gr.stark_residual_rad.abs() > 10.0 * s.stark_residual_rad.abs(),
        "{} vs {}",
        gr.stark_residual_rad,
        s.stark_residual_rad
    );
}

#[test]
fn trapped_arms_stay_near_the_axis() {
    // the transverse dipole force confines the slow clouds, so the drift
    // is far below the straight-line value θ·L
    let g = GeometryB::reference(&li())
        .unwrap()
        .with_misalignment(Misalignment::new(WORST.theta_rad, 0.0));
    let r = run_geometry_b(&g, &li(), alpha()).unwrap();
    let straight = WORST.theta_rad.sin() * g.path_length();
    assert!(r.diagnostics.max_r_perp_r_m < 0.8 * straight);
    let b = run_geometry_b(&g.with_motion(ArmMotion::Ballistic), &li(), alpha()).unwrap();
    assert!((b.diagnostics.max_r_perp_r_m / straight - 1.0).abs() < 1e-6);
}

#[test]
fn single_error_source_cancels() {
    let g = GeometryB::reference(&li()).unwrap();
    for m in [
        Misalignment::new(WORST.theta_rad, 0.0),
        Misalignment::new(0.0, WORST.offset_waists),
    ] {
        let r = run_geometry_b(&g.with_misalignment(m), &li(), alpha()).unwrap();
        assert!(r.stark_residual_rad.abs() < 1e-9, "{m:?}: {}", r.stark_residual_rad);
    }
}

#[test]
fn relabeling_arms_flips_signal() {
    let g = GeometryB::reference(&li()).unwrap().with_misalignment(WORST);
    let flipped = GeometryB {
        n_recoils: -g.n_recoils,
        ..g.clone()
    };
    let a = run_geometry_b(&g, &li(), alpha()).unwrap();
    let b = run_geometry_b(&flipped, &li(), alpha()).unwrap();
    assert!((a.ohmw_signal_rad + b.ohmw_signal_rad).abs() < 1e-12 * a.ohmw_signal_rad.abs());
}

#[test]
fn reflection_through_the_axis() {
    let g = GeometryB::reference(&li()).unwrap().with_misalignment(WORST);
    let a = run_geometry_b(&g, &li(), alpha()).unwrap();
    let b = run_geometry_b(&g.with_misalignment(WORST.reflected()), &li(), alpha()).unwrap();
    assert!((a.stark_residual_rad - b.stark_residual_rad).abs() < 1e-9 * a.stark_residual_rad.abs());
    // the reflection leaves the light direction alone, so the signal is even too
    assert!((a.ohmw_signal_rad - b.ohmw_signal_rad).abs() < 1e-12 * a.ohmw_signal_rad.abs());
}

#[test]
fn speed_rescaling_keeps_path() {
    let g = GeometryB::reference(&li()).unwrap();
    let h = g.with_speed(2.0 * g.arm_speed());
    assert!((h.path_length() / g.path_length() - 1.0).abs() < 1e-14);
    assert!((h.arm_speed() / g.arm_speed() - 2.0).abs() < 1e-14);
}
