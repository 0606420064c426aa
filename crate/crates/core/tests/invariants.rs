mod common;

use std::f64::consts::{PI, TAU};

use fracmap_core::attractor::{self, OrbitConfig};
use fracmap_core::expansion::{self, CoefficientSet, QuadratureGrid};
use fracmap_core::mobius::{self, MobiusMatrix, ProjectivePoint};
use fracmap_core::{EigenIndex, MapParams, SpectralData};
use num_complex::Complex64;
use proptest::prelude::*;

fn elliptic_u() -> impl Strategy<Value = f64> {
    prop_oneof![(0.05f64..1.95), (-1.95f64..-0.05)]
}

fn any_u() -> impl Strategy<Value = f64> {
    prop_oneof![
        (0.05f64..1.95),
        (-1.95f64..-0.05),
        (2.05f64..6.0),
        (-6.0f64..-2.05)
    ]
}

fn wrap(a: f64) -> f64 {
    (a + PI).rem_euclid(TAU) - PI
}

proptest! {
    #[test]
    fn backward_inverts_forward(u in any_u(), x in -50.0f64..50.0) {
        let p = MapParams::new(u).unwrap();
        let x0 = ProjectivePoint::from_real(x);
        let back = p.backward().apply(p.forward().apply(x0));
        prop_assert!(back.distance(&x0) < 1e-12);
    }

    #[test]
    fn closed_form_matches_direct(u in any_u(), x in -5.0f64..5.0, n in 0u64..300) {
        let p = MapParams::new(u).unwrap();
        let x0 = ProjectivePoint::from_real(x);
        let direct = mobius::iterate_direct(p, x0, n);
        let closed = mobius::iterate_closed_form(p, x0, n).unwrap();
        prop_assert!(direct.distance(&closed) < 1e-9);
    }

    #[test]
    fn conjugation_is_multiplication(u in any_u(), x in -5.0f64..5.0) {
        let p = MapParams::new(u).unwrap();
        let c = mobius::conjugation_data(p);
        let y = c.y(x);
        prop_assume!(y.norm() < 1e6);
        let y_next = c.y(p.step(x));
        prop_assert!((y_next - c.kappa * y).norm() < 1e-9 * (1.0 + y.norm()));
    }

    #[test]
    fn multiplier_is_unimodular_iff_elliptic(u in any_u()) {
        let p = MapParams::new(u).unwrap();
        let k = mobius::conjugation_data(p).kappa;
        if p.is_elliptic() {
            prop_assert!((k.norm() - 1.0).abs() < 1e-15);
        } else {
            prop_assert!((k.norm() - 1.0).abs() > 1e-3);
            prop_assert_eq!(k.im, 0.0);
        }
    }

    #[test]
    fn normalize_conjugates_to_canonical_map(
        m11 in -3.0f64..3.0, m12 in -3.0f64..3.0, m21 in -3.0f64..3.0, m22 in -3.0f64..3.0,
        x in -3.0f64..3.0, n in 0u64..=20,
    ) {
        let Ok(m) = MobiusMatrix::new(m11, m12, m21, m22) else { return Ok(()) };
        prop_assume!(m21.abs() > 0.1 && m.det() > 0.1);
        let Ok((p, a)) = mobius::normalize(&m) else { return Ok(()) };
        // stay away from the parabolic boundary where both sides lose precision
        prop_assume!((p.u().abs() - 2.0).abs() > 0.05);
        let x0 = ProjectivePoint::from_real(x);
        let lhs = a.apply_projective(m.pow(n).apply(x0));
        let rhs = mobius::iterate_direct(p, a.apply_projective(x0), n);
        prop_assert!(lhs.distance(&rhs) < 1e-8, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn eigenfunction_modulus_is_lorentzian(u in elliptic_u(), n in -20i32..=20, x in -30.0f64..30.0) {
        let s = SpectralData::new(MapParams::new(u).unwrap()).unwrap();
        let v = s.eigenfunction(EigenIndex(n), x);
        prop_assert!((v.norm() - s.lorentzian(x)).abs() < 1e-12);
        prop_assert!((s.eigenvalue(EigenIndex(n)).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn phase_cocycle(u in elliptic_u(), x in -10.0f64..10.0) {
        prop_assume!(x.abs() > 1e-6);
        let s = SpectralData::new(MapParams::new(u).unwrap()).unwrap();
        let d = s.theta_continuous(u - 1.0 / x) - s.theta_continuous(x) - s.phi;
        prop_assert!(wrap(d).abs() < 1e-10);
    }

    #[test]
    fn phase_derivative_is_density(u in elliptic_u(), x in -10.0f64..10.0) {
        let s = SpectralData::new(MapParams::new(u).unwrap()).unwrap();
        prop_assume!((x - s.x0_disc).abs() > 1e-3);
        let h = 1e-6;
        let fd = (s.theta(x + h).unwrap() - s.theta(x - h).unwrap()) / (2.0 * h);
        let exact = -u.signum() * TAU * s.lorentzian(x);
        prop_assert!(((fd - exact) / exact).abs() < 1e-5);
    }

    #[test]
    fn shift_property(u in elliptic_u(), n in -10i32..10, m in -10i32..10, x in -10.0f64..10.0) {
        let s = SpectralData::new(MapParams::new(u).unwrap()).unwrap();
        let lhs = s.eigenfunction(EigenIndex(n), x)
            * Complex64::from_polar(1.0, m as f64 * s.theta_continuous(x));
        prop_assert!((lhs - s.eigenfunction(EigenIndex(n + m), x)).norm() < 1e-12);
    }

    #[test]
    fn lorentzian_peak(u in elliptic_u(), x in -10.0f64..10.0) {
        let s = SpectralData::new(MapParams::new(u).unwrap()).unwrap();
        let peak = 2.0 / (PI * (4.0 - u * u).sqrt());
        prop_assert!((s.lorentzian(u / 2.0) - peak).abs() < 1e-12 * peak);
        prop_assert!(s.lorentzian(x) > 0.0 && s.lorentzian(x) <= peak * (1.0 + 1e-15));
    }

    #[test]
    fn band_limited_round_trip(
        u in elliptic_u(),
        terms in proptest::collection::vec((-6i32..=6, -1.0f64..1.0, -1.0f64..1.0), 1..5),
    ) {
        let p = MapParams::new(u).unwrap();
        let terms: Vec<(i32, Complex64)> =
            terms.into_iter().map(|(n, a, b)| (n, Complex64::new(a, b))).collect();
        let exact = CoefficientSet::from_terms(p, &terms).unwrap();
        let f = |x: f64| exact.reconstruct(x);
        let grid = QuadratureGrid::new(p, 1024).unwrap();
        let c = expansion::compute_coefficients(p, f, 6, &grid).unwrap();
        for n in -6..=6 {
            prop_assert!((c.get(n) - exact.get(n)).norm() < 1e-9);
        }
        for x in [-3.0, 0.25, 4.0] {
            prop_assert!((c.reconstruct(x) - f(x)).norm() < 1e-9);
        }
    }

    #[test]
    fn orbit_closes_for_cycle_parameters(n in 3u32..=12, x in -4.0f64..4.0) {
        let p = mobius::cycle_parameter(n).unwrap();
        let x0 = ProjectivePoint::from_real(x);
        prop_assert!(mobius::iterate_direct(p, x0, n as u64).distance(&x0) < 1e-12);
    }
}

#[test]
fn phi_agrees_with_multiplier_angle() {
    for k in 0..50 {
        let u = 0.05 + 1.9 * k as f64 / 49.0;
        let phi = SpectralData::new(MapParams::new(u).unwrap()).unwrap().phi;
        let alt = 2.0 * ((4.0 - u * u).sqrt() / u).atan();
        assert!(wrap(phi - alt).abs() < 1e-12, "u={u}");
    }
}

#[test]
fn eigen_equation_both_signs() {
    for (i, u) in [0.5, -0.5, 1.2, -1.2, 1.9, -1.9].into_iter().enumerate() {
        let s = SpectralData::new(MapParams::new(u).unwrap()).unwrap();
        let sample = common::random_points(i as u64, 200, -10.0, 10.0);
        for n in -20..=20 {
            assert!(s.eigen_residual(EigenIndex(n), &sample).unwrap() < 1e-10);
        }
    }
}

#[test]
fn coefficients_of_real_functions_are_hermitian() {
    let p = MapParams::new(-1.2).unwrap();
    let grid = QuadratureGrid::new(p, 4096).unwrap();
    let battery: [&dyn Fn(f64) -> Complex64; 3] =
        [&common::gaussian, &common::bump, &common::quartic];
    for f in battery {
        let c = expansion::compute_coefficients(p, f, 24, &grid).unwrap();
        for n in 0..=24 {
            assert!((c.get(-n) - c.get(n).conj()).norm() < 1e-12);
        }
        for x in [-5.0, -0.5, 0.0, 1.7, 6.0] {
            assert!(c.reconstruct(x).im.abs() < 1e-8);
        }
    }
}

#[test]
fn grid_doubling_is_stable() {
    let p = MapParams::new(1.2).unwrap();
    let coarse = QuadratureGrid::new(p, 4096).unwrap();
    let fine = QuadratureGrid::new(p, 8192).unwrap();
    let other = common::lorentzian_at(0.4);
    let battery: [&dyn Fn(f64) -> Complex64; 4] =
        [&common::gaussian, &other, &common::bump, &common::quartic];
    for f in battery {
        let a = expansion::compute_coefficients(p, f, 64, &coarse).unwrap();
        let b = expansion::compute_coefficients(p, f, 64, &fine).unwrap();
        for n in -64..=64 {
            assert!((a.get(n) - b.get(n)).norm() < 1e-10);
        }
    }
}

#[test]
fn dual_quadrature_at_negative_u() {
    let p = MapParams::new(-0.9).unwrap();
    let s = SpectralData::new(p).unwrap();
    let grid = QuadratureGrid::new(p, 4096).unwrap();
    let c = expansion::compute_coefficients(p, common::gaussian, 16, &grid).unwrap();
    for n in -16..=16 {
        let oracle = common::real_line_coefficient(&s, &common::gaussian, n);
        assert!((oracle - c.get(n)).norm() < 1e-8, "n={n}");
    }
}

#[test]
fn ks_independent_of_start_and_burn_in() {
    let p = MapParams::new(1.2).unwrap();
    let n = 100_000;
    let ks = |x0: f64, burn: usize| {
        let cfg = OrbitConfig::new(p, x0, n).with_burn_in(burn);
        let sample = attractor::sample_orbit(&cfg).unwrap();
        attractor::compare_density(&sample.histogram, p)
            .unwrap()
            .ks_distance
    };
    for x0 in [-7.0, -0.4, 0.3, 2.2, 15.0] {
        let a = ks(x0, 0);
        let b = ks(x0, 1000);
        assert!(a < 5e-3 && b < 5e-3);
        assert!((a - b).abs() < 10.0 / n as f64, "x0={x0}: {a} vs {b}");
    }
}

#[test]
fn cycle_orbits_are_atomic() {
    for n in [3u32, 4, 6] {
        let p = mobius::cycle_parameter(n).unwrap();
        let cfg = OrbitConfig::new(p, 0.3, 10 * n as usize);
        let sample = attractor::sample_orbit(&cfg).unwrap();
        assert_eq!(sample.atomic_period, Some(n as usize));

        let mut values: Vec<f64> = (0..n as u64)
            .map(|k| mobius::iterate_direct(p, ProjectivePoint::from_real(0.3), k).to_real())
            .collect();
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        assert_eq!(values.len(), n as usize);
    }
}

#[test]
fn hyperbolic_orbits_converge() {
    let p = MapParams::new(3.0).unwrap();
    let target = attractor::point_attractor(p).unwrap();
    for x in common::random_points(9, 20, -10.0, 10.0) {
        for n in [60, 80, 200] {
            let xn = mobius::iterate_direct(p, ProjectivePoint::from_real(x), n).to_real();
            assert!((xn - target).abs() < 1e-9);
        }
    }
}
