use num_complex::Complex;
use proptest::prelude::*;

use unruh_core::audit::{
    brodin_frequency_map, exact_lab_frequency, laser_scenario, lorentz_photon_energy, PhysicalConstants,
};
use unruh_core::coordinates::{classify, to_minkowski, to_rindler, RindlerEvent, SpacetimeEvent, Worldline};
use unruh_core::rates::{channel_rate_accelerated, total_rate_accelerated};
use unruh_core::specfun::{bessel_k, bessel_k_complex};
use unruh_core::thermal::{unruh_temperature, ThermalBath};
use unruh_core::wedge_fock::{apply_ladder, b_dagger, b_operator, Branch, LadderOp, TwoWedgeState};

type StateMap = fn(&TwoWedgeState<f64>) -> TwoWedgeState<f64>;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    // rounding z and t costs about e^{2|τ|} ulps of ζ, so |τ| ≤ 3 keeps 1e−12
    fn chart_round_trip(tau in -3.0f64..3.0, zeta in 0.01f64..50.0, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let e = RindlerEvent::new(tau, zeta, x, y).unwrap();
        let back = to_rindler(&to_minkowski(&e).unwrap()).unwrap();
        prop_assert!((back.tau - tau).abs() <= 1e-12 * tau.abs().max(1.0));
        prop_assert!(rel(back.zeta, zeta) <= 1e-12);
        prop_assert_eq!((back.x, back.y), (x, y));
    }

    #[test]
    fn line_element_is_the_minkowski_interval(
        tau in -2.0f64..2.0, zeta in 0.1f64..5.0,
        dt in -1.0f64..1.0, dz in -1.0f64..1.0, dx in -1.0f64..1.0, dy in -1.0f64..1.0,
    ) {
        let h = 1e-5;
        let p = RindlerEvent::new(tau, zeta, 0.0, 0.0).unwrap();
        let q = RindlerEvent::new(tau + h * dt, zeta + h * dz, h * dx, h * dy).unwrap();
        let ds2_rindler = p.line_element(h * dt, h * dz, h * dx, h * dy);
        let ds2_minkowski = to_minkowski(&p).unwrap().interval_to(&to_minkowski(&q).unwrap());
        // agreement to second order in the displacement
        prop_assert!((ds2_rindler - ds2_minkowski).abs() <= 1e-3 * h * h * (1.0 + zeta * zeta));
    }

    #[test]
    fn worldline_is_a_hyperbola(a in 0.1f64..10.0, u in -2.0f64..2.0) {
        // u = a s; second differences lose cosh²(u) digits to cancellation
        let s = u / a;
        let wl = Worldline::new(a).unwrap();
        let e = wl.event(s);
        prop_assert!(e.z > 0.0);
        prop_assert!(rel(e.z * e.z - e.t * e.t, 1.0 / (a * a)) < 1e-12 * (1.0 + (a * s).cosh().powi(2)));
        prop_assert!(rel(wl.numerical_acceleration(s, 1e-3 / a), a) < 1e-6);
    }

    #[test]
    fn classification_ignores_transverse_position(t in -5.0f64..5.0, z in -5.0f64..5.0, x in -9.0f64..9.0, y in -9.0f64..9.0) {
        prop_assert_eq!(classify(&SpacetimeEvent::new(t, x, y, z)), classify(&SpacetimeEvent::tz(t, z)));
    }

    #[test]
    fn bessel_real_order_positive(nu in 0.0f64..10.0, x in 0.01f64..50.0) {
        prop_assert!(bessel_k(nu, x).unwrap() > 0.0);
    }

    #[test]
    fn bessel_conjugation_symmetry(re in 0.0f64..3.0, im in 0.0f64..4.0, x in 0.2f64..10.0) {
        let k = bessel_k_complex(Complex::new(re, im), x).unwrap();
        let kc = bessel_k_complex(Complex::new(re, -im), x).unwrap();
        prop_assert!((k.conj() - kc).norm() <= 1e-10 * k.norm());
    }

    #[test]
    fn occupation_laws(a in 0.1f64..10.0, omega in 0.05f64..5.0, n in 0u64..50) {
        let bath = ThermalBath::new(a).unwrap();
        let law = bath.occupation(omega).unwrap();
        let beta_omega = bath.beta() * omega;
        // stay clear of subnormal probabilities
        prop_assume!(beta_omega * (n + 1) as f64 <= 600.0);
        prop_assert!(rel(law.probability(n + 1) / law.probability(n), (-beta_omega).exp()) < 1e-12);
        prop_assert!(rel((law.mean() + 1.0) / law.mean(), beta_omega.exp()) < 1e-12);
        if beta_omega >= 0.5 {
            let total: f64 = law.probabilities(200).iter().sum();
            prop_assert!((total + law.tail(200) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn temperature_is_linear(a in 0.01f64..100.0, lambda in 0.1f64..10.0) {
        prop_assert!(rel(unruh_temperature(lambda * a).unwrap(), lambda * unruh_temperature(a).unwrap()) < 1e-15);
    }

    #[test]
    fn rates_scale_as_charge_squared(q in 0.1f64..5.0, a in 0.1f64..10.0, k in 0.1f64..5.0) {
        let unit = channel_rate_accelerated(1.0, a, k).unwrap();
        prop_assert!(rel(channel_rate_accelerated(q, a, k).unwrap(), q * q * unit) < 1e-14);
        prop_assert_eq!(total_rate_accelerated(q, a, k).unwrap(), 2.0 * channel_rate_accelerated(q, a, k).unwrap());
    }

    #[test]
    fn rates_are_dimensionally_covariant(a in 0.1f64..10.0, k in 0.1f64..5.0) {
        let scaled = channel_rate_accelerated(1.0, 1.0, k / a).unwrap() / a;
        prop_assert!(rel(channel_rate_accelerated(1.0, a, k).unwrap(), scaled) < 1e-12);
    }

    #[test]
    fn ladder_actions_are_linear(
        re in prop::collection::vec(-1.0f64..1.0, 16),
        im in prop::collection::vec(-1.0f64..1.0, 16),
        alpha in -2.0f64..2.0,
    ) {
        let n = 5;
        let u = TwoWedgeState::from_fn(0.7, n, |r, l| if r < 4 && l < 4 { Complex::new(re[4 * r + l], 0.0) } else { Complex::new(0.0, 0.0) }).unwrap();
        let v = TwoWedgeState::from_fn(0.7, n, |r, l| if r < 4 && l < 4 { Complex::new(0.0, im[4 * r + l]) } else { Complex::new(0.0, 0.0) }).unwrap();
        let c = Complex::new(alpha, 0.5);
        let sum = u.add_scaled(c, &v).unwrap();
        let ops: [StateMap; 4] = [
            |s| apply_ladder(s, LadderOp::A_R),
            |s| apply_ladder(s, LadderOp::A_L_DAG),
            |s| b_operator(s, Branch::Negative),
            |s| b_dagger(s, Branch::Positive),
        ];
        for op in ops {
            let lhs = op(&sum);
            let rhs = op(&u).add_scaled(c, &op(&v)).unwrap();
            prop_assert!(lhs.add_scaled(Complex::new(-1.0, 0.0), &rhs).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn commutator_on_low_occupation(re in prop::collection::vec(-1.0f64..1.0, 9)) {
        let n = 8;
        // support on n_R, n_L < 3 keeps every product inside the cutoff
        let s = TwoWedgeState::from_fn(1.0, n, |r, l| if r < 3 && l < 3 { Complex::new(re[3 * r + l], 0.0) } else { Complex::new(0.0, 0.0) }).unwrap();
        let ab = apply_ladder(&apply_ladder(&s, LadderOp::A_R_DAG), LadderOp::A_R);
        let ba = apply_ladder(&apply_ladder(&s, LadderOp::A_R), LadderOp::A_R_DAG);
        let diff = ab.add_scaled(Complex::new(-1.0, 0.0), &ba).unwrap().add_scaled(Complex::new(-1.0, 0.0), &s).unwrap();
        prop_assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn boosts_keep_photons_on_shell(
        th in 0.0f64..std::f64::consts::PI, ph in 0.0f64..std::f64::consts::TAU, e in 0.1f64..10.0,
        vx in -0.5f64..0.5, vy in -0.5f64..0.5, vz in -0.5f64..0.5,
    ) {
        let k = [e, e * th.sin() * ph.cos(), e * th.sin() * ph.sin(), e * th.cos()];
        let b = lorentz_photon_energy(k, [vx, vy, vz]).unwrap();
        let norm = b[0] * b[0] - b[1] * b[1] - b[2] * b[2] - b[3] * b[3];
        prop_assert!(norm.abs() <= 1e-12 * b[0] * b[0]);
    }

    #[test]
    fn laser_temperature_is_linear(g in 1.0f64..1e30, lambda in 0.1f64..10.0) {
        let c = PhysicalConstants::codata2018();
        let t1 = laser_scenario(g, &c).unwrap().temperature_kelvin;
        let t2 = laser_scenario(lambda * g, &c).unwrap().temperature_kelvin;
        prop_assert!(rel(t2, lambda * t1) < 1e-14);
    }
}

#[test]
fn bessel_recurrence() {
    for nu in [0.5f64, 1.0, 2.0] {
        for x in [0.5f64, 1.0, 5.0] {
            let lhs = bessel_k(nu - 1.0, x).unwrap() - bessel_k(nu + 1.0, x).unwrap();
            let rhs = -2.0 * nu / x * bessel_k(nu, x).unwrap();
            assert!(rel(lhs, rhs) < 1e-8, "nu={nu} x={x}");
        }
    }
}

#[test]
fn imaginary_order_positive_beyond_turning_point() {
    for mu in [0.5f64, 1.0, 3.0, 8.0] {
        for i in 0..8 {
            let x = mu * (1.0 + 0.5 * i as f64);
            assert!(unruh_core::bessel_k_imag(mu, x).unwrap() > 0.0, "mu={mu} x={x}");
        }
    }
}

#[test]
fn brodin_map_is_not_a_boost() {
    // deterministic low-discrepancy sample of off-axis photons
    let mut worst = 0.0f64;
    for i in 1..200 {
        let f = i as f64;
        let v = 0.1 + 0.8 * (f * 0.618_034).fract();
        let theta = std::f64::consts::PI * (f * 0.414_214).fract();
        let phi = std::f64::consts::TAU * (f * 0.732_051).fract();
        let phi_v = std::f64::consts::TAU * (f * 0.236_068).fract();
        let quoted = brodin_frequency_map(1.0, v, theta, phi, phi_v).unwrap();
        let exact = exact_lab_frequency(1.0, v, theta, phi, phi_v).unwrap();
        worst = worst.max(rel(quoted, exact));
    }
    assert!(worst > 0.01, "max relative deviation {worst}");
}
