//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion outside `KNOWN_FAILURES` fails, or if a known
//! failure starts passing.

use std::f64::consts::{PI, TAU};
use std::process::Command;
use std::time::Instant;

use num_complex::Complex;

use unruh_core::audit::{
    brodin_frequency_map, dispersion_audit, exact_lab_frequency, laser_scenario, measure_mismatch,
    thomson_cross_section, DispersionReport, DistributionSpec, Measure, PhysicalConstants, Range,
};
use unruh_core::coordinates::{to_minkowski, to_rindler, RindlerEvent, Worldline};
use unruh_core::rates::{
    channel_rate_accelerated, spectrum_sweep, total_rate_accelerated, total_rate_thermal_route, ModeLabel,
    Polarization, QuadratureConfig,
};
use unruh_core::specfun::{bessel_k, bessel_k_imag};
use unruh_core::thermal::{detailed_balance_limit, DetailedBalanceConfig, ThermalBath};
use unruh_core::wedge_fock::{
    apply_ladder, b_dagger, b_operator, four_term_decomposition, minkowski_creation, reduced_right_density,
    squeezed_vacuum, Branch, OmegaGrid, Rapidity, TwoWedgeState,
};

/// Criteria expected to fail, with the reason recorded alongside.
const KNOWN_FAILURES: [(&str, &str); 1] = [(
    "3a",
    "ħa/(2πck_B) at 2e25 g is 0.0685 keV; the quoted 0.08 keV is outside ±10%",
)];

// criterion 1
const FRAME_GRID: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const FRAME_TOL: f64 = 0.02;
const FRAME_BUDGET_S: f64 = 120.0;
// criterion 2
const CHANNEL_PAPER: f64 = 1.4606e-3;
const CHANNEL_PAPER_TOL: f64 = 1e-4;
const K1_ORACLE_TOL: f64 = 1e-10;
// criterion 3
const LASER_G: f64 = 2e25;
const LASER_QUOTED_KEV: f64 = 0.08;
const LASER_TOL: f64 = 0.10;
const THOMSON_QUOTED: f64 = 6.652e-29;
const THOMSON_TOL: f64 = 1e-3;
// criterion 4
const FOCK_OMEGAS: [f64; 4] = [0.25, 0.5, 1.0, 2.0];
const FOCK_CUTOFF: usize = 16;
const B_RESIDUAL_TOL: f64 = 1e-12;
const THERMAL_STATE_TOL: f64 = 1e-10;
const FOUR_TERM_TOL: f64 = 1e-12;
const COMMUTATOR_TOL: f64 = 1e-10;
const FOCK_BUDGET_S: f64 = 10.0;
// criterion 5
const NORMALIZATION_TOL: f64 = 1e-12;
const BALANCE_TOL: f64 = 1e-4;
// criterion 6
const MEASURE_TOL: f64 = 1e-8;
const GAUSSIAN_MIN_DISCREPANCY: f64 = 0.10;
const FREQUENCY_MIN_DEVIATION: f64 = 0.01;
// criterion 7
const ROUND_TRIP_TOL: f64 = 1e-12;
const ACCELERATION_TOL: f64 = 1e-6;
const RECURRENCE_TOL: f64 = 1e-8;
const LARGE_X_TOL: f64 = 0.01;
const IMAGINARY_DECAY_TOL: f64 = 0.05;

struct Outcome {
    id: &'static str,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `K₁(x)` by the trapezoid rule on `∫₀^∞ e^{−x cosh t} cosh t dt`, which
/// converges geometrically for this analytic, doubly decaying integrand.
fn k1_trapezoid(x: f64) -> f64 {
    let h = 1.0f64 / 64.0;
    let mut sum = 0.5 * (-x).exp();
    let mut t = h;
    loop {
        let term = (-x * t.cosh()).exp() * t.cosh();
        sum += term;
        if term < 1e-300 || term < 1e-20 * sum {
            break;
        }
        t += h;
    }
    h * sum
}

/// `K₁(x)` from its ascending series with `I₁` and digamma terms.
fn k1_series(x: f64) -> f64 {
    const EULER: f64 = 0.577_215_664_901_532_9;
    let y = 0.25 * x * x;
    let (mut i1, mut s) = (0.0, 0.0);
    let mut term = 1.0; // y^k / (k!(k+1)!)
    let mut psi_k1 = -EULER; // ψ(k+1)
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            term *= y / (kf * (kf + 1.0));
            psi_k1 += 1.0 / kf;
        }
        let psi_k2 = psi_k1 + 1.0 / (kf + 1.0);
        i1 += term;
        s += (psi_k1 + psi_k2) * term;
    }
    let i1 = 0.5 * x * i1;
    1.0 / x + (0.5 * x).ln() * i1 - 0.25 * x * s
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cfg = QuadratureConfig::default();
    let result = spectrum_sweep(1.0, 1.0, &FRAME_GRID, &cfg);
    let elapsed = start.elapsed().as_secs_f64();
    let (passed, detail) = match result {
        Ok(sweep) => {
            let worst = sweep.residuals.iter().fold(0.0f64, |m, r| m.max(r.relative()));
            let consistent = sweep.residuals.iter().all(|r| r.consistent_with_zero());
            (
                worst < FRAME_TOL && consistent && elapsed < FRAME_BUDGET_S,
                format!(
                    "max |inertial − closed form|/closed form = {worst:.2e} (< {FRAME_TOL}); residuals within error: {consistent}; {elapsed:.2} s (< {FRAME_BUDGET_S} s)"
                ),
            )
        }
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        id: "1",
        name: "frame equivalence",
        passed,
        detail,
    }
}

fn criterion_2() -> Outcome {
    let k1 = bessel_k(1.0, 1.0).unwrap();
    let trap = k1_trapezoid(1.0);
    let series = k1_series(1.0);
    let channel = channel_rate_accelerated(1.0, 1.0, 1.0).unwrap();
    let total = total_rate_accelerated(1.0, 1.0, 1.0).unwrap();
    let oracle = trap * trap / (8.0 * PI * PI * PI);
    let passed = rel(k1, trap) < K1_ORACLE_TOL
        && rel(k1, series) < K1_ORACLE_TOL
        && rel(channel, oracle) < 2.0 * K1_ORACLE_TOL
        && (channel - CHANNEL_PAPER).abs() < CHANNEL_PAPER_TOL * CHANNEL_PAPER
        && total == 2.0 * channel;
    Outcome {
        id: "2",
        name: "closed-form rates",
        passed,
        detail: format!(
            "K₁(1) = {k1:.15} (trapezoid Δ {:.1e}, series Δ {:.1e}); channel = {channel:.6e} vs ≈ {CHANNEL_PAPER:e}; total/channel = {}",
            rel(k1, trap),
            rel(k1, series),
            total / channel
        ),
    }
}

fn criterion_3a() -> Outcome {
    let s = laser_scenario(LASER_G, &PhysicalConstants::codata2018()).unwrap();
    let dev = (s.temperature_kev - LASER_QUOTED_KEV) / LASER_QUOTED_KEV;
    Outcome {
        id: "3a",
        name: "laser scenario temperature",
        passed: dev.abs() <= LASER_TOL,
        detail: format!(
            "T = {:.4e} K = {:.4e} keV vs quoted {LASER_QUOTED_KEV} keV: {:+.1}% (window ±{:.0}%)",
            s.temperature_kelvin,
            s.temperature_kev,
            100.0 * dev,
            100.0 * LASER_TOL
        ),
    }
}

fn criterion_3b() -> Outcome {
    let sigma = thomson_cross_section(&PhysicalConstants::codata2018());
    Outcome {
        id: "3b",
        name: "Thomson cross section",
        passed: rel(sigma, THOMSON_QUOTED) < THOMSON_TOL,
        detail: format!(
            "σ_T = {sigma:.6e} m² vs {THOMSON_QUOTED:e}: {:.1e} (< {THOMSON_TOL:e})",
            rel(sigma, THOMSON_QUOTED)
        ),
    }
}

fn minus(a: &TwoWedgeState<f64>, b: &TwoWedgeState<f64>) -> TwoWedgeState<f64> {
    a.add_scaled(Complex::new(-1.0, 0.0), b).unwrap()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (mut b_res, mut thermal, mut mean, mut four, mut comm) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let rap = Rapidity::new(0.8, 0.6, 0.0).unwrap();
    for omega in FOCK_OMEGAS {
        let vac = squeezed_vacuum(omega, FOCK_CUTOFF).unwrap();
        for br in [Branch::Positive, Branch::Negative] {
            b_res = b_res.max(b_operator(&vac, br).norm());
        }
        let rho = reduced_right_density(&vac).unwrap();
        let z = 1.0 - (-TAU * omega).exp();
        thermal = thermal.max(rho.max_off_diagonal());
        for (n, p) in rho.diagonal.iter().enumerate() {
            thermal = thermal.max((p - z * (-TAU * omega * n as f64).exp()).abs());
        }
        mean = mean.max((rho.mean - 1.0 / ((TAU * omega).exp() - 1.0)).abs());

        let direct = minkowski_creation(&vac, &rap, &OmegaGrid::single(omega)).unwrap();
        let explicit = four_term_decomposition(&rap, omega, 1.0)
            .terms()
            .iter()
            .fold(TwoWedgeState::zero(omega, FOCK_CUTOFF).unwrap(), |acc, (c, op)| {
                acc.add_scaled(*c, &apply_ladder(&vac, *op)).unwrap()
            });
        four = four.max(minus(&direct, &explicit).norm());

        for n_r in 0..3 {
            for n_l in 0..3 {
                let s = TwoWedgeState::basis(omega, FOCK_CUTOFF, n_r, n_l).unwrap();
                for br in [Branch::Positive, Branch::Negative] {
                    let c = minus(&b_operator(&b_dagger(&s, br), br), &b_dagger(&b_operator(&s, br), br));
                    comm = comm.max(minus(&c, &s).norm());
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    Outcome {
        id: "4",
        name: "two-wedge suite",
        passed: b_res < B_RESIDUAL_TOL
            && thermal < THERMAL_STATE_TOL
            && mean < THERMAL_STATE_TOL
            && four < FOUR_TERM_TOL
            && comm < COMMUTATOR_TOL
            && elapsed < FOCK_BUDGET_S,
        detail: format!(
            "ω ∈ {{0.25, 0.5, 1, 2}}, N = {FOCK_CUTOFF}: ‖bψ‖ {b_res:.1e}, thermal {thermal:.1e}, n̄ {mean:.1e}, four-term {four:.1e}, [b,b†]−1 {comm:.1e}; {elapsed:.2} s"
        ),
    }
}

fn criterion_5() -> Outcome {
    let bath = ThermalBath::new(1.0).unwrap();
    let (mut closure, mut ratio) = (0.0f64, 0.0f64);
    for omega in [0.25, 0.5, 1.0, 2.0] {
        let law = bath.occupation(omega).unwrap();
        let sum: f64 = law.probabilities(400).iter().sum();
        closure = closure.max((sum + law.tail(400) - 1.0).abs());
        for n in 0..20 {
            ratio = ratio.max(rel(
                law.probability(n + 1) / law.probability(n),
                (-bath.beta() * omega).exp(),
            ));
        }
    }
    let linear = detailed_balance_limit(|e: f64| 3.0 * e, &bath, &DetailedBalanceConfig::default()).unwrap();
    let balance = (linear.emission - linear.absorption).abs() / linear.emission;
    let route = total_rate_thermal_route(1.0f64, 1.0, 1.0, &DetailedBalanceConfig::default()).unwrap();
    let route_balance = (route.emission - route.absorption).abs() / route.emission;
    let route_total = rel(route.total(), total_rate_accelerated(1.0, 1.0, 1.0).unwrap());
    Outcome {
        id: "5",
        name: "thermal laws",
        passed: closure < NORMALIZATION_TOL
            && ratio < NORMALIZATION_TOL
            && balance < BALANCE_TOL
            && route_balance < BALANCE_TOL
            && route_total < BALANCE_TOL,
        detail: format!(
            "Σp_n − 1 {closure:.1e}; Boltzmann ratio {ratio:.1e}; |P_em − P_abs|/P {balance:.1e} (linear), {route_balance:.1e} (rate regulator); thermal-route total vs closed form {route_total:.1e}"
        ),
    }
}

fn criterion_6() -> Outcome {
    let unit = Range::new(0.0, 1.0).unwrap();
    let exp = measure_mismatch(&DistributionSpec {
        density: |e: f64, _: f64| (-e).exp(),
        paired_with: Measure::Inertial,
        energy: Range::half_line(),
        k_perp: unit,
    })
    .unwrap();
    let sep = measure_mismatch(&DistributionSpec {
        density: |w: f64, kp: f64| (-w - kp).exp(),
        paired_with: Measure::Rindler,
        energy: Range::half_line(),
        k_perp: Range::half_line(),
    })
    .unwrap();
    let gauss = measure_mismatch(&DistributionSpec {
        density: |e: f64, kp: f64| (-e * e - kp * kp).exp(),
        paired_with: Measure::Inertial,
        energy: unit,
        k_perp: unit,
    })
    .unwrap();
    let oracle = rel(exp.inertial, 8.0 * PI).max(rel(sep.rindler, 2.0 * PI));

    let mut worst = 0.0f64;
    for i in 1..200 {
        let f = i as f64;
        let v = 0.1 + 0.8 * (f * 0.618_034).fract();
        let theta = PI * (f * 0.414_214).fract();
        let phi = TAU * (f * 0.732_051).fract();
        let phi_v = TAU * (f * 0.236_068).fract();
        let quoted = brodin_frequency_map(1.0, v, theta, phi, phi_v).unwrap();
        let exact = exact_lab_frequency(1.0, v, theta, phi, phi_v).unwrap();
        worst = worst.max(rel(quoted, exact));
    }

    let rindler_ok = [0.5, 1.0, 7.0].iter().all(|&w| {
        matches!(
            dispersion_audit(&ModeLabel::rindler(Polarization::Two, w, 1.0, 0.5).unwrap()),
            Ok(DispersionReport::Unconstrained { .. })
        )
    });
    let off_shell = ModeLabel::Minkowski {
        polarization: Polarization::One,
        k0: 1.0,
        kx: 2.0,
        ky: 0.0,
        kz: 0.0,
    };
    let off_rejected = dispersion_audit(&off_shell).is_err();

    Outcome {
        id: "6",
        name: "audit suite",
        passed: oracle < MEASURE_TOL
            && gauss.discrepancy > GAUSSIAN_MIN_DISCREPANCY
            && worst > FREQUENCY_MIN_DEVIATION
            && rindler_ok
            && off_rejected,
        detail: format!(
            "measure oracles (8π, 2π) {oracle:.1e}; shared Gaussian discrepancy {:.1}%; quoted frequency map off by up to {:.0}%; Rindler labels accepted: {rindler_ok}; off-shell rejected: {off_rejected}",
            100.0 * gauss.discrepancy,
            100.0 * worst
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut round_trip = 0.0f64;
    for i in 0..=12 {
        for j in 1..=10 {
            let tau = -3.0 + 0.5 * i as f64;
            let zeta = 0.1 * (j * j) as f64;
            let e = RindlerEvent::new(tau, zeta, 0.3, -1.2).unwrap();
            let back = to_rindler(&to_minkowski(&e).unwrap()).unwrap();
            round_trip = round_trip
                .max((back.tau - tau).abs() / tau.abs().max(1.0))
                .max(rel(back.zeta, zeta));
        }
    }
    let mut accel = 0.0f64;
    for a in [0.1, 1.0, 9.81] {
        let wl = Worldline::new(a).unwrap();
        for u in [-2.0, -0.5, 0.0, 0.7, 2.0] {
            accel = accel.max(rel(wl.numerical_acceleration(u / a, 1e-3 / a), a));
        }
    }
    let mut recurrence = 0.0f64;
    for nu in [0.5, 1.0, 2.0] {
        for x in [0.5, 1.0, 5.0] {
            let lhs = bessel_k(nu - 1.0, x).unwrap() - bessel_k(nu + 1.0, x).unwrap();
            recurrence = recurrence.max(rel(lhs, -2.0 * nu / x * bessel_k(nu, x).unwrap()));
        }
    }
    let large_x = (bessel_k(1.0, 50.0).unwrap() * (100.0 / PI).sqrt() * 50.0f64.exp() - 1.0).abs();
    let decay = rel(
        bessel_k_imag(1.0, 20.0).unwrap() / bessel_k_imag(1.0, 10.0).unwrap(),
        (-10.0f64).exp() * 0.5f64.sqrt(),
    );
    Outcome {
        id: "7",
        name: "coordinates and special functions",
        passed: round_trip < ROUND_TRIP_TOL
            && accel < ACCELERATION_TOL
            && recurrence < RECURRENCE_TOL
            && large_x < LARGE_X_TOL
            && decay < IMAGINARY_DECAY_TOL,
        detail: format!(
            "round trip {round_trip:.1e}; 4-acceleration {accel:.1e}; recurrence {recurrence:.1e}; K₁(50) asymptote {large_x:.1e}; K_i(20)/K_i(10) decay {decay:.1e}"
        ),
    }
}

fn criterion_8() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_unruh");
    let runs: [&[&str]; 6] = [
        &["residual", "--kperp", "0.25,0.5,1,2,4"],
        &["rates", "--format", "json", "--kperp", "0.5,1"],
        &["fock", "--format", "json"],
        &["thermal", "--a", "6.2832", "--omega", "1", "--nmax", "5"],
        &["audit"],
        &["bessel", "--mu", "1,3"],
    ];
    let scratch = std::env::temp_dir().join(format!("unruh-acceptance-{}", std::process::id()));
    let mut problems = Vec::new();
    for args in runs {
        let outputs: Vec<_> = (0..2)
            .map(|i| {
                Command::new(bin)
                    .args(args)
                    .env("UNRUH_OUT_DIR", scratch.join(i.to_string()))
                    .output()
                    .expect("binary runs")
            })
            .collect();
        let files: Vec<Vec<u8>> = (0..2)
            .map(|i| {
                let ext = if args.contains(&"json") { "json" } else { "csv" };
                std::fs::read(scratch.join(i.to_string()).join(format!("{}.{ext}", args[0]))).unwrap_or_default()
            })
            .collect();
        if !outputs[0].status.success() {
            problems.push(format!("{} exited {:?}", args[0], outputs[0].status.code()));
        }
        if files[0].is_empty() || files[0] != files[1] || outputs[0].stderr != outputs[1].stderr {
            problems.push(format!("{} differs between runs", args[0]));
        }
    }
    let _ = std::fs::remove_dir_all(&scratch);
    Outcome {
        id: "8",
        name: "determinism",
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} commands run twice, outputs byte-identical", runs.len())
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let criteria: [fn() -> Outcome; 9] = [
        criterion_1,
        criterion_2,
        criterion_3a,
        criterion_3b,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ];
    let mut unexpected = Vec::new();
    for run in criteria {
        let o = run();
        let known = KNOWN_FAILURES.iter().find(|(id, _)| *id == o.id);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let note = match (known, o.passed) {
            (Some((_, why)), false) => format!("  [known: {why}]"),
            _ => String::new(),
        };
        println!("{tag} {:<3} {}: {}{note}", o.id, o.name, o.detail);
        if o.passed == known.is_some() {
            unexpected.push(o.id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
