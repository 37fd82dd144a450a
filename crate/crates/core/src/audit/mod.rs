//! Checks on laser-based proposals for observing the Unruh effect.
//!
//! Everything here is `f64`: the inputs are SI constants from a data file
//! and the outputs are reports. [`brodin_frequency_map`] reproduces a
//! frequency relation as it was quoted in the literature and exists only to
//! be compared with [`lorentz_photon_energy`]; nothing else uses it.

mod constants;

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::rates::{spectrum_sweep, ModeLabel, QuadratureConfig, SpectrumSweep};
use crate::thermal::unruh_temperature;

pub use constants::{PhysicalConstants, BUNDLED as BUNDLED_CONSTANTS};

/// Unruh temperature for an electron accelerated at a multiple of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaserScenario {
    pub accel_in_g: f64,
    /// m/s².
    pub acceleration: f64,
    pub temperature_kelvin: f64,
    pub temperature_kev: f64,
}

/// `T = ħa/(2πc k_B)`.
pub fn laser_scenario(accel_in_g: f64, consts: &PhysicalConstants) -> Result<LaserScenario> {
    if !(accel_in_g > 0.0) || !accel_in_g.is_finite() {
        return Err(domain(format!("acceleration must be positive, got {accel_in_g} g")));
    }
    let acceleration = accel_in_g * consts.standard_gravity;
    // a in inverse seconds, converted to an energy with ħ
    let rate = acceleration / consts.speed_of_light;
    let energy = consts.hbar * unruh_temperature(rate)?;
    Ok(LaserScenario {
        accel_in_g,
        acceleration,
        temperature_kelvin: energy / consts.boltzmann,
        temperature_kev: energy / consts.joule_per_kev(),
    })
}

/// Thomson cross section `e⁴/(6πε₀²m²c⁴)` in m².
pub fn thomson_cross_section(consts: &PhysicalConstants) -> f64 {
    let e2 = consts.elementary_charge * consts.elementary_charge;
    let eps = consts.vacuum_permittivity;
    let mc2 = consts.electron_mass * consts.speed_of_light * consts.speed_of_light;
    e2 * e2 / (6.0 * PI * eps * eps * mc2 * mc2)
}

/// Thomson cross section `8πα²/(3m²)` in natural units; the unit of the
/// result is the inverse square of the unit of `mass`.
pub fn thomson_cross_section_natural(alpha: f64, mass: f64) -> f64 {
    8.0 * PI * alpha * alpha / (3.0 * mass * mass)
}

/// The natural-unit cross section with `m` in joules, converted to m² with
/// `(ħc)²`.
pub fn thomson_cross_section_via_natural(consts: &PhysicalConstants) -> f64 {
    let c = consts.speed_of_light;
    let hbar_c = consts.hbar * c;
    thomson_cross_section_natural(consts.fine_structure(), consts.electron_mass * c * c) * hbar_c * hbar_c
}

/// Integration range; `hi` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || lo < 0.0 || !(hi > lo) {
            return Err(domain(format!("invalid range [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn half_line() -> Self {
        Self {
            lo: 0.0,
            hi: f64::INFINITY,
        }
    }
}

/// Which momentum-space measure a distribution is written against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    /// `k² dΩ dk`.
    Inertial,
    /// `dω dk_x dk_y`.
    Rindler,
}

/// A photon distribution `f(energy, k⊥)` and the ranges it is integrated
/// over.
///
/// Under the inertial measure the energy is `|k|`, `k⊥ = |k| sin θ`, and the
/// solid angle is complete. Under the Rindler measure the energy is the
/// Rindler energy `ω` and `k⊥` ranges over `k_perp`.
pub struct DistributionSpec<F> {
    pub density: F,
    pub paired_with: Measure,
    pub energy: Range,
    pub k_perp: Range,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureMismatch {
    pub inertial: f64,
    pub rindler: f64,
    /// Absolute quadrature error estimates of the two integrals.
    pub inertial_error: f64,
    pub rindler_error: f64,
    /// `|rindler − inertial| / |inertial|`.
    pub discrepancy: f64,
}

const MEASURE_TOL: f64 = 1e-11;

/// `∫_range g` with its error estimate, mapping a half-infinite range to
/// `[0, 1)` by `x = lo + t/(1 − t)`.
fn integrate_range(g: impl Fn(f64) -> f64, range: Range, what: &str) -> Result<(f64, f64)> {
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: MEASURE_TOL,
        max_intervals: 2000,
    };
    let est = if range.hi.is_infinite() {
        integrate(
            |t: f64| {
                if t >= 1.0 {
                    return 0.0;
                }
                let s = 1.0 - t;
                let v = g(range.lo + t / s) / (s * s);
                if v.is_finite() {
                    v
                } else {
                    f64::INFINITY
                }
            },
            &[0.0, 0.5, 0.9, 1.0],
            &opts,
        )
    } else {
        integrate(&g, &[range.lo, range.hi], &opts)
    };
    if !est.converged || !est.value.is_finite() {
        return Err(Error::Integrability(format!(
            "{what} over [{}, {}] does not converge (estimate {} ± {})",
            range.lo, range.hi, est.value, est.error
        )));
    }
    Ok((est.value, est.error))
}

/// Integrates the same distribution against the inertial measure
/// `k² dΩ dk` and the Rindler measure `dω dk_x dk_y`. The two are different
/// measures on different variables; the report quantifies how far apart
/// they land.
pub fn measure_mismatch<F>(spec: &DistributionSpec<F>) -> Result<MeasureMismatch>
where
    F: Fn(f64, f64) -> f64,
{
    let f = &spec.density;
    let failed = std::cell::Cell::new(None);
    // worst relative error of any inner integral, charged against the total
    let inner_rel = std::cell::Cell::new(0.0f64);
    let inner = |g: &dyn Fn(f64) -> f64, range: Range, what: &str| match integrate_range(g, range, what) {
        Ok((v, e)) => {
            if v != 0.0 {
                inner_rel.set(inner_rel.get().max(e / v.abs()));
            }
            v
        }
        Err(e) => {
            failed.set(Some(e));
            f64::NAN
        }
    };

    let inertial = integrate_range(
        |k| {
            let angular = inner(
                &|th: f64| f(k, k * th.sin()) * th.sin(),
                Range { lo: 0.0, hi: PI },
                "polar integral",
            );
            2.0 * PI * k * k * angular
        },
        spec.energy,
        "inertial measure",
    );
    if let Some(e) = failed.take() {
        return Err(e);
    }
    let (inertial, inertial_error) = inertial?;
    let inertial_error = inertial_error + inner_rel.replace(0.0) * inertial.abs();
    let rindler = integrate_range(
        |w| 2.0 * PI * inner(&|kp: f64| f(w, kp) * kp, spec.k_perp, "transverse integral"),
        spec.energy,
        "Rindler measure",
    );
    if let Some(e) = failed.take() {
        return Err(e);
    }
    let (rindler, rindler_error) = rindler?;
    let rindler_error = rindler_error + inner_rel.get() * rindler.abs();
    Ok(MeasureMismatch {
        inertial,
        rindler,
        inertial_error,
        rindler_error,
        discrepancy: (rindler - inertial).abs() / inertial.abs(),
    })
}

fn check_velocity(v: f64) -> Result<()> {
    if !(v.abs() < 1.0) {
        return Err(domain(format!("speed must be below c, got {v}")));
    }
    Ok(())
}

/// `ω_lab = γ ω_rest (1 − v sin θ cos(φ − φ_v))`, as quoted; kept for
/// comparison with the Lorentz transformation only.
pub fn brodin_frequency_map(omega_rest: f64, v: f64, theta: f64, phi: f64, phi_v: f64) -> Result<f64> {
    check_velocity(v)?;
    let gamma = 1.0 / ((1.0 - v) * (1.0 + v)).sqrt();
    Ok(omega_rest * gamma * (1.0 - v * theta.sin() * (phi - phi_v).cos()))
}

/// Photon four-momentum `(k₀, k_x, k_y, k_z)` seen from a frame moving with
/// velocity `v`: `k₀′ = γ(k₀ − v·k)`, `k′_∥ = γ(k_∥ − v k₀)`.
pub fn lorentz_photon_energy(k: [f64; 4], v: [f64; 3]) -> Result<[f64; 4]> {
    let [k0, kx, ky, kz] = k;
    let kk = (kx * kx + ky * ky + kz * kz).sqrt();
    if !k.iter().all(|c| c.is_finite()) || (k0 - kk).abs() > 1e-12 * k0.abs().max(1.0) || k0 < 0.0 {
        return Err(domain(format!("photon momentum is off shell: k₀ = {k0}, |k| = {kk}")));
    }
    let speed = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    check_velocity(speed)?;
    if speed == 0.0 {
        return Ok(k);
    }
    let gamma = 1.0 / ((1.0 - speed) * (1.0 + speed)).sqrt();
    let n = [v[0] / speed, v[1] / speed, v[2] / speed];
    let k_par = n[0] * kx + n[1] * ky + n[2] * kz;
    let k_par_new = gamma * (k_par - speed * k0);
    let shift = k_par_new - k_par;
    Ok([
        gamma * (k0 - speed * k_par),
        kx + shift * n[0],
        ky + shift * n[1],
        kz + shift * n[2],
    ])
}

/// Lab-frame energy of a photon emitted with energy `omega_rest` along the
/// direction `(θ, φ)` by a source moving with speed `v` along azimuth
/// `φ_v` in the `xy` plane, by an exact boost.
pub fn exact_lab_frequency(omega_rest: f64, v: f64, theta: f64, phi: f64, phi_v: f64) -> Result<f64> {
    let k = [
        omega_rest,
        omega_rest * theta.sin() * phi.cos(),
        omega_rest * theta.sin() * phi.sin(),
        omega_rest * theta.cos(),
    ];
    // the lab moves with −v relative to the source
    let boosted = lorentz_photon_energy(k, [-v * phi_v.cos(), -v * phi_v.sin(), 0.0])?;
    Ok(boosted[0])
}

/// Outcome of checking a mode label against a dispersion relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum DispersionReport {
    /// Minkowski label; `residual = k₀ − |k|`.
    OnShell { k0: f64, residual: f64 },
    /// Rindler label. `witness` differs from the input only in `ω`; both are
    /// valid, so `ω` is not fixed by `(k_x, k_y)`.
    Unconstrained {
        mode: ModeLabel<f64>,
        witness: ModeLabel<f64>,
    },
}

impl DispersionReport {
    pub fn summary(&self) -> String {
        match self {
            Self::OnShell { k0, residual } => format!("on shell: k0 = {k0}, residual {residual:e}"),
            Self::Unconstrained { mode, witness } => {
                let w = |m: &ModeLabel<f64>| match m {
                    ModeLabel::Rindler { omega, .. } => *omega,
                    ModeLabel::Minkowski { k0, .. } => *k0,
                };
                format!(
                    "no dispersion relation: omega = {} and omega = {} share k_perp = {}",
                    w(mode),
                    w(witness),
                    mode.k_perp()
                )
            }
        }
    }
}

pub fn dispersion_audit(mode: &ModeLabel<f64>) -> Result<DispersionReport> {
    match *mode {
        ModeLabel::Minkowski { k0, .. } => {
            let residual = mode.on_shell_residual().unwrap_or(0.0);
            if residual.abs() > 1e-12 * k0.abs().max(1.0) {
                return Err(domain(format!("Minkowski label is off shell: k0 − |k| = {residual}")));
            }
            Ok(DispersionReport::OnShell { k0, residual })
        }
        ModeLabel::Rindler {
            polarization,
            omega,
            kx,
            ky,
        } => {
            let witness = ModeLabel::rindler(polarization, omega + 1.0, kx, ky)?;
            Ok(DispersionReport::Unconstrained { mode: *mode, witness })
        }
    }
}

/// Largest accepted `|residual|/total` in a [`residual_report`].
pub const RESIDUAL_THRESHOLD: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    /// Empty grid.
    NoData,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportRow {
    pub k_perp: f64,
    pub accelerated: f64,
    pub inertial: f64,
    pub residual: f64,
    pub relative: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub q: f64,
    pub a: f64,
    pub rows: Vec<ReportRow>,
    pub max_relative: f64,
    pub threshold: f64,
    pub verdict: Verdict,
    pub deduplicated: bool,
}

impl AuditReport {
    pub fn from_sweep(sweep: &SpectrumSweep<f64>) -> Self {
        let acc = &sweep.accelerated;
        let ine = &sweep.inertial;
        let rows: Vec<ReportRow> = (0..acc.len())
            .map(|i| {
                let residual = acc.density[i] - ine.density[i];
                ReportRow {
                    k_perp: acc.k_perp[i],
                    accelerated: acc.density[i],
                    inertial: ine.density[i],
                    residual,
                    relative: residual.abs() / acc.density[i],
                    error: ine.error[i] + acc.error[i],
                }
            })
            .collect();
        let max_relative = rows.iter().fold(0.0f64, |m, r| m.max(r.relative));
        let verdict = if rows.is_empty() {
            Verdict::NoData
        } else if max_relative < RESIDUAL_THRESHOLD {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            q: acc.q,
            a: acc.a,
            rows,
            max_relative,
            threshold: RESIDUAL_THRESHOLD,
            verdict,
            deduplicated: sweep.deduplicated,
        }
    }

    pub fn verdict_line(&self) -> String {
        match self.verdict {
            Verdict::Pass => format!(
                "PASS residual: max |residual|/total = {:.3e} < {}",
                self.max_relative, self.threshold
            ),
            Verdict::Fail => format!(
                "FAIL residual: max |residual|/total = {:.3e} >= {}",
                self.max_relative, self.threshold
            ),
            Verdict::NoData => "NO DATA residual: empty grid".to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "residual audit  q = {}  a = {}", self.q, self.a);
        let _ = writeln!(
            out,
            "{:>12} {:>14} {:>14} {:>12} {:>10} {:>10}",
            "k_perp", "accelerated", "inertial", "residual", "rel", "error"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>12.6e} {:>14.6e} {:>14.6e} {:>12.3e} {:>10.2e} {:>10.2e}",
                r.k_perp, r.accelerated, r.inertial, r.residual, r.relative, r.error
            );
        }
        if self.deduplicated {
            let _ = writeln!(out, "note: duplicate grid points were dropped");
        }
        let _ = writeln!(out, "{}", self.verdict_line());
        out
    }
}

/// Sweeps both frames over `grid` and grades the residual at 2%.
pub fn residual_report(q: f64, a: f64, grid: &[f64], cfg: &QuadratureConfig<f64>) -> Result<AuditReport> {
    Ok(AuditReport::from_sweep(&spectrum_sweep(q, a, grid, cfg)?))
}
