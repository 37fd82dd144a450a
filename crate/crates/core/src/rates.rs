//! Photon emission by a uniformly accelerated charge, computed in both
//! frames.
//!
//! The accelerated-frame side is the closed form for emission into and
//! absorption from the Unruh bath at fixed transverse momentum,
//!
//! ```text
//! P_em = P_abs = q² / (8π³ a) · K₁(k⊥/a)²      (per dk_x dk_y per unit proper time)
//! ```
//!
//! The inertial side is computed from scratch: the Fourier transform of the
//! classical current on the hyperbolic worldline, switched on and off with
//! `e^{−ε|aτ|}`, is squared, summed over the two physical polarizations,
//! integrated over `k_z` and divided by the effective observation time. The
//! switching is then removed by extrapolating `ε → 0`.
//!
//! # Inertial amplitude
//!
//! With photon rapidity `y` (`k = k⊥(cosh y, cos φ, sin φ, sinh y)`),
//! `κ = k⊥/a` and worldline rapidity `σ = aτ`, the phase on the worldline is
//! `k·X = κ sinh(σ − y)` and
//!
//! ```text
//! J^μ(k) = (q/a) ∫ dσ e^{−ε|σ|} (cosh σ, 0, 0, sinh σ) e^{iκ sinh(σ−y)}.
//! ```
//!
//! The integral does not converge absolutely on the real line. Shifting
//! `t = σ − y` onto `Im t = π/2` turns the phase into `e^{−κ cosh u}`; the kink
//! of the switching function at `t = −y` leaves a vertical segment which is
//! integrated separately. `dk_z / k₀ = dy`, so the `k_z` integral is a
//! rapidity integral.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, richardson, QuadOptions};
use crate::scalar::Real;
use crate::specfun::bessel_k;
use crate::thermal::{detailed_balance_limit, DetailedBalanceConfig, ThermalBath};

/// Which observer a quantity is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    /// Co-accelerating (Rindler) observer; the charge is at rest in a bath.
    Accelerated,
    /// Inertial (Minkowski) observer; the charge radiates Bremsstrahlung.
    Inertial,
}

/// Classical current of a point charge `q` (in units of `e`) on the
/// worldline of proper acceleration `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargeCurrent<T> {
    pub q: T,
    pub a: T,
    pub frame: Frame,
}

impl<T: Real> ChargeCurrent<T> {
    pub fn new(q: T, a: T, frame: Frame) -> Result<Self> {
        check_charge(q)?;
        check_acceleration(a)?;
        Ok(Self { q, a, frame })
    }

    /// Same charge and acceleration described by the other observer.
    pub fn in_frame(&self, frame: Frame) -> Self {
        Self { frame, ..*self }
    }

    /// Coefficients of the delta-function support at the event `(t, z)` on
    /// the worldline.
    ///
    /// Rindler: `(j^τ, j^ζ, j^x, j^y) = (aq, 0, 0, 0)` times
    /// `δ(ζ − 1/a)δ(x)δ(y)`. Inertial: `(j^t, j^x, j^y, j^z) = (qaz, 0, 0, qat)`
    /// times the same delta written in inertial coordinates.
    pub fn density_coefficients(&self, t: T, z: T) -> [T; 4] {
        let aq = self.a * self.q;
        match self.frame {
            Frame::Accelerated => [aq, T::zero(), T::zero(), T::zero()],
            Frame::Inertial => [aq * z, T::zero(), T::zero(), aq * t],
        }
    }

    /// `δ(ζ − 1/a) = J(t) δ(z − √(t² + a⁻²))` with `J(t) = 1/(a√(t² + a⁻²))`.
    pub fn delta_jacobian(&self, t: T) -> T {
        let z = (t * t + (self.a * self.a).recip()).sqrt();
        (self.a * z).recip()
    }

    /// Charge density and `z` current per `δ(z − Z(t))δ(x)δ(y)` at
    /// inertial time `t`: `(q, q·t/Z(t))`.
    pub fn inertial_density(&self, t: T) -> (T, T) {
        let z = (t * t + (self.a * self.a).recip()).sqrt();
        let [jt, _, _, jz] = self.in_frame(Frame::Inertial).density_coefficients(t, z);
        let jac = self.delta_jacobian(t);
        (jt * jac, jz * jac)
    }
}

/// Photon polarization label `λ ∈ {1, 2}`.
///
/// For a Minkowski mode `1` is transverse to both `k` and the acceleration
/// axis; `2` lies in the plane spanned by `k` and the `z` axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    One,
    Two,
}

/// Quantum numbers of a photon mode.
///
/// A Rindler mode carries an energy `ω` that is independent of its
/// transverse momentum; there is no dispersion relation. A Minkowski mode is
/// on shell, `k₀ = |k|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ModeLabel<T> {
    Rindler {
        polarization: Polarization,
        omega: T,
        kx: T,
        ky: T,
    },
    Minkowski {
        polarization: Polarization,
        k0: T,
        kx: T,
        ky: T,
        kz: T,
    },
}

impl<T: Real> ModeLabel<T> {
    pub fn rindler(polarization: Polarization, omega: T, kx: T, ky: T) -> Result<Self> {
        if !(omega >= T::zero()) || !omega.is_finite() {
            return Err(domain(format!("Rindler energy must be nonnegative, got {omega}")));
        }
        if !kx.is_finite() || !ky.is_finite() {
            return Err(domain("transverse momenta must be finite"));
        }
        Ok(Self::Rindler {
            polarization,
            omega,
            kx,
            ky,
        })
    }

    /// Minkowski label with `k₀` fixed by the dispersion relation.
    pub fn on_shell(polarization: Polarization, kx: T, ky: T, kz: T) -> Result<Self> {
        if !kx.is_finite() || !ky.is_finite() || !kz.is_finite() {
            return Err(domain("wavevector must be finite"));
        }
        Ok(Self::Minkowski {
            polarization,
            k0: (kx * kx + ky * ky + kz * kz).sqrt(),
            kx,
            ky,
            kz,
        })
    }

    pub fn polarization(&self) -> Polarization {
        match *self {
            Self::Rindler { polarization, .. } | Self::Minkowski { polarization, .. } => polarization,
        }
    }

    pub fn k_perp(&self) -> T {
        match *self {
            Self::Rindler { kx, ky, .. } | Self::Minkowski { kx, ky, .. } => kx.hypot(ky),
        }
    }

    /// `k₀ − |k|` for Minkowski labels, `None` for Rindler labels.
    pub fn on_shell_residual(&self) -> Option<T> {
        match *self {
            Self::Rindler { .. } => None,
            Self::Minkowski { k0, kx, ky, kz, .. } => Some(k0 - (kx * kx + ky * ky + kz * kz).sqrt()),
        }
    }
}

fn check_charge<T: Real>(q: T) -> Result<()> {
    if !q.is_finite() {
        return Err(domain(format!("charge must be finite, got {q}")));
    }
    Ok(())
}

fn check_acceleration<T: Real>(a: T) -> Result<()> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(domain(format!("proper acceleration must be positive, got {a}")));
    }
    Ok(())
}

fn check_kperp<T: Real>(k_perp: T) -> Result<()> {
    if !(k_perp > T::zero()) || !k_perp.is_finite() {
        return Err(domain(format!(
            "transverse momentum must be positive (k⊥ = 0 is the divergent soft limit), got {k_perp}"
        )));
    }
    Ok(())
}

fn check_inputs<T: Real>(q: T, a: T, k_perp: T) -> Result<()> {
    check_charge(q)?;
    check_acceleration(a)?;
    check_kperp(k_perp)
}

/// `q²/(c·π³·a) · K₁(k⊥/a)²` with the same operation order for every `c`, so
/// that channel and total differ by an exact factor of two.
fn k1_squared_form<T: Real>(c: T, q: T, a: T, k_perp: T) -> Result<T> {
    check_inputs(q, a, k_perp)?;
    let k1 = bessel_k(T::one(), k_perp / a)?;
    let pi3 = T::PI() * T::PI() * T::PI();
    Ok(q * q / (c * pi3 * a) * (k1 * k1))
}

/// Emission (equivalently absorption) rate against the Unruh bath per
/// `dk_x dk_y` per unit proper time.
pub fn channel_rate_accelerated<T: Real>(q: T, a: T, k_perp: T) -> Result<T> {
    k1_squared_form(T::lit(8.0), q, a, k_perp)
}

/// Emission plus absorption: exactly twice [`channel_rate_accelerated`].
pub fn total_rate_accelerated<T: Real>(q: T, a: T, k_perp: T) -> Result<T> {
    k1_squared_form(T::lit(4.0), q, a, k_perp)
}

/// The inertial Bremsstrahlung density in closed form,
/// `q²/(4π³a) K₁(k⊥/a)²`. Used as the oracle for the numerical pipeline.
pub fn inertial_rate_closed_form<T: Real>(q: T, a: T, k_perp: T) -> Result<T> {
    k1_squared_form(T::lit(4.0), q, a, k_perp)
}

/// Emission and absorption channels against the Unruh bath.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelRates<T> {
    pub emission: T,
    pub absorption: T,
}

impl<T: Real> ChannelRates<T> {
    pub fn total(&self) -> T {
        self.emission + self.absorption
    }
}

pub fn accelerated_channels<T: Real>(q: T, a: T, k_perp: T) -> Result<ChannelRates<T>> {
    let rate = channel_rate_accelerated(q, a, k_perp)?;
    Ok(ChannelRates {
        emission: rate,
        absorption: rate,
    })
}

/// Spontaneous density `g(E) = P·βE` of a zero-energy Rindler mode, chosen
/// so that `lim n̄(E) g(E) = P`, the closed-form channel rate.
pub fn calibrated_regulator<T: Real>(q: T, a: T, k_perp: T) -> Result<impl Fn(T) -> T> {
    let channel = channel_rate_accelerated(q, a, k_perp)?;
    let beta = ThermalBath::new(a)?.beta();
    Ok(move |e: T| channel * beta * e)
}

/// Total rate rebuilt from the thermal average: the calibrated regulator is
/// weighted by `n̄ + 1` (emission) and `n̄` (absorption) and both are taken
/// to zero Rindler energy.
pub fn total_rate_thermal_route<T: Real>(
    q: T,
    a: T,
    k_perp: T,
    config: &DetailedBalanceConfig<T>,
) -> Result<ChannelRates<T>> {
    let g = calibrated_regulator(q, a, k_perp)?;
    let balance = detailed_balance_limit(g, &ThermalBath::new(a)?, config)?;
    Ok(ChannelRates {
        emission: balance.emission,
        absorption: balance.absorption,
    })
}

/// Numerical settings of the inertial pipeline. All lengths and times are
/// in units of `1/a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig<T> {
    /// Range `|aτ| ≤ window` of the worldline integral after the contour
    /// shift, where the integrand is `e^{−κ cosh u}`.
    pub proper_time_window: T,
    /// Switching rates `ε`, largest first.
    pub eps_ladder: Vec<T>,
    /// Photon rapidity covered by quadrature; beyond it the spectrum is
    /// continued as `e^{−2εy}`.
    pub rapidity_cutoff: T,
    pub rel_tol: T,
    /// Subinterval budget of each adaptive integral.
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            proper_time_window: T::lit(30.0),
            eps_ladder: [0.2, 0.1, 0.05, 0.025].iter().map(|&e| T::lit(e)).collect(),
            rapidity_cutoff: T::lit(40.0),
            rel_tol: T::lit(1e-9),
            max_intervals: 2000,
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.proper_time_window > T::zero()) || !self.proper_time_window.is_finite() {
            return Err(domain("proper-time window must be positive"));
        }
        if !(self.rapidity_cutoff > T::zero()) || !self.rapidity_cutoff.is_finite() {
            return Err(domain("rapidity cutoff must be positive"));
        }
        if self.eps_ladder.len() < 2 {
            return Err(domain("switching ladder needs at least two rates"));
        }
        if self.eps_ladder.iter().any(|e| !(*e > T::zero()) || !e.is_finite()) {
            return Err(domain("switching rates must be positive"));
        }
        if self.eps_ladder.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(domain("switching ladder must be strictly decreasing"));
        }
        if !(self.rel_tol > T::zero() && self.rel_tol < T::lit(1e-2)) {
            return Err(domain("quadrature tolerance must lie in (0, 1e-2)"));
        }
        if self.max_intervals < 1 {
            return Err(domain("interval budget must be positive"));
        }
        Ok(())
    }

    fn inner(&self) -> QuadOptions<T> {
        QuadOptions {
            abs_tol: T::zero(),
            rel_tol: self.rel_tol,
            max_intervals: self.max_intervals,
        }
    }
}

/// Beyond this value of `κ cosh y` the vertical contour piece is below
/// `ε·10⁻²⁴` of the amplitude and is dropped.
const VERTICAL_PIECE_CUTOFF: f64 = 1e8;

/// Scaled worldline integrals `(J^t, J^z)·a/(q cosh y)` for photon
/// rapidity `y`, `κ = k⊥/a` and switching rate `eps`.
fn scaled_current<T: Real>(kappa: T, y: T, eps: T, cfg: &QuadratureConfig<T>) -> Result<[Complex<T>; 2]> {
    let window = cfg.proper_time_window;
    let (sh, ch) = (y.sinh(), y.cosh());
    let th = y.tanh();
    let half_pi = T::FRAC_PI_2();
    let i = Complex::new(T::zero(), T::one());

    // horizontal line Im t = π/2: the envelope branch flips at u = −y
    let lead_plus = Complex::from_polar(T::one(), -eps * half_pi);
    let lead_minus = Complex::from_polar(T::one(), eps * half_pi);
    let horizontal = |u: T| {
        let w = (-kappa * u.cosh()).exp();
        let (phase, env) = if u >= -y {
            (lead_plus, (-eps * (u + y)).exp())
        } else {
            (lead_minus, (eps * (u + y)).exp())
        };
        let (su, cu) = (u.sinh(), u.cosh());
        let scale = phase * (w * env);
        // cosh(t + iπ/2) = i sinh u, sinh(t + iπ/2) = i cosh u
        [scale * i * (su + th * cu), scale * i * (cu + th * su)]
    };
    let mut points = vec![-window, T::zero(), window];
    if -y > -window && -y < window && y != T::zero() {
        points.push(-y);
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    let opts = cfg.inner();
    let hz = integrate(|u| horizontal(u)[1], &points, &opts).into_result(opts.rel_tol)?;
    // J^t and the vertical piece can vanish identically; measure them
    // against J^z
    let opts = QuadOptions {
        abs_tol: opts.rel_tol * hz.value.norm(),
        ..opts
    };
    let ht = integrate(|u| horizontal(u)[0], &points, &opts).into_result(opts.rel_tol)?;
    let mut jt = ht.value;
    let mut jz = hz.value;

    // vertical segment t = −y + is, s ∈ [0, π/2]; absent when ε·s vanishes
    let damping = kappa * ch;
    if eps > T::zero() && damping < T::lit(VERTICAL_PIECE_CUTOFF) {
        let vertical = |s: T| {
            let (ss, cs) = s.sin_cos();
            let e = Complex::from_polar((-damping * ss).exp(), -kappa * sh * cs) * (eps * s).sin();
            [e * cs, e * ss]
        };
        let mut vpoints = vec![T::zero()];
        for c in [1.0, 10.0, 50.0] {
            let s = T::lit(c) / damping;
            if s < half_pi {
                vpoints.push(s);
            }
        }
        vpoints.push(half_pi);
        let two_over_ch = T::lit(2.0) / ch;
        let opts = QuadOptions {
            abs_tol: opts.abs_tol / two_over_ch,
            ..opts
        };
        let vt = integrate(|s| vertical(s)[0], &vpoints, &opts).into_result(opts.rel_tol)?;
        let vz = integrate(|s| vertical(s)[1], &vpoints, &opts).into_result(opts.rel_tol)?;
        jt += vt.value * two_over_ch;
        jz += i * vz.value * two_over_ch;
    }
    Ok([jt, jz])
}

/// Fourier transform of the switched worldline current and the two
/// physical polarization amplitudes `ε*_λ · J` for one photon mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionAmplitudes<T> {
    /// `(J^t, J^x, J^y, J^z)`.
    pub current: [Complex<T>; 4],
    /// Amplitudes for [`Polarization::One`] and [`Polarization::Two`].
    pub polarizations: [Complex<T>; 2],
    pub rapidity: T,
}

/// Emission amplitudes of the photon `mode` (must be an on-shell Minkowski
/// label with `k⊥ > 0`) for switching rate `eps ≥ 0`.
pub fn emission_amplitudes<T: Real>(
    q: T,
    a: T,
    mode: &ModeLabel<T>,
    eps: T,
    cfg: &QuadratureConfig<T>,
) -> Result<EmissionAmplitudes<T>> {
    let (k0, kx, ky, kz) = match *mode {
        ModeLabel::Minkowski { k0, kx, ky, kz, .. } => (k0, kx, ky, kz),
        ModeLabel::Rindler { .. } => return Err(domain("inertial amplitudes need a Minkowski mode label")),
    };
    let residual = mode.on_shell_residual().unwrap_or_else(T::zero);
    if residual.abs() > T::lit(1e-12) * k0.abs().max(T::one()) {
        return Err(domain(format!("photon mode is off shell by {residual}")));
    }
    let k_perp = mode.k_perp();
    check_inputs(q, a, k_perp)?;
    if !(eps >= T::zero()) || !eps.is_finite() {
        return Err(domain(format!("switching rate must be nonnegative, got {eps}")));
    }
    let y = (kz / k0).atanh();
    let [jt, jz] = scaled_current(k_perp / a, y, eps, cfg)?;
    let factor = q / a * y.cosh();
    let current = [
        jt * factor,
        Complex::new(T::zero(), T::zero()),
        Complex::new(T::zero(), T::zero()),
        jz * factor,
    ];

    // ε₁ = (0, −sin φ, cos φ, 0), ε₂ = (0, −tanh y cos φ, −tanh y sin φ, sech y)
    let (sp, cp) = (ky / k_perp, kx / k_perp);
    let th = y.tanh();
    let sech = y.cosh().recip();
    let e1 = [T::zero(), -sp, cp, T::zero()];
    let e2 = [T::zero(), -th * cp, -th * sp, sech];
    let dot = |e: [T; 4]| current[0] * e[0] - current[1] * e[1] - current[2] * e[2] - current[3] * e[3];
    Ok(EmissionAmplitudes {
        current,
        polarizations: [dot(e1), dot(e2)],
        rapidity: y,
    })
}

/// Polarization sum evaluated two ways: explicitly over the two physical
/// polarizations, and covariantly as `−J·J*`. They agree when the current
/// is conserved (`ε = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationSums<T> {
    pub explicit: T,
    pub covariant: T,
}

pub fn polarization_sums<T: Real>(amplitudes: &EmissionAmplitudes<T>) -> PolarizationSums<T> {
    let [j0, j1, j2, j3] = amplitudes.current;
    PolarizationSums {
        explicit: amplitudes.polarizations.iter().fold(T::zero(), |s, p| s + p.norm_sqr()),
        covariant: j1.norm_sqr() + j2.norm_sqr() + j3.norm_sqr() - j0.norm_sqr(),
    }
}

/// Rate density at one switching rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchedRate<T> {
    pub eps: T,
    pub density: T,
    pub error: T,
}

/// Inertial density with the switching removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InertialDensity<T> {
    pub density: T,
    /// Extrapolation error plus the largest quadrature error on the ladder.
    pub error: T,
    pub ladder: Vec<SwitchedRate<T>>,
}

/// `ε/(8π³a)·q²·∫₀^∞ |J^z a/(q cosh y)|² dy`: the inertial density for one
/// switching rate. The factor `εa` is `1/T_eff` with `T_eff = ∫ g² dτ`, and
/// the integrand is even in `y`.
fn switched_density<T: Real>(q: T, a: T, kappa: T, eps: T, cfg: &QuadratureConfig<T>) -> Result<SwitchedRate<T>> {
    let failure = std::sync::Mutex::new(None);
    let spectrum = |y: T| -> T {
        match scaled_current(kappa, y, eps, cfg) {
            Ok([_, jz]) => jz.norm_sqr(),
            Err(e) => {
                failure.lock().expect("poisoned").get_or_insert(e);
                T::zero()
            }
        }
    };
    let ymax = cfg.rapidity_cutoff;
    let points = [T::zero(), T::one(), T::lit(4.0), T::lit(10.0), ymax]
        .into_iter()
        .filter(|p| *p <= ymax)
        .collect::<Vec<_>>();
    let est = integrate(spectrum, &points, &cfg.inner());
    let tail_start = spectrum(ymax);
    if let Some(e) = failure.lock().expect("poisoned").take() {
        return Err(e);
    }
    let est = est.into_result(cfg.rel_tol)?;
    let tail = tail_start / (T::lit(2.0) * eps);
    let pi3 = T::PI() * T::PI() * T::PI();
    let prefactor = q * q * eps / (T::lit(8.0) * pi3 * a);
    // past the cutoff |J^z/cosh y|² = S∞ e^{−2εy} up to tanh y − 1 ≈ −2e^{−2y}
    // and the e^{−κ cosh y} vertical piece
    let tail_error = tail * T::lit(4.0) * (T::lit(-2.0) * ymax).exp();
    Ok(SwitchedRate {
        eps,
        density: prefactor * (est.value + tail),
        error: prefactor * (est.error + tail_error),
    })
}

/// Inertial Bremsstrahlung density per `dk_x dk_y` per unit proper time,
/// from the worldline current with the switching extrapolated away.
pub fn inertial_bremsstrahlung_density<T: Real>(
    q: T,
    a: T,
    k_perp: T,
    cfg: &QuadratureConfig<T>,
) -> Result<InertialDensity<T>> {
    check_inputs(q, a, k_perp)?;
    cfg.validate()?;
    let kappa = k_perp / a;
    let ladder = cfg
        .eps_ladder
        .iter()
        .map(|&eps| switched_density(q, a, kappa, eps, cfg))
        .collect::<Result<Vec<_>>>()?;
    let steps: Vec<T> = ladder.iter().map(|r| r.eps).collect();
    let values: Vec<T> = ladder.iter().map(|r| r.density).collect();
    let ex = richardson(&steps, &values)?;
    let quad_error = ladder.iter().fold(T::zero(), |m, r| m.max(r.error));
    let error = ex.error + quad_error;
    if !ex.value.is_finite() || !(ex.value > T::zero()) || !(error < ex.value.abs()) {
        return Err(Error::Extrapolation {
            message: format!(
                "switching extrapolation unstable at k⊥/a = {kappa}: {} ± {error}",
                ex.value
            ),
            sequence: values.iter().map(|v| v.as_f64()).collect(),
        });
    }
    Ok(InertialDensity {
        density: ex.value,
        error,
        ladder,
    })
}

/// Difference between the accelerated-frame total rate and the inertial
/// Bremsstrahlung density at one transverse momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual<T> {
    pub k_perp: T,
    pub accelerated: T,
    pub inertial: T,
    pub residual: T,
    /// Propagated error of `residual`.
    pub error: T,
}

impl<T: Real> Residual<T> {
    pub fn relative(&self) -> T {
        self.residual.abs() / self.accelerated
    }

    /// `|residual| ≤ error`.
    pub fn consistent_with_zero(&self) -> bool {
        self.residual.abs() <= self.error
    }
}

pub fn residual_signal<T: Real>(q: T, a: T, k_perp: T, cfg: &QuadratureConfig<T>) -> Result<Residual<T>> {
    let accelerated = total_rate_accelerated(q, a, k_perp)?;
    let inertial = inertial_bremsstrahlung_density(q, a, k_perp, cfg)?;
    // the closed form carries the Bessel tolerance
    let closed_error = T::lit(2.0) * crate::specfun::default_tolerance::<T>() * accelerated;
    Ok(Residual {
        k_perp,
        accelerated,
        inertial: inertial.density,
        residual: accelerated - inertial.density,
        error: inertial.error + closed_error,
    })
}

/// The residual between the two closed forms, which are the same
/// expression and cancel exactly.
pub fn residual_closed_form<T: Real>(q: T, a: T, k_perp: T) -> Result<T> {
    Ok(total_rate_accelerated(q, a, k_perp)? - inertial_rate_closed_form(q, a, k_perp)?)
}

/// Rate densities tabulated over a transverse-momentum grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateSpectrum<T> {
    pub frame: Frame,
    pub q: T,
    pub a: T,
    pub k_perp: Vec<T>,
    pub density: Vec<T>,
    pub error: Vec<T>,
}

impl<T: Real> RateSpectrum<T> {
    fn empty(frame: Frame, q: T, a: T) -> Self {
        Self {
            frame,
            q,
            a,
            k_perp: Vec::new(),
            density: Vec::new(),
            error: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.k_perp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k_perp.is_empty()
    }

    pub fn k_perp_over_a(&self) -> Vec<T> {
        self.k_perp.iter().map(|k| *k / self.a).collect()
    }
}

/// Both spectra and the residual table over one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSweep<T> {
    pub accelerated: RateSpectrum<T>,
    pub inertial: RateSpectrum<T>,
    pub residuals: Vec<Residual<T>>,
    /// Set when repeated grid points were dropped.
    pub deduplicated: bool,
}

/// Evaluates both frames on a sorted grid of transverse momenta. Points are
/// computed in parallel; the output order follows the grid.
pub fn spectrum_sweep<T: Real>(q: T, a: T, grid: &[T], cfg: &QuadratureConfig<T>) -> Result<SpectrumSweep<T>> {
    check_charge(q)?;
    check_acceleration(a)?;
    cfg.validate()?;
    for &k in grid {
        check_kperp(k)?;
    }
    if grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(domain("transverse-momentum grid must be sorted"));
    }
    let mut unique = grid.to_vec();
    unique.dedup();
    let deduplicated = unique.len() != grid.len();

    let residuals = unique
        .par_iter()
        .map(|&k| residual_signal(q, a, k, cfg))
        .collect::<Result<Vec<_>>>()?;

    let mut accelerated = RateSpectrum::empty(Frame::Accelerated, q, a);
    let mut inertial = RateSpectrum::empty(Frame::Inertial, q, a);
    for r in &residuals {
        accelerated.k_perp.push(r.k_perp);
        accelerated.density.push(r.accelerated);
        accelerated
            .error
            .push(T::lit(2.0) * crate::specfun::default_tolerance::<T>() * r.accelerated);
        inertial.k_perp.push(r.k_perp);
        inertial.density.push(r.inertial);
        inertial.error.push(r.error);
    }
    Ok(SpectrumSweep {
        accelerated,
        inertial,
        residuals,
        deduplicated,
    })
}
