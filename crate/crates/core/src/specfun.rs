//! Modified Bessel functions of the second kind, `K_ν(x)`, for real,
//! purely imaginary and general complex order.
//!
//! Everything goes through the integral representation
//!
//! ```text
//! K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(ν t) dt,   x > 0,
//! ```
//!
//! which is the exponential map `u = eᵗ` of `½∫₀^∞ u^{ν−1} e^{−x(u+1/u)/2} du`.
//! The integrand is evaluated relative to its maximum so that large orders
//! and small arguments do not overflow, truncated once it has fallen by
//! `e^{−CUTOFF}`, and integrated with adaptive Gauss-Kronrod. For an
//! imaginary part `μ` with `μ·T > 1e3` the range is pre-split into
//! oscillation periods `2π/μ`.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::scalar::Real;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// [`DEFAULT_TOLERANCE`], loosened to `100 ε` for types that cannot reach it.
pub fn default_tolerance<T: Real>() -> T {
    T::lit(DEFAULT_TOLERANCE).max(T::lit(100.0) * T::epsilon())
}
const MAX_TOLERANCE: f64 = 1e-3;
const CUTOFF: f64 = 50.0;
const OSCILLATION_SPLIT: f64 = 1e3;

/// A single evaluation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselRequest<T> {
    pub order: Complex<T>,
    pub x: T,
    pub rel_tol: T,
}

/// Value with the quadrature error estimate (absolute).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselValue<T> {
    pub value: Complex<T>,
    pub error: T,
    /// Truncation point of the integral.
    pub cutoff: T,
}

impl<T: Real> BesselRequest<T> {
    pub fn real(nu: T, x: T) -> Self {
        Self::complex(Complex::new(nu, T::zero()), x)
    }

    /// `K_{iμ}(x)`.
    pub fn imaginary(mu: T, x: T) -> Self {
        Self::complex(Complex::new(T::zero(), mu), x)
    }

    pub fn complex(order: Complex<T>, x: T) -> Self {
        Self {
            order,
            x,
            rel_tol: default_tolerance(),
        }
    }

    pub fn with_tolerance(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn evaluate(&self) -> Result<BesselValue<T>> {
        self.evaluate_with(T::lit(CUTOFF), T::lit(OSCILLATION_SPLIT))
    }

    fn validate(&self) -> Result<()> {
        if !(self.x > T::zero()) || !self.x.is_finite() {
            return Err(domain(format!("Bessel K argument must be positive, got {}", self.x)));
        }
        if !(self.rel_tol > T::zero() && self.rel_tol <= T::lit(MAX_TOLERANCE)) {
            return Err(domain(format!(
                "relative tolerance must lie in (0, 1e-3], got {}",
                self.rel_tol
            )));
        }
        if !self.order.re.is_finite() || !self.order.im.is_finite() {
            return Err(domain("Bessel K order must be finite"));
        }
        Ok(())
    }

    /// `cutoff` is the log-drop of the integrand at which the range ends;
    /// per-period panels are used once `μ·T` exceeds `split_threshold`.
    pub(crate) fn evaluate_with(&self, cutoff: T, split_threshold: T) -> Result<BesselValue<T>> {
        self.validate()?;
        let x = self.x;
        let sigma = self.order.re.abs();
        let mu = self.order.im;
        let two = T::lit(2.0);
        let half = T::lit(0.5);

        // peak of |σ| t − x cosh t
        let t_peak = (sigma / x).asinh();
        let log_peak = sigma * t_peak - x * t_peak.cosh();
        // exponent of exp(±σ t − x cosh t) relative to the peak
        let exponent = move |t: T, sign: T| {
            sign * sigma * t - sigma * t_peak - two * x * (half * (t + t_peak)).sinh() * (half * (t - t_peak)).sinh()
        };

        let mut upper = t_peak + T::one();
        while exponent(upper, T::one()) > -cutoff {
            upper = upper + (upper - t_peak).max(T::one());
        }

        let mut points = vec![T::zero()];
        if t_peak > T::zero() {
            points.push(t_peak);
        }
        points.push(upper);
        if mu != T::zero() && mu.abs() * upper > split_threshold {
            let period = T::TAU() / mu.abs();
            let mut refined = vec![T::zero()];
            let mut t = period;
            while t < upper {
                refined.push(t);
                t += period;
            }
            if t_peak > T::zero() {
                refined.push(t_peak);
            }
            refined.push(upper);
            refined.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
            refined.dedup();
            points = refined;
        }

        let integrand = move |t: T| {
            let plus = exponent(t, T::one()).exp();
            let minus = exponent(t, -T::one()).exp();
            let (s, c) = (mu * t).sin_cos();
            Complex::new(c * half * (plus + minus), s * half * (plus - minus))
        };
        let opts = QuadOptions {
            abs_tol: T::zero(),
            rel_tol: self.rel_tol * T::lit(0.1),
            max_intervals: 4000,
        };
        let est = integrate(integrand, &points, &opts);

        let scale = log_peak.exp();
        if !scale.is_finite() || scale == T::zero() {
            return Err(domain(format!(
                "K_({}+{}i)({}) is outside the floating point range (log magnitude ≈ {})",
                self.order.re, self.order.im, x, log_peak
            )));
        }
        let value = est.value * scale;
        let error = est.error * scale;
        // the 0.1 margin above is a target; only the requested tolerance is binding
        if !(error <= self.rel_tol * value.norm()) {
            return Err(Error::Tolerance {
                estimate: value.norm().as_f64(),
                error: error.as_f64(),
                requested: self.rel_tol.as_f64(),
            });
        }
        Ok(BesselValue {
            value,
            error,
            cutoff: upper,
        })
    }
}

/// `K_ν(x)` for real order at the default tolerance.
pub fn bessel_k<T: Real>(nu: T, x: T) -> Result<T> {
    Ok(BesselRequest::real(nu, x).evaluate()?.value.re)
}

/// `K_{iμ}(x) = ∫₀^∞ e^{−x cosh t} cos(μt) dt`, real-valued.
pub fn bessel_k_imag<T: Real>(mu: T, x: T) -> Result<T> {
    if mu < T::zero() {
        return Err(domain(format!(
            "imaginary order magnitude must be nonnegative, got {mu}"
        )));
    }
    Ok(BesselRequest::imaginary(mu, x).evaluate()?.value.re)
}

/// `K_ν(x)` for complex order `ν = σ + iμ`.
pub fn bessel_k_complex<T: Real>(order: Complex<T>, x: T) -> Result<Complex<T>> {
    Ok(BesselRequest::complex(order, x).evaluate()?.value)
}

/// Least-squares slope of `ln(√x |K_ν(x)|)` over `samples` evenly spaced
/// points of `[x_lo, x_hi]`. The √x removes the algebraic prefactor of the
/// large-argument form `√(π/2x) e^{−x}`, leaving the exponential decay rate.
pub fn log_decay_slope<T: Real>(order: Complex<T>, x_lo: T, x_hi: T, samples: usize) -> Result<T> {
    if samples < 2 || !(x_hi > x_lo) {
        return Err(domain("log-slope needs at least two samples on a nonempty range"));
    }
    let n = T::from_usize(samples).expect("sample count");
    let step = (x_hi - x_lo) / (n - T::one());
    let mut pts = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = x_lo + step * T::from_usize(i).expect("index");
        let k = bessel_k_complex(order, x)?;
        pts.push((x, (x.sqrt() * k.norm()).ln()));
    }
    let mean_x = pts.iter().fold(T::zero(), |s, p| s + p.0) / n;
    let mean_y = pts.iter().fold(T::zero(), |s, p| s + p.1) / n;
    let (num, den) = pts.iter().fold((T::zero(), T::zero()), |(num, den), &(x, y)| {
        (num + (x - mean_x) * (y - mean_y), den + (x - mean_x) * (x - mean_x))
    });
    Ok(num / den)
}
