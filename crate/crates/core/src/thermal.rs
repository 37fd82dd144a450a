//! Statistics of the Unruh bath seen by a uniformly accelerated observer.
//!
//! Natural units (ħ = c = k_B = 1). A bath at proper acceleration `a` has
//! inverse temperature `β = 2π/a`; a mode of Rindler energy `ω` holds `n`
//! quanta with probability `(1 − e^{−βω}) e^{−βnω}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::specfun;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalBath<T> {
    acceleration: T,
}

impl<T: Real> ThermalBath<T> {
    pub fn new(acceleration: T) -> Result<Self> {
        if !(acceleration > T::zero()) || !acceleration.is_finite() {
            return Err(domain(format!(
                "proper acceleration must be positive, got {acceleration}"
            )));
        }
        Ok(Self { acceleration })
    }

    pub fn acceleration(&self) -> T {
        self.acceleration
    }

    pub fn beta(&self) -> T {
        T::TAU() / self.acceleration
    }

    pub fn temperature(&self) -> T {
        self.acceleration / T::TAU()
    }

    /// Occupation law of a mode with Rindler energy `omega`.
    pub fn occupation(&self, omega: T) -> Result<OccupationLaw<T>> {
        OccupationLaw::new(omega, *self)
    }
}

pub fn unruh_temperature<T: Real>(a: T) -> Result<T> {
    Ok(ThermalBath::new(a)?.temperature())
}

/// Geometric occupation law `p_n = Z⁻¹ e^{−βnω}` of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationLaw<T> {
    omega: T,
    beta_omega: T,
}

impl<T: Real> OccupationLaw<T> {
    pub fn new(omega: T, bath: ThermalBath<T>) -> Result<Self> {
        if !(omega > T::zero()) || !omega.is_finite() {
            return Err(domain(format!(
                "Rindler energy must be positive, got {omega}; use detailed_balance_limit for ω → 0"
            )));
        }
        Ok(Self {
            omega,
            beta_omega: bath.beta() * omega,
        })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    /// `e^{−βω}`, the ratio `p_{n+1}/p_n`.
    pub fn boltzmann_factor(&self) -> T {
        (-self.beta_omega).exp()
    }

    /// `Z = (1 − e^{−βω})⁻¹`.
    pub fn partition(&self) -> T {
        -(-self.beta_omega).exp_m1().recip()
    }

    pub fn probability(&self, n: u64) -> T {
        let ground = -(-self.beta_omega).exp_m1();
        let n = T::from_u64(n).expect("occupation number");
        ground * (-self.beta_omega * n).exp()
    }

    /// `p_0 … p_{n_max}`.
    pub fn probabilities(&self, n_max: u64) -> Vec<T> {
        (0..=n_max).map(|n| self.probability(n)).collect()
    }

    /// `n̄ = 1/(e^{βω} − 1)`.
    pub fn mean(&self) -> T {
        self.beta_omega.exp_m1().recip()
    }

    /// Probability mass above `n_max`: `e^{−βω(n_max+1)}`.
    pub fn tail(&self, n_max: u64) -> T {
        let n = T::from_u64(n_max + 1).expect("occupation number");
        (-self.beta_omega * n).exp()
    }
}

pub fn occupation_probability<T: Real>(n: u64, omega: T, bath: &ThermalBath<T>) -> Result<T> {
    Ok(OccupationLaw::new(omega, *bath)?.probability(n))
}

pub fn mean_occupation<T: Real>(omega: T, bath: &ThermalBath<T>) -> Result<T> {
    Ok(OccupationLaw::new(omega, *bath)?.mean())
}

/// Induced-emission enhancement: emitting into a mode holding `n` quanta is
/// `n + 1` times as likely as emitting into the empty mode.
pub fn stimulated_weight<T: Real>(n: u64) -> T {
    T::from_u64(n).expect("occupation number") + T::one()
}

/// Regulator ladder for [`detailed_balance_limit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetailedBalanceConfig<T> {
    /// Largest regulator energy; `None` means `0.1/β`.
    pub initial_energy: Option<T>,
    /// Number of halvings evaluated, including the first point.
    pub levels: usize,
    /// Relative tolerance on the extrapolation error.
    pub tolerance: T,
}

impl<T: Real> Default for DetailedBalanceConfig<T> {
    fn default() -> Self {
        Self {
            initial_energy: None,
            levels: 6,
            tolerance: T::lit(1e-6),
        }
    }
}

/// Thermally averaged emission and absorption densities in the zero-energy
/// limit, with the regulator ladder that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailedBalance<T> {
    pub emission: T,
    pub absorption: T,
    pub emission_error: T,
    pub absorption_error: T,
    /// `(E, (n̄+1)g, n̄g)` per ladder rung.
    pub ladder: Vec<(T, T, T)>,
}

impl<T: Real> DetailedBalance<T> {
    pub fn total(&self) -> T {
        self.emission + self.absorption
    }
}

/// Removes a zero-energy regulator from a spontaneous emission density
/// `g(E)`. Emission is weighted by `n̄(E) + 1`, absorption by `n̄(E)`; both
/// are evaluated on `E₀, E₀/2, E₀/4, …` and extrapolated to `E → 0`. When
/// `g` vanishes at zero the two limits agree.
pub fn detailed_balance_limit<T, G>(
    g: G,
    bath: &ThermalBath<T>,
    config: &DetailedBalanceConfig<T>,
) -> Result<DetailedBalance<T>>
where
    T: Real,
    G: Fn(T) -> T,
{
    if config.levels < 2 {
        return Err(domain("detailed balance needs at least two regulator levels"));
    }
    if !(config.tolerance > T::zero()) {
        return Err(domain("detailed balance tolerance must be positive"));
    }
    let beta = bath.beta();
    let e0 = config.initial_energy.unwrap_or(T::lit(0.1) / beta);
    if !(e0 > T::zero()) || !e0.is_finite() {
        return Err(domain(format!("initial regulator energy must be positive, got {e0}")));
    }

    let mut ladder = Vec::with_capacity(config.levels);
    let mut energy = e0;
    for _ in 0..config.levels {
        let spontaneous = g(energy);
        if !spontaneous.is_finite() || spontaneous < T::zero() {
            return Err(domain(format!(
                "regulator density must be finite and nonnegative, got g({energy}) = {spontaneous}"
            )));
        }
        let nbar = (beta * energy).exp_m1().recip();
        ladder.push((energy, (nbar + T::one()) * spontaneous, nbar * spontaneous));
        energy *= T::lit(0.5);
    }

    let steps: Vec<T> = ladder.iter().map(|r| r.0).collect();
    let limit = |values: Vec<T>, channel: &str| -> Result<(T, T)> {
        let ex = crate::quadrature::richardson(&steps, &values)?;
        let scale = ex.value.abs().max(T::min_positive_value());
        if !ex.value.is_finite() || ex.error > config.tolerance * scale {
            return Err(Error::Extrapolation {
                message: format!(
                    "{channel} limit: extrapolant {} with error {} exceeds tolerance {}",
                    ex.value, ex.error, config.tolerance
                ),
                sequence: values.iter().map(|v| v.as_f64()).collect(),
            });
        }
        Ok((ex.value, ex.error))
    };
    let (emission, emission_error) = limit(ladder.iter().map(|r| r.1).collect(), "emission")?;
    let (absorption, absorption_error) = limit(ladder.iter().map(|r| r.2).collect(), "absorption")?;
    Ok(DetailedBalance {
        emission,
        absorption,
        emission_error,
        absorption_error,
        ladder,
    })
}

/// Order-of-magnitude suppression `e^{−m/a}` of a massive fermion bath near
/// the worldline `ζ = 1/a`.
pub fn fermion_suppression<T: Real>(m: T, a: T) -> Result<T> {
    if !(a > T::zero()) || !a.is_finite() {
        return Err(domain(format!("proper acceleration must be positive, got {a}")));
    }
    if m < T::zero() || !m.is_finite() {
        return Err(domain(format!("mass must be nonnegative, got {m}")));
    }
    Ok((-m / a).exp())
}

/// Cross-check of [`fermion_suppression`] against the measured decay of the
/// Dirac radial profile `|K_{1/2 + i m/a}(x)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuppressionDiagnostic<T> {
    pub estimate: T,
    /// Least-squares slope of `ln(√x |K|)` over `window`.
    pub measured_log_slope: T,
    pub window: (T, T),
    /// `|slope + 1| ≤ 0.2`: the profile decays like `e^{−x}`.
    pub consistent: bool,
}

/// Measures the exponential decay rate of `|K_{1/2 + iμ}(x)|`, `μ = m/a`,
/// over `x ∈ [x₀, x₀ + 20]` with `x₀ = max(5, 2μ)` (past the turning point
/// where the profile becomes evanescent).
pub fn fermion_suppression_diagnostic<T: Real>(m: T, a: T) -> Result<SuppressionDiagnostic<T>> {
    let estimate = fermion_suppression(m, a)?;
    let mu = m / a;
    let x0 = T::lit(5.0).max(T::lit(2.0) * mu);
    let x1 = x0 + T::lit(20.0);
    let slope = specfun::log_decay_slope(Complex::new(T::lit(0.5), mu), x0, x1, 21)?;
    Ok(SuppressionDiagnostic {
        estimate,
        measured_log_slope: slope,
        window: (x0, x1),
        consistent: (slope + T::one()).abs() <= T::lit(0.2),
    })
}
