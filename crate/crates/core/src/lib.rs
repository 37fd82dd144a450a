//! Numerical toolkit for quantum fields seen from a uniformly accelerated
//! frame.
//!
//! The crate computes the photon emission and absorption rates of a
//! uniformly accelerated charge in two independent ways (against the Unruh
//! bath in the co-accelerating frame, and as classical Bremsstrahlung in an
//! inertial frame) and shows that their difference vanishes. Supporting
//! modules cover Rindler coordinates, Bessel functions of real, imaginary
//! and complex order, thermal occupation laws, a truncated two-wedge Fock
//! engine and an audit of laser-experiment estimates.
//!
//! All physics runs in natural units `ħ = c = k_B = 1`. The numerical core
//! is generic over [`Real`] (`f32` or `f64`); the `*64` aliases below are
//! what most callers want.

// NaN must fail validation, so `!(x > 0)` is deliberate
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod coordinates;
pub mod error;
pub mod quadrature;
pub mod rates;
pub mod scalar;
pub mod specfun;
pub mod thermal;
pub mod wedge_fock;

pub use audit::{laser_scenario, residual_report, thomson_cross_section, AuditReport, PhysicalConstants};
pub use coordinates::{classify, to_minkowski, to_rindler, worldline_event, Wedge};
pub use error::{Error, Result};
pub use rates::{
    channel_rate_accelerated, inertial_bremsstrahlung_density, residual_signal, spectrum_sweep, total_rate_accelerated,
    Frame, ModeLabel, Polarization,
};
pub use scalar::Real;
pub use specfun::{bessel_k, bessel_k_complex, bessel_k_imag};
pub use thermal::{detailed_balance_limit, mean_occupation, occupation_probability, unruh_temperature};
pub use wedge_fock::{squeezed_vacuum, Branch, LadderOp};

pub type SpacetimeEvent64 = coordinates::SpacetimeEvent<f64>;
pub type RindlerEvent64 = coordinates::RindlerEvent<f64>;
pub type Worldline64 = coordinates::Worldline<f64>;
pub type ThermalBath64 = thermal::ThermalBath<f64>;
pub type QuadratureConfig64 = rates::QuadratureConfig<f64>;
pub type RateSpectrum64 = rates::RateSpectrum<f64>;
pub type SpectrumSweep64 = rates::SpectrumSweep<f64>;
pub type ModeLabel64 = rates::ModeLabel<f64>;
pub type TwoWedgeState64 = wedge_fock::TwoWedgeState<f64>;
pub type Rapidity64 = wedge_fock::Rapidity<f64>;

pub type SpacetimeEvent32 = coordinates::SpacetimeEvent<f32>;
pub type RindlerEvent32 = coordinates::RindlerEvent<f32>;
pub type ThermalBath32 = thermal::ThermalBath<f32>;
pub type QuadratureConfig32 = rates::QuadratureConfig<f32>;
pub type TwoWedgeState32 = wedge_fock::TwoWedgeState<f32>;
