//! Minkowski and right-wedge Rindler charts.
//!
//! Natural units (c = 1), signature (+,−,−,−). The right Rindler wedge
//! `|t| < z` is covered by
//!
//! ```text
//! z = ζ cosh τ,   t = ζ sinh τ,   ds² = ζ² dτ² − dζ² − dx² − dy²
//! ```
//!
//! `τ` is stored dimensionless; the curve `ζ = 1/a` is the worldline of
//! constant proper acceleration `a` and its proper time is `τ/a`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// An event in inertial coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeEvent<T> {
    pub t: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> SpacetimeEvent<T> {
    pub fn new(t: T, x: T, y: T, z: T) -> Self {
        Self { t, x, y, z }
    }

    /// Event in the (t, z) plane with x = y = 0.
    pub fn tz(t: T, z: T) -> Self {
        Self::new(t, T::zero(), T::zero(), z)
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Squared interval to `other`, `Δt² − Δx² − Δy² − Δz²`.
    pub fn interval_to(&self, other: &Self) -> T {
        let dt = other.t - self.t;
        let dx = other.x - self.x;
        let dy = other.y - self.y;
        let dz = other.z - self.z;
        dt * dt - dx * dx - dy * dy - dz * dz
    }
}

/// An event in the right-wedge Rindler chart (`zeta > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RindlerEvent<T> {
    pub tau: T,
    pub zeta: T,
    pub x: T,
    pub y: T,
}

impl<T: Real> RindlerEvent<T> {
    pub fn new(tau: T, zeta: T, x: T, y: T) -> Result<Self> {
        let e = Self { tau, zeta, x, y };
        e.validate()?;
        Ok(e)
    }

    fn validate(&self) -> Result<()> {
        if !(self.zeta > T::zero()) || !self.zeta.is_finite() {
            return Err(domain(format!(
                "Rindler zeta must be positive and finite, got {}",
                self.zeta
            )));
        }
        if !self.tau.is_finite() || !self.x.is_finite() || !self.y.is_finite() {
            return Err(domain("Rindler event has non-finite components"));
        }
        Ok(())
    }

    /// Line element `ζ²dτ² − dζ² − dx² − dy²` for a small displacement.
    pub fn line_element(&self, d_tau: T, d_zeta: T, dx: T, dy: T) -> T {
        self.zeta * self.zeta * d_tau * d_tau - d_zeta * d_zeta - dx * dx - dy * dy
    }
}

/// The four Rindler wedges and the light-cone boundary separating them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Wedge {
    Right,
    Left,
    FutureCone,
    PastCone,
    Boundary,
}

/// Classifies an event with exact comparison on `|t| = |z|`.
pub fn classify<T: Real>(e: &SpacetimeEvent<T>) -> Wedge {
    classify_with_tolerance(e, T::zero())
}

/// Classifies an event, treating `||t| − |z|| <= tolerance` as the boundary.
pub fn classify_with_tolerance<T: Real>(e: &SpacetimeEvent<T>, tolerance: T) -> Wedge {
    let (t, z) = (e.t, e.z);
    if (t.abs() - z.abs()).abs() <= tolerance {
        Wedge::Boundary
    } else if t.abs() < z {
        Wedge::Right
    } else if t.abs() < -z {
        Wedge::Left
    } else if t > z.abs() {
        Wedge::FutureCone
    } else {
        Wedge::PastCone
    }
}

pub fn to_minkowski<T: Real>(e: &RindlerEvent<T>) -> Result<SpacetimeEvent<T>> {
    e.validate()?;
    Ok(SpacetimeEvent {
        t: e.zeta * e.tau.sinh(),
        x: e.x,
        y: e.y,
        z: e.zeta * e.tau.cosh(),
    })
}

pub fn to_rindler<T: Real>(e: &SpacetimeEvent<T>) -> Result<RindlerEvent<T>> {
    match classify(e) {
        Wedge::Right => {}
        other => return Err(Error::Wedge(other)),
    }
    // (z − t)(z + t) keeps precision near the horizon
    let zeta = ((e.z - e.t) * (e.z + e.t)).sqrt();
    let tau = (e.t / e.z).atanh();
    Ok(RindlerEvent {
        tau,
        zeta,
        x: e.x,
        y: e.y,
    })
}

/// Uniformly accelerated worldline `ζ = 1/a`, `x = y = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Worldline<T> {
    acceleration: T,
}

impl<T: Real> Worldline<T> {
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

    /// Inertial event at proper time `s`.
    pub fn event(&self, s: T) -> SpacetimeEvent<T> {
        let a = self.acceleration;
        let rapidity = a * s;
        SpacetimeEvent::tz(rapidity.sinh() / a, rapidity.cosh() / a)
    }

    /// Rindler event at proper time `s`: `τ = a s`, `ζ = 1/a`.
    pub fn rindler_event(&self, s: T) -> RindlerEvent<T> {
        RindlerEvent {
            tau: self.acceleration * s,
            zeta: self.acceleration.recip(),
            x: T::zero(),
            y: T::zero(),
        }
    }

    pub fn proper_time(&self, tau: T) -> T {
        tau / self.acceleration
    }

    /// Four-velocity `(cosh as, 0, 0, sinh as)`.
    pub fn velocity(&self, s: T) -> [T; 4] {
        let r = self.acceleration * s;
        [r.cosh(), T::zero(), T::zero(), r.sinh()]
    }

    /// Magnitude of the four-acceleration measured by central second
    /// differences of [`Worldline::event`] with step `h`.
    pub fn numerical_acceleration(&self, s: T, h: T) -> T {
        let prev = self.event(s - h);
        let here = self.event(s);
        let next = self.event(s + h);
        let two = T::lit(2.0);
        let at = (next.t - two * here.t + prev.t) / (h * h);
        let az = (next.z - two * here.z + prev.z) / (h * h);
        // spacelike: −(a·a) = az² − at²
        (az * az - at * at).sqrt()
    }
}

pub fn worldline_event<T: Real>(a: T, s: T) -> Result<SpacetimeEvent<T>> {
    Ok(Worldline::new(a)?.event(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_of_worldline() {
        let e = to_minkowski(&RindlerEvent::new(0.0, 1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(e, SpacetimeEvent::tz(0.0, 1.0));
    }

    #[test]
    fn chart_values() {
        let e = to_minkowski(&RindlerEvent::new(1.0, 2.0, 0.0, 0.0).unwrap()).unwrap();
        assert!((e.t - 2.0 * 1f64.sinh()).abs() < 1e-15);
        assert!((e.z - 2.0 * 1f64.cosh()).abs() < 1e-15);
        assert!((e.t - 2.3504).abs() < 1e-4 && (e.z - 3.0862).abs() < 1e-4);

        let r = to_rindler(&SpacetimeEvent::tz(2.3504f64, 3.0862)).unwrap();
        assert!((r.tau - 1.0).abs() < 1e-4 && (r.zeta - 2.0).abs() < 1e-4);
        let r = to_rindler(&SpacetimeEvent::tz(0.0, 1.0)).unwrap();
        assert_eq!((r.tau, r.zeta), (0.0, 1.0));
    }

    #[test]
    fn outside_right_wedge_is_rejected() {
        assert_eq!(
            to_rindler(&SpacetimeEvent::tz(1.0, 0.5)),
            Err(Error::Wedge(Wedge::FutureCone))
        );
        assert!(RindlerEvent::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(RindlerEvent::new(0.0, -1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&SpacetimeEvent::tz(0.0, 1.0)), Wedge::Right);
        assert_eq!(classify(&SpacetimeEvent::tz(0.0, -1.0)), Wedge::Left);
        assert_eq!(classify(&SpacetimeEvent::tz(1.0, 1.0)), Wedge::Boundary);
        assert_eq!(classify(&SpacetimeEvent::tz(2.0, 1.0)), Wedge::FutureCone);
        assert_eq!(classify(&SpacetimeEvent::tz(-2.0, 1.0)), Wedge::PastCone);
        assert_eq!(classify(&SpacetimeEvent::tz(0.0, 0.0)), Wedge::Boundary);
        assert_eq!(
            classify_with_tolerance(&SpacetimeEvent::tz(1.0, 1.0 + 1e-9), 1e-6),
            Wedge::Boundary
        );
    }

    #[test]
    fn worldline_samples() {
        assert!(Worldline::new(0.0).is_err());
        assert!(worldline_event(-1.0, 0.0).is_err());
        assert_eq!(worldline_event(1.0, 0.0).unwrap(), SpacetimeEvent::tz(0.0, 1.0));
        let e = worldline_event(2.0f64, 0.5).unwrap();
        assert!((e.t - 0.5876).abs() < 1e-4 && (e.z - 0.7715).abs() < 1e-4);
        assert_eq!(Worldline::new(2.0).unwrap().proper_time(1.0), 0.5);
    }

    #[test]
    fn single_precision_round_trip() {
        let r = RindlerEvent::new(0.3f32, 1.5, 0.0, 0.0).unwrap();
        let back = to_rindler(&to_minkowski(&r).unwrap()).unwrap();
        assert!((back.tau - 0.3).abs() < 1e-5 && (back.zeta - 1.5).abs() < 1e-5);
    }
}
