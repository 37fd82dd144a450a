//! Adaptive Gauss-Kronrod quadrature and polynomial (Richardson) extrapolation.
//!
//! The integrator is the classic 7/15-point Gauss-Kronrod pair with QUADPACK
//! style error rescaling, bisecting the interval with the largest error until
//! the global tolerance is met. Integrands may be real or complex.

use std::ops::{Add, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Values that can be integrated: real scalars and complex numbers.
pub trait Integrand<T: Real>: Copy + Add<Output = Self> + Sub<Output = Self> + Zero + Send + Sync {
    fn scale(self, w: T) -> Self;
    fn modulus(self) -> T;
    fn is_finite_value(self) -> bool;
}

impl<T: Real> Integrand<T> for T {
    #[inline]
    fn scale(self, w: T) -> Self {
        self * w
    }
    #[inline]
    fn modulus(self) -> T {
        self.abs()
    }
    #[inline]
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl<T: Real> Integrand<T> for Complex<T> {
    #[inline]
    fn scale(self, w: T) -> Self {
        Complex::new(self.re * w, self.im * w)
    }
    #[inline]
    fn modulus(self) -> T {
        self.norm()
    }
    #[inline]
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Options for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::zero(),
            rel_tol: T::lit(1e-10),
            max_intervals: 2000,
        }
    }
}

impl<T: Real> QuadOptions<T> {
    pub fn relative(rel_tol: T) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T, V> {
    pub value: V,
    pub error: T,
    /// Integral of the modulus of the integrand; scale for roundoff.
    pub abs_value: T,
    pub evaluations: usize,
    pub intervals: usize,
    pub converged: bool,
}

impl<T: Real, V: Integrand<T>> Estimate<T, V> {
    /// Turns a non-converged estimate into [`Error::Tolerance`].
    pub fn into_result(self, requested: T) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::Tolerance {
                estimate: self.value.modulus().as_f64(),
                error: self.error.as_f64(),
                requested: requested.as_f64(),
            })
        }
    }
}

struct Segment<T, V> {
    a: T,
    b: T,
    value: V,
    error: T,
    abs_value: T,
}

fn kronrod_segment<T, V, F>(f: &F, a: T, b: T) -> Segment<T, V>
where
    T: Real,
    V: Integrand<T>,
    F: Fn(T) -> V,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let f_center = f(center);

    let mut kronrod = f_center.scale(T::lit(WGK[7]));
    let mut gauss = f_center.scale(T::lit(WG[3]));
    let mut abs_k = f_center.modulus() * T::lit(WGK[7]);

    let mut f1 = [V::zero(); 7];
    let mut f2 = [V::zero(); 7];
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let lo = f(center - dx);
        let hi = f(center + dx);
        f1[j] = lo;
        f2[j] = hi;
        let w = T::lit(WGK[j]);
        kronrod = kronrod + (lo + hi).scale(w);
        abs_k += w * (lo.modulus() + hi.modulus());
        if j % 2 == 1 {
            gauss = gauss + (lo + hi).scale(T::lit(WG[j / 2]));
        }
    }

    let mean = kronrod.scale(half);
    let mut asc = T::lit(WGK[7]) * (f_center - mean).modulus();
    for j in 0..7 {
        asc += T::lit(WGK[j]) * ((f1[j] - mean).modulus() + (f2[j] - mean).modulus());
    }

    let h = half_len.abs();
    let value = kronrod.scale(half_len);
    let abs_value = abs_k * h;
    let asc = asc * h;
    let mut error = (kronrod - gauss).scale(half_len).modulus();
    if asc != T::zero() && error != T::zero() {
        let scale = (T::lit(200.0) * error / asc).powf(T::lit(1.5));
        error = asc * scale.min(T::one());
    }
    let floor = T::lit(50.0) * T::epsilon() * abs_value;
    if abs_value > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor > error {
        error = floor;
    }
    Segment {
        a,
        b,
        value,
        error,
        abs_value,
    }
}

/// Integrates `f` over the partition given by `points` (at least two,
/// increasing). Interior points seed the subdivision, e.g. at kinks.
///
/// Never fails; check [`Estimate::converged`] or call
/// [`Estimate::into_result`].
pub fn integrate<T, V, F>(f: F, points: &[T], opts: &QuadOptions<T>) -> Estimate<T, V>
where
    T: Real,
    V: Integrand<T>,
    F: Fn(T) -> V,
{
    assert!(points.len() >= 2, "integrate needs at least one interval");
    let mut segments: Vec<Segment<T, V>> = points
        .windows(2)
        .filter(|w| w[1] != w[0])
        .map(|w| kronrod_segment(&f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * segments.len();

    let totals = |segs: &[Segment<T, V>]| {
        segs.iter().fold((V::zero(), T::zero(), T::zero()), |acc, s| {
            (acc.0 + s.value, acc.1 + s.error, acc.2 + s.abs_value)
        })
    };

    loop {
        let (value, error, abs_value) = totals(&segments);
        let tol = opts.abs_tol.max(opts.rel_tol * value.modulus());
        let roundoff = T::lit(50.0) * T::epsilon() * abs_value;
        let done = error <= tol || (error <= roundoff && error > T::zero());
        if !value.is_finite_value() || !error.is_finite() {
            return Estimate {
                value,
                error: T::infinity(),
                abs_value,
                evaluations,
                intervals: segments.len(),
                converged: false,
            };
        }
        if done || segments.len() >= opts.max_intervals || segments.is_empty() {
            return Estimate {
                value,
                error,
                abs_value,
                evaluations,
                intervals: segments.len(),
                converged: done || segments.is_empty(),
            };
        }

        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0usize, T::neg_infinity()), |best, (i, s)| {
                if s.error > best.1 {
                    (i, s.error)
                } else {
                    best
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.a + seg.b);
        let width = (seg.b - seg.a).abs();
        let resolvable = width > T::lit(100.0) * T::epsilon() * (seg.a.abs() + seg.b.abs());
        if !resolvable {
            // cannot bisect further; keep the segment and report what we have
            segments.push(seg);
            let (value, error, abs_value) = totals(&segments);
            return Estimate {
                value,
                error,
                abs_value,
                evaluations,
                intervals: segments.len(),
                converged: error <= tol,
            };
        }
        segments.push(kronrod_segment(&f, seg.a, mid));
        segments.push(kronrod_segment(&f, mid, seg.b));
        evaluations += 30;
    }
}

/// Outcome of a polynomial extrapolation to step zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation<T> {
    pub value: T,
    /// Difference between the full-order extrapolant and the one that drops
    /// the coarsest step.
    pub error: T,
    /// Diagonal of the Neville tableau: extrapolants of increasing order.
    pub diagonal: Vec<T>,
}

/// Extrapolates `values[i] ≈ F(steps[i])` to `F(0)` assuming
/// `F(h) = F(0) + c₁h + c₂h² + …` (Richardson/Neville). Steps must be
/// distinct and nonzero; at least two are required.
pub fn richardson<T: Real>(steps: &[T], values: &[T]) -> Result<Extrapolation<T>> {
    if steps.len() != values.len() || steps.len() < 2 {
        return Err(Error::Domain(
            "extrapolation needs at least two (step, value) pairs".into(),
        ));
    }
    if steps.iter().any(|h| *h == T::zero() || !h.is_finite()) {
        return Err(Error::Domain("extrapolation steps must be finite and nonzero".into()));
    }
    let n = steps.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if steps[i] == steps[j] {
                return Err(Error::Domain("extrapolation steps must be distinct".into()));
            }
        }
    }

    // p[i] holds the extrapolant through points i..=i+level; the diagonal
    // collects the extrapolants through the finest level+1 points.
    let mut p = values.to_vec();
    let mut diagonal = vec![values[n - 1]];
    for level in 1..n {
        for i in 0..(n - level) {
            let hi = steps[i];
            let hj = steps[i + level];
            p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
        }
        diagonal.push(p[n - level - 1]);
    }
    let value = p[0];
    let reduced = neville_at_zero(&steps[1..], &values[1..]);
    Ok(Extrapolation {
        value,
        error: (value - reduced).abs(),
        diagonal,
    })
}

fn neville_at_zero<T: Real>(steps: &[T], values: &[T]) -> T {
    let n = steps.len();
    let mut p = values.to_vec();
    for level in 1..n {
        for i in 0..(n - level) {
            let hi = steps[i];
            let hj = steps[i + level];
            p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
        }
    }
    p[0]
}
