//! Truncated Fock space of one Rindler mode pair on the right and left
//! wedges.
//!
//! Units `a = 1`. A state is a dense amplitude table over `|n_R, n_L⟩` with
//! `0 ≤ n_R, n_L ≤ N`. The operators that annihilate the Minkowski vacuum are
//!
//! ```text
//! b_{+ω} = (e^{πω/2} a_R − e^{−πω/2} a_L†) / √(2 sinh πω)
//! b_{−ω} = (e^{πω/2} a_L − e^{−πω/2} a_R†) / √(2 sinh πω)
//! ```
//!
//! and the Minkowski vacuum itself is the two-mode squeezed state with
//! amplitudes `∝ e^{−πωn}` on `|n, n⟩`.
//!
//! Raising an occupation past `N` drops that component; the dropped norm is
//! accumulated in [`TwoWedgeState::truncation_loss`] rather than treated as
//! an error.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Real;

/// Largest supported cutoff.
pub const MAX_CUTOFF: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// A single creation or annihilation operator of the mode pair.
///
/// Written `R`, `R+`, `L`, `L+` (annihilate / create on the right or left
/// wedge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderOp {
    pub side: Side,
    pub kind: LadderKind,
}

impl LadderOp {
    pub const A_R: Self = Self::new(Side::Right, LadderKind::Annihilate);
    pub const A_R_DAG: Self = Self::new(Side::Right, LadderKind::Create);
    pub const A_L: Self = Self::new(Side::Left, LadderKind::Annihilate);
    pub const A_L_DAG: Self = Self::new(Side::Left, LadderKind::Create);

    pub const fn new(side: Side, kind: LadderKind) -> Self {
        Self { side, kind }
    }

    /// Parses a product such as `"R+ L"`. The rightmost factor acts first.
    pub fn parse_string(s: &str) -> Result<Vec<Self>> {
        let ops = s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>()?;
        if ops.is_empty() {
            return Err(domain("empty ladder-operator string"));
        }
        Ok(ops)
    }
}

impl FromStr for LadderOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(Self::A_R),
            "R+" => Ok(Self::A_R_DAG),
            "L" => Ok(Self::A_L),
            "L+" => Ok(Self::A_L_DAG),
            other => Err(domain(format!(
                "unknown ladder operator {other:?} (expected R, R+, L or L+)"
            ))),
        }
    }
}

impl fmt::Display for LadderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Right => "R",
            Side::Left => "L",
        };
        let dag = match self.kind {
            LadderKind::Create => "+",
            LadderKind::Annihilate => "",
        };
        write!(f, "{side}{dag}")
    }
}

/// Probes reported by default: number operators and the pair operators.
pub const STANDARD_PROBES: [(&str, &str); 6] = [
    ("N_R", "R+ R"),
    ("N_L", "L+ L"),
    ("a_R a_R", "R R"),
    ("a_R a_L", "R L"),
    ("a_L a_L", "L L"),
    ("a_R+ a_L+", "R+ L+"),
];

/// Amplitudes over `|n_R, n_L⟩` for one mode pair of Rindler energy `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoWedgeState<T> {
    omega: T,
    cutoff: usize,
    /// Row-major in `n_R`.
    amps: Vec<Complex<T>>,
    norm: T,
    truncation_loss: T,
}

fn check_mode<T: Real>(omega: T, cutoff: usize) -> Result<()> {
    if !(omega > T::zero()) || !omega.is_finite() {
        return Err(domain(format!("Rindler energy must be positive, got {omega}")));
    }
    if !(1..=MAX_CUTOFF).contains(&cutoff) {
        return Err(domain(format!("cutoff must lie in 1..={MAX_CUTOFF}, got {cutoff}")));
    }
    Ok(())
}

impl<T: Real> TwoWedgeState<T> {
    fn from_parts(omega: T, cutoff: usize, amps: Vec<Complex<T>>, truncation_loss: T) -> Self {
        let norm = amps.iter().fold(T::zero(), |s, c| s + c.norm_sqr()).sqrt();
        Self {
            omega,
            cutoff,
            amps,
            norm,
            truncation_loss,
        }
    }

    /// The zero state.
    pub fn zero(omega: T, cutoff: usize) -> Result<Self> {
        check_mode(omega, cutoff)?;
        let dim = (cutoff + 1) * (cutoff + 1);
        Ok(Self::from_parts(
            omega,
            cutoff,
            vec![Complex::new(T::zero(), T::zero()); dim],
            T::zero(),
        ))
    }

    /// The number state `|n_R, n_L⟩`.
    pub fn basis(omega: T, cutoff: usize, n_r: usize, n_l: usize) -> Result<Self> {
        let mut s = Self::zero(omega, cutoff)?;
        if n_r > cutoff || n_l > cutoff {
            return Err(Error::Truncation(format!(
                "|{n_r}, {n_l}⟩ lies beyond the cutoff {cutoff}"
            )));
        }
        let i = s.index(n_r, n_l);
        s.amps[i] = Complex::new(T::one(), T::zero());
        s.norm = T::one();
        Ok(s)
    }

    /// The Rindler vacuum `|0, 0⟩`.
    pub fn rindler_vacuum(omega: T, cutoff: usize) -> Result<Self> {
        Self::basis(omega, cutoff, 0, 0)
    }

    /// Builds a state from `amplitude(n_R, n_L)`.
    pub fn from_fn(omega: T, cutoff: usize, amplitude: impl Fn(usize, usize) -> Complex<T>) -> Result<Self> {
        check_mode(omega, cutoff)?;
        let mut amps = Vec::with_capacity((cutoff + 1) * (cutoff + 1));
        for n_r in 0..=cutoff {
            for n_l in 0..=cutoff {
                amps.push(amplitude(n_r, n_l));
            }
        }
        Ok(Self::from_parts(omega, cutoff, amps, T::zero()))
    }

    fn index(&self, n_r: usize, n_l: usize) -> usize {
        n_r * (self.cutoff + 1) + n_l
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitude(&self, n_r: usize, n_l: usize) -> Complex<T> {
        if n_r > self.cutoff || n_l > self.cutoff {
            Complex::new(T::zero(), T::zero())
        } else {
            self.amps[self.index(n_r, n_l)]
        }
    }

    pub fn norm(&self) -> T {
        self.norm
    }

    /// Squared norm dropped by raising occupations past the cutoff, summed
    /// over the operations that produced this state.
    pub fn truncation_loss(&self) -> T {
        self.truncation_loss
    }

    /// `e^{−2πωN}`, the weight of the squeezed-vacuum tail beyond the cutoff.
    pub fn truncation_bound(&self) -> T {
        let n = T::from_usize(self.cutoff).expect("cutoff");
        (-T::TAU() * self.omega * n).exp()
    }

    pub fn normalized(&self) -> Result<Self> {
        if !(self.norm > T::zero()) {
            return Err(domain("cannot normalize the zero state"));
        }
        Ok(self.scaled(Complex::new(self.norm.recip(), T::zero())))
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        let amps = self.amps.iter().map(|a| *a * c).collect();
        Self::from_parts(self.omega, self.cutoff, amps, self.truncation_loss * c.norm_sqr())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.cutoff != other.cutoff || self.omega != other.omega {
            return Err(domain("states belong to different modes or cutoffs"));
        }
        Ok(())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: Complex<T>, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let amps = self.amps.iter().zip(&other.amps).map(|(a, b)| *a + *b * c).collect();
        Ok(Self::from_parts(
            self.omega,
            self.cutoff,
            amps,
            self.truncation_loss + other.truncation_loss * c.norm_sqr(),
        ))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_compatible(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * *b))
    }

    /// Largest `|amplitude|` with `n_R ≠ n_L`.
    pub fn max_off_diagonal(&self) -> T {
        let mut m = T::zero();
        for n_r in 0..=self.cutoff {
            for n_l in 0..=self.cutoff {
                if n_r != n_l {
                    m = m.max(self.amplitude(n_r, n_l).norm());
                }
            }
        }
        m
    }
}

/// Minkowski vacuum of the mode pair: `c_n ∝ e^{−πωn}` on `|n, n⟩`,
/// normalized within the cutoff.
pub fn squeezed_vacuum<T: Real>(omega: T, cutoff: usize) -> Result<TwoWedgeState<T>> {
    check_mode(omega, cutoff)?;
    let r = (-T::PI() * omega).exp();
    let state = TwoWedgeState::from_fn(omega, cutoff, |n_r, n_l| {
        if n_r == n_l {
            Complex::new(r.powi(n_r as i32), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })?;
    state.normalized()
}

/// [`squeezed_vacuum`], rejecting cutoffs whose discarded tail
/// `e^{−2πω(N+1)}` exceeds `tolerance`.
pub fn squeezed_vacuum_within<T: Real>(omega: T, cutoff: usize, tolerance: T) -> Result<TwoWedgeState<T>> {
    check_mode(omega, cutoff)?;
    let tail = (-T::TAU() * omega * T::from_usize(cutoff + 1).expect("cutoff")).exp();
    if tail > tolerance {
        return Err(Error::Truncation(format!(
            "cutoff {cutoff} discards weight {tail} at ω = {omega}, above the tolerance {tolerance}"
        )));
    }
    squeezed_vacuum(omega, cutoff)
}

/// Standard bosonic action of one ladder operator.
pub fn apply_ladder<T: Real>(state: &TwoWedgeState<T>, op: LadderOp) -> TwoWedgeState<T> {
    let n_max = state.cutoff;
    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; state.amps.len()];
    let mut lost = T::zero();
    let sqrt = |n: usize| T::from_usize(n).expect("occupation").sqrt();
    for n_r in 0..=n_max {
        for n_l in 0..=n_max {
            let c = state.amplitude(n_r, n_l);
            if c == zero {
                continue;
            }
            let n = match op.side {
                Side::Right => n_r,
                Side::Left => n_l,
            };
            let target = match op.kind {
                LadderKind::Annihilate if n == 0 => continue,
                LadderKind::Annihilate => n - 1,
                LadderKind::Create => n + 1,
            };
            let factor = sqrt(n.max(target));
            if target > n_max {
                lost += (c * factor).norm_sqr();
                continue;
            }
            let (tr, tl) = match op.side {
                Side::Right => (target, n_l),
                Side::Left => (n_r, target),
            };
            amps[state.index(tr, tl)] = c * factor;
        }
    }
    TwoWedgeState::from_parts(state.omega, n_max, amps, state.truncation_loss + lost)
}

/// Applies a product of ladder operators, rightmost first.
pub fn apply_string<T: Real>(state: &TwoWedgeState<T>, ops: &[LadderOp]) -> TwoWedgeState<T> {
    ops.iter().rev().fold(state.clone(), |s, op| apply_ladder(&s, *op))
}

/// The `±ω` member of the Minkowski-vacuum-annihilating pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Positive,
    Negative,
}

/// `(e^{πω/2}, e^{−πω/2}) / √(2 sinh πω)`.
fn bogoliubov_weights<T: Real>(omega: T) -> (T, T) {
    let half = T::lit(0.5) * T::PI() * omega;
    let norm = (T::lit(2.0) * (T::PI() * omega).sinh()).sqrt();
    (half.exp() / norm, (-half).exp() / norm)
}

fn combine<T: Real>(state: &TwoWedgeState<T>, terms: &[(T, LadderOp)]) -> TwoWedgeState<T> {
    let mut out = TwoWedgeState::zero(state.omega, state.cutoff).expect("validated mode");
    for (c, op) in terms {
        let piece = apply_ladder(state, *op);
        out = out.add_scaled(Complex::new(*c, T::zero()), &piece).expect("same mode");
    }
    out
}

/// `b_{±ω}` applied to `state`.
pub fn b_operator<T: Real>(state: &TwoWedgeState<T>, branch: Branch) -> TwoWedgeState<T> {
    let (up, down) = bogoliubov_weights(state.omega);
    let terms = match branch {
        Branch::Positive => [(up, LadderOp::A_R), (-down, LadderOp::A_L_DAG)],
        Branch::Negative => [(up, LadderOp::A_L), (-down, LadderOp::A_R_DAG)],
    };
    combine(state, &terms)
}

/// `b†_{±ω}` applied to `state`.
pub fn b_dagger<T: Real>(state: &TwoWedgeState<T>, branch: Branch) -> TwoWedgeState<T> {
    let (up, down) = bogoliubov_weights(state.omega);
    let terms = match branch {
        Branch::Positive => [(up, LadderOp::A_R_DAG), (-down, LadderOp::A_L)],
        Branch::Negative => [(up, LadderOp::A_L_DAG), (-down, LadderOp::A_R)],
    };
    combine(state, &terms)
}

/// Kinematics of a Minkowski particle of mass `m`: `ω_k = √(k_z² + k⊥² + m²)`
/// and rapidity `q = atanh(k_z/ω_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rapidity<T> {
    pub mass: T,
    pub kz: T,
    pub k_perp: T,
    pub omega_k: T,
    pub q: T,
}

impl<T: Real> Rapidity<T> {
    pub fn new(mass: T, kz: T, k_perp: T) -> Result<Self> {
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(domain(format!("mass must be positive, got {mass}")));
        }
        if !kz.is_finite() || !k_perp.is_finite() {
            return Err(domain("momenta must be finite"));
        }
        let omega_k = (kz * kz + k_perp * k_perp + mass * mass).sqrt();
        Ok(Self {
            mass,
            kz,
            k_perp,
            omega_k,
            q: (kz / omega_k).atanh(),
        })
    }

    /// `1/√(2π m cosh q)`.
    pub fn prefactor(&self) -> T {
        (T::TAU() * self.mass * self.q.cosh()).sqrt().recip()
    }

    /// Phase `2ωq` of the `b†_{+ω}` branch relative to `b†_{−ω}`.
    pub fn branch_phase(&self, omega: T) -> T {
        T::lit(2.0) * omega * self.q
    }
}

/// Quadrature nodes `(ω, weight)` for the Rindler-energy integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaGrid<T> {
    pub nodes: Vec<(T, T)>,
}

impl<T: Real> OmegaGrid<T> {
    pub fn single(omega: T) -> Self {
        Self {
            nodes: vec![(omega, T::one())],
        }
    }
}

/// Coefficients of `â^{M†}` restricted to one Rindler energy, expressed on
/// the four wedge operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourTerm<T> {
    pub a_r_dag: Complex<T>,
    pub a_l: Complex<T>,
    pub a_l_dag: Complex<T>,
    pub a_r: Complex<T>,
}

impl<T: Real> FourTerm<T> {
    pub fn terms(&self) -> [(Complex<T>, LadderOp); 4] {
        [
            (self.a_r_dag, LadderOp::A_R_DAG),
            (self.a_l, LadderOp::A_L),
            (self.a_l_dag, LadderOp::A_L_DAG),
            (self.a_r, LadderOp::A_R),
        ]
    }

    /// `Σ cᵢ Oᵢ |state⟩`.
    pub fn apply(&self, state: &TwoWedgeState<T>) -> TwoWedgeState<T> {
        let mut out = TwoWedgeState::zero(state.omega, state.cutoff).expect("validated mode");
        for (c, op) in self.terms() {
            out = out.add_scaled(c, &apply_ladder(state, op)).expect("same mode");
        }
        out
    }
}

/// Composes `w·(e^{−iωq} b†_{−ω} + e^{iωq} b†_{ω})/√(2πm cosh q)` with the
/// definitions of `b†_{±ω}`.
pub fn four_term_decomposition<T: Real>(rap: &Rapidity<T>, omega: T, weight: T) -> FourTerm<T> {
    let (up, down) = bogoliubov_weights(omega);
    let c = weight * rap.prefactor();
    let plus = Complex::from_polar(c, omega * rap.q);
    let minus = Complex::from_polar(c, -omega * rap.q);
    FourTerm {
        a_r_dag: plus * up,
        a_l: -plus * down,
        a_l_dag: minus * up,
        a_r: -minus * down,
    }
}

/// Applies the grid-discretized Minkowski creation operator. The engine
/// holds one mode pair, so every node must sit at the state's `ω`; weights
/// of repeated nodes add.
pub fn minkowski_creation<T: Real>(
    state: &TwoWedgeState<T>,
    rap: &Rapidity<T>,
    grid: &OmegaGrid<T>,
) -> Result<TwoWedgeState<T>> {
    if grid.nodes.is_empty() {
        return Err(domain("Rindler-energy grid is empty"));
    }
    let omega = state.omega;
    if let Some((w, _)) = grid.nodes.iter().find(|(w, _)| *w != omega) {
        return Err(domain(format!(
            "grid node ω = {w} differs from the mode ω = {omega}; the engine holds a single mode pair"
        )));
    }
    let weight = grid.nodes.iter().fold(T::zero(), |s, (_, w)| s + *w);
    let c = rap.prefactor() * weight;
    let plus = b_dagger(state, Branch::Positive);
    let minus = b_dagger(state, Branch::Negative);
    plus.scaled(Complex::from_polar(c, omega * rap.q))
        .add_scaled(Complex::from_polar(c, -omega * rap.q), &minus)
}

/// Right-wedge reduced density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedDensity<T> {
    /// `ρ[n][n']`.
    pub matrix: Vec<Vec<Complex<T>>>,
    pub diagonal: Vec<T>,
    pub purity: T,
    pub mean: T,
    /// Set when the input was not normalized and was rescaled.
    pub renormalized: bool,
}

impl<T: Real> ReducedDensity<T> {
    /// Largest `|ρ[n][n']|` with `n ≠ n'`.
    pub fn max_off_diagonal(&self) -> T {
        let mut m = T::zero();
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    m = m.max(v.norm());
                }
            }
        }
        m
    }
}

/// Traces out the left wedge.
pub fn reduced_right_density<T: Real>(state: &TwoWedgeState<T>) -> Result<ReducedDensity<T>> {
    let norm_sqr = state.norm * state.norm;
    if !(norm_sqr > T::zero()) {
        return Err(domain("cannot reduce the zero state"));
    }
    let renormalized = (norm_sqr - T::one()).abs() > T::lit(1e-12);
    let n = state.cutoff;
    let zero = Complex::new(T::zero(), T::zero());
    let mut matrix = vec![vec![zero; n + 1]; n + 1];
    for (i, row) in matrix.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let s = (0..=n).fold(zero, |s, m| s + state.amplitude(i, m) * state.amplitude(j, m).conj());
            *entry = s / norm_sqr;
        }
    }
    let diagonal: Vec<T> = (0..=n).map(|i| matrix[i][i].re).collect();
    let purity = matrix
        .iter()
        .flat_map(|row| row.iter())
        .fold(T::zero(), |s, v| s + v.norm_sqr());
    let mean = diagonal
        .iter()
        .enumerate()
        .fold(T::zero(), |s, (i, p)| s + T::from_usize(i).expect("occupation") * *p);
    Ok(ReducedDensity {
        matrix,
        diagonal,
        purity,
        mean,
        renormalized,
    })
}

/// `⟨ψ|O|ψ⟩/⟨ψ|ψ⟩` for each ladder string `O` (rightmost factor acts first).
/// A probe that pushes an occupation past the cutoff is rejected.
pub fn pair_correlator<T: Real>(state: &TwoWedgeState<T>, probes: &[Vec<LadderOp>]) -> Result<Vec<Complex<T>>> {
    let norm_sqr = state.norm * state.norm;
    if !(norm_sqr > T::zero()) {
        return Err(domain("cannot take expectation values in the zero state"));
    }
    probes
        .iter()
        .map(|ops| {
            let image = apply_string(state, ops);
            if image.truncation_loss > state.truncation_loss {
                let label = ops.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                return Err(Error::Truncation(format!(
                    "probe {label:?} leaves the cutoff {} (dropped weight {})",
                    state.cutoff,
                    image.truncation_loss - state.truncation_loss
                )));
            }
            Ok(state.inner(&image)? / norm_sqr)
        })
        .collect()
}
