//! Maximal angles from a symmetric matrix to the PSD cone 𝒫ₙ and the
//! nonnegative cone 𝒩ₙ, the alternating critical-pair search between them,
//! lower bounds on γₙ, and the trace-zero SNIEP predicate for n ≤ 5.
//!
//! For `A ∉ 𝒫ₙ` the PSD matrix furthest from `A` is, up to scaling, the
//! negative definite part `P` of `A`, with
//! `cos ∠(A, 𝒫ₙ) = −sqrt(Σ_{λ<0} λ² / Σ λ²)`. Dually, for `A ∉ 𝒩ₙ` the
//! furthest nonnegative matrix is the negative part `N = max(−A, 0)` with
//! `cos ∠(A, 𝒩ₙ) = −sqrt(Σ_{aᵢⱼ<0} aᵢⱼ² / Σ aᵢⱼ²)`.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::prime_power;
use crate::sample;
use crate::scalar::Scalar;
use crate::symmat::{entrywise_split, spectral_split, SignClass, SymmatError, SymmetricMatrix};

/// Default increase threshold for [`critical_pair_search`].
pub const SEARCH_TOL: f64 = 1e-12;
/// Default iteration cap for [`critical_pair_search`].
pub const SEARCH_MAX_ITER: usize = 10_000;
/// Default relative tolerance of [`sniep_realizable`].
pub const SNIEP_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    #[error(transparent)]
    Matrix(#[from] SymmatError),
    #[error(
        "matrix lies in the positive semidefinite cone (smallest eigenvalue {min_eigenvalue:e})"
    )]
    InsidePsdCone { min_eigenvalue: f64 },
    #[error("matrix lies in the nonnegative cone")]
    InsideNonnegativeCone,
    #[error("the zero matrix has no angle")]
    ZeroMatrix,
    #[error("vector needs both a positive and a negative entry")]
    NotMixedSign,
    #[error("starting matrix must be entrywise nonnegative")]
    NegativeStart,
    #[error("degenerate iterate at step {iteration}: {reason}")]
    Degenerate { iteration: usize, reason: String },
    #[error("order must be at least {min}, got {n}")]
    InvalidOrder { n: usize, min: usize },
    #[error("SNIEP predicate takes 2 to 5 eigenvalues, got {0}")]
    SniepLength(usize),
}

/// Maximal angle from a matrix to a cone, with the unique unit-norm cone
/// element attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleResult<T = f64> {
    pub cosine: T,
    pub angle: T,
    pub witness: SymmetricMatrix<T>,
}

impl<T: Scalar> AngleResult<T> {
    fn from_cosine(cosine: T, witness: SymmetricMatrix<T>) -> Self {
        let cosine = cosine.max(-T::one()).min(T::one());
        Self {
            cosine,
            angle: cosine.acos(),
            witness,
        }
    }

    /// Angle as a multiple of π.
    pub fn angle_over_pi(&self) -> T {
        self.angle / T::PI()
    }
}

/// `∠(A, 𝒫ₙ)` with the normalized negative definite part of `A` as witness.
///
/// Rejects matrices inside 𝒫ₙ (no eigenvalue below the zero band).
pub fn max_angle_psd<T: Scalar>(a: &SymmetricMatrix<T>) -> Result<AngleResult<T>, ConeError> {
    if a.is_zero() {
        return Err(ConeError::ZeroMatrix);
    }
    let split = spectral_split(a, None)?;
    let eig = &split.eigen;
    if eig.negative_count() == 0 {
        let min_eigenvalue = eig.eigenvalues().last().map_or(0.0, |l| l.to_f64_lossy());
        return Err(ConeError::InsidePsdCone { min_eigenvalue });
    }
    let neg = eig.sum_squares(Some(SignClass::Negative));
    let all = eig.sum_squares(None);
    let witness = split.negative.normalized().ok_or(ConeError::ZeroMatrix)?;
    Ok(AngleResult::from_cosine(-(neg / all).sqrt(), witness))
}

/// `∠(A, 𝒩ₙ)` with the normalized negative part of `A` as witness.
pub fn max_angle_nonneg<T: Scalar>(a: &SymmetricMatrix<T>) -> Result<AngleResult<T>, ConeError> {
    if a.is_zero() {
        return Err(ConeError::ZeroMatrix);
    }
    if a.is_nonnegative() {
        return Err(ConeError::InsideNonnegativeCone);
    }
    let mut neg = T::zero();
    let mut all = T::zero();
    for &v in a.as_slice() {
        all += v * v;
        if v < T::zero() {
            neg += v * v;
        }
    }
    let witness = entrywise_split(a)
        .negative
        .normalized()
        .ok_or(ConeError::ZeroMatrix)?;
    Ok(AngleResult::from_cosine(-(neg / all).sqrt(), witness))
}

/// `∠(u uᵀ, 𝒩ₙ)` in closed form: `cos = −√2 ‖v‖‖w‖ / (‖v‖² + ‖w‖²)` where
/// `v` and `w` collect the positive and the negated negative entries of `u`.
pub fn rank1_angle<T: Scalar>(u: &[T]) -> Result<AngleResult<T>, ConeError> {
    let (mut v2, mut w2) = (T::zero(), T::zero());
    for &x in u {
        if x > T::zero() {
            v2 += x * x;
        } else if x < T::zero() {
            w2 += x * x;
        }
    }
    if v2.is_zero() || w2.is_zero() {
        return Err(ConeError::NotMixedSign);
    }
    let cosine = -T::SQRT_2() * v2.sqrt() * w2.sqrt() / (v2 + w2);
    let outer = SymmetricMatrix::outer(u)?;
    let witness = entrywise_split(&outer)
        .negative
        .normalized()
        .ok_or(ConeError::ZeroMatrix)?;
    Ok(AngleResult::from_cosine(cosine, witness))
}

/// History of an alternating best-response search between 𝒩ₙ and 𝒫ₙ.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPairTrace<T = f64> {
    /// Angle after every half step: `∠(N₀,P₀), ∠(P₀,N₁), ∠(N₁,P₁), …`.
    pub iterates: Vec<T>,
    pub final_n: SymmetricMatrix<T>,
    pub final_p: SymmetricMatrix<T>,
    /// `true` when the search stopped because a full step gained less than the tolerance.
    pub converged: bool,
}

impl<T: Scalar> CriticalPairTrace<T> {
    /// Angle between the final pair.
    pub fn angle(&self) -> T {
        *self
            .iterates
            .last()
            .expect("trace has at least one iterate")
    }

    /// Completed full steps.
    pub fn steps(&self) -> usize {
        self.iterates.len() / 2
    }
}

/// Alternates `Pₖ = (negative definite part of Nₖ)` and
/// `Nₖ₊₁ = (negative part of Pₖ)`, both normalized. Each response maximizes
/// the angle to the other matrix, so the recorded angles never decrease.
///
/// Stops when a full step gains less than `tol`, or after `max_iter` steps.
pub fn critical_pair_search<T: Scalar>(
    n0: &SymmetricMatrix<T>,
    tol: T,
    max_iter: usize,
) -> Result<CriticalPairTrace<T>, ConeError> {
    if !n0.is_nonnegative() {
        return Err(ConeError::NegativeStart);
    }
    let mut current_n = n0.normalized().ok_or(ConeError::ZeroMatrix)?;
    let mut iterates = Vec::with_capacity(2 * max_iter.min(1024));
    let mut last_full: Option<T> = None;
    let mut converged = false;
    let mut final_p = None;

    for iteration in 0..max_iter.max(1) {
        let p = match max_angle_psd(&current_n) {
            Ok(r) => r,
            Err(ConeError::InsidePsdCone { .. }) => {
                return Err(ConeError::Degenerate {
                    iteration,
                    reason: "nonnegative iterate is positive semidefinite".into(),
                })
            }
            Err(e) => return Err(e),
        };
        iterates.push(p.angle);
        let n_next = match max_angle_nonneg(&p.witness) {
            Ok(r) => r,
            Err(ConeError::InsideNonnegativeCone) => {
                return Err(ConeError::Degenerate {
                    iteration,
                    reason: "semidefinite iterate is entrywise nonnegative".into(),
                })
            }
            Err(e) => return Err(e),
        };
        iterates.push(n_next.angle);
        current_n = n_next.witness;
        final_p = Some(p.witness);

        let previous = last_full.unwrap_or(p.angle);
        last_full = Some(n_next.angle);
        if n_next.angle - previous < tol {
            converged = true;
            break;
        }
    }

    Ok(CriticalPairTrace {
        iterates,
        final_n: current_n,
        final_p: final_p.expect("at least one step ran"),
        converged,
    })
}

/// One restart of [`multistart_search`].
#[derive(Debug, Clone)]
pub struct RestartOutcome<T = f64> {
    pub index: usize,
    /// Generator seed used for the start (`None` for a supplied warm start).
    pub seed: Option<u64>,
    pub result: Result<CriticalPairTrace<T>, ConeError>,
}

#[derive(Debug, Clone)]
pub struct MultistartResult<T = f64> {
    pub outcomes: Vec<RestartOutcome<T>>,
    /// Index of the restart with the largest final angle (lowest index on ties).
    pub best: Option<usize>,
}

impl<T: Scalar> MultistartResult<T> {
    pub fn best_trace(&self) -> Option<&CriticalPairTrace<T>> {
        self.best
            .and_then(|i| self.outcomes[i].result.as_ref().ok())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultistartConfig {
    pub n: usize,
    pub seed: u64,
    pub restarts: usize,
    pub tol: f64,
    pub max_iter: usize,
}

/// Runs [`critical_pair_search`] from `restarts` random zero-diagonal
/// nonnegative starts. Restart `i` draws its start from seed `seed + i`;
/// when `warm_start` is given it replaces restart 0. Restarts run in
/// parallel and the result is identical to a serial run.
pub fn multistart_search<T: Scalar>(
    config: &MultistartConfig,
    warm_start: Option<&SymmetricMatrix<T>>,
) -> Result<MultistartResult<T>, ConeError> {
    if config.n < 2 {
        return Err(ConeError::InvalidOrder {
            n: config.n,
            min: 2,
        });
    }
    if let Some(w) = warm_start {
        if w.order() != config.n {
            return Err(SymmatError::DimensionMismatch {
                left: w.order(),
                right: config.n,
            }
            .into());
        }
    }
    let tol = T::lit(config.tol);
    let outcomes: Vec<RestartOutcome<T>> = (0..config.restarts)
        .into_par_iter()
        .map(|index| {
            let (start, seed) = match (index, warm_start) {
                (0, Some(w)) => (w.clone(), None),
                _ => {
                    let seed = config.seed.wrapping_add(index as u64);
                    let mut rng = sample::rng_for(seed, 0);
                    (
                        sample::zero_diagonal_nonnegative(config.n, &mut rng),
                        Some(seed),
                    )
                }
            };
            RestartOutcome {
                index,
                seed,
                result: critical_pair_search(&start, tol, config.max_iter),
            }
        })
        .collect();

    let mut best: Option<(usize, T)> = None;
    for o in &outcomes {
        if let Ok(trace) = &o.result {
            let a = trace.angle();
            if best.is_none_or(|(_, b)| a > b) {
                best = Some((o.index, a));
            }
        }
    }
    Ok(MultistartResult {
        outcomes,
        best: best.map(|(i, _)| i),
    })
}

/// Construction behind a lower bound on γₙ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSource {
    /// γₙ = 3π/4 exactly for 2 ≤ n ≤ 4.
    SmallOrder,
    /// Pentagon adjacency matrix, n ≥ 5.
    Pentagon,
    /// Bipartite adjacency matrices (3π/4 at every order).
    Bipartite,
    /// Collinearity graph of GQ(q, q) (3π/4).
    SymplecticQuadrangle { q: u64 },
    /// Collinearity graph of GQ(q, q²).
    EllipticQuadrangle { q: u64 },
}

impl fmt::Display for GammaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaSource::SmallOrder => write!(f, "exact-n<=4"),
            GammaSource::Pentagon => write!(f, "C5"),
            GammaSource::Bipartite => write!(f, "bipartite"),
            GammaSource::SymplecticQuadrangle { q } => write!(f, "GQ({q},{q})"),
            GammaSource::EllipticQuadrangle { q } => write!(f, "GQ({q},{q}^2)"),
        }
    }
}

/// A lower bound on γₙ.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaBound<T = f64> {
    pub n: usize,
    pub cosine: T,
    pub angle: T,
    /// `cos²` as an exact fraction, when it is rational.
    pub exact_cosine_sq: Option<Ratio<i64>>,
    pub source: GammaSource,
}

/// Order of the GQ(q, q²) collinearity graph: `(q + 1)(q³ + 1)`.
pub fn elliptic_order(q: u64) -> u128 {
    let q = q as u128;
    (q + 1) * (q * q * q + 1)
}

/// Best known lower bound on γₙ among the built-in constructions.
///
/// Non-decreasing in `n` because padding with a zero row and column
/// preserves angles.
pub fn gamma_lower_bound<T: Scalar>(n: usize) -> Result<GammaBound<T>, ConeError> {
    if n < 2 {
        return Err(ConeError::InvalidOrder { n, min: 2 });
    }
    let half = Ratio::new(1, 2);
    if n <= 4 {
        let cosine = -T::FRAC_1_SQRT_2();
        return Ok(GammaBound {
            n,
            cosine,
            angle: T::lit(0.75) * T::PI(),
            exact_cosine_sq: Some(half),
            source: GammaSource::SmallOrder,
        });
    }
    let mut best_q = None;
    let mut q = 2u64;
    while elliptic_order(q) <= n as u128 {
        if prime_power(q).is_some() {
            best_q = Some(q);
        }
        q += 1;
    }
    Ok(match best_q {
        Some(q) => {
            let qq = q as i64;
            let cosine = -(T::lit((q * q + 1) as f64)).sqrt() / T::lit((q + 1) as f64);
            GammaBound {
                n,
                cosine,
                angle: cosine.acos(),
                exact_cosine_sq: Some(Ratio::new(qq * qq + 1, (qq + 1) * (qq + 1))),
                source: GammaSource::EllipticQuadrangle { q },
            }
        }
        None => {
            let cosine = -(T::one() + T::one() / T::lit(5.0).sqrt()) / T::lit(2.0);
            GammaBound {
                n,
                cosine,
                angle: cosine.acos(),
                exact_cosine_sq: None,
                source: GammaSource::Pentagon,
            }
        }
    })
}

/// Conditions of the trace-zero symmetric nonnegative inverse eigenvalue problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SniepCondition {
    /// `λ₁ ≥ λ₂ ≥ … ≥ λₙ`.
    NonIncreasing,
    /// `λ₁ > 0`.
    PerronPositive,
    /// `λₙ ≥ −λ₁`.
    LowestAboveMinusPerron,
    /// `Σ λᵢ = 0`.
    TraceZero,
    /// `λ₂ + λ₅ ≤ 0` (n = 5).
    SecondPlusFifth,
    /// `Σ λᵢ³ ≥ 0` (n = 5).
    CubeSum,
}

impl fmt::Display for SniepCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SniepCondition::NonIncreasing => "non_increasing",
            SniepCondition::PerronPositive => "lambda1_positive",
            SniepCondition::LowestAboveMinusPerron => "lambda_n_ge_minus_lambda1",
            SniepCondition::TraceZero => "trace_zero",
            SniepCondition::SecondPlusFifth => "lambda2_plus_lambda5_nonpos",
            SniepCondition::CubeSum => "cube_sum_nonneg",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SniepCheck {
    pub condition: SniepCondition,
    pub holds: bool,
    /// The evaluated quantity (`λ₁`, `λₙ + λ₁`, `Σλ`, `λ₂ + λ₅`, `Σλ³`, or
    /// the largest ascent for the ordering check).
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SniepVerdict {
    pub realizable: bool,
    pub checks: Vec<SniepCheck>,
}

impl SniepVerdict {
    pub fn failures(&self) -> impl Iterator<Item = &SniepCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Whether `eigs` can be the spectrum of a symmetric nonnegative matrix with
/// zero diagonal, for 2 ≤ n ≤ 5.
///
/// Inequalities are evaluated with slack `tol · s` (`tol · s³` for the cube
/// sum), where `s = max |λᵢ|`. `λ₁ > 0` is strict.
pub fn sniep_realizable<T: Scalar>(eigs: &[T], tol: T) -> Result<SniepVerdict, ConeError> {
    let n = eigs.len();
    if !(2..=5).contains(&n) {
        return Err(ConeError::SniepLength(n));
    }
    let s = eigs.iter().fold(T::zero(), |m, l| m.max(l.abs()));
    let slack = tol * s;
    let mut checks = Vec::new();
    let mut push = |condition, holds, value: T| {
        checks.push(SniepCheck {
            condition,
            holds,
            value: value.to_f64_lossy(),
        })
    };

    let ascent = eigs.windows(2).fold(T::zero(), |m, w| m.max(w[1] - w[0]));
    push(SniepCondition::NonIncreasing, ascent <= slack, ascent);
    let l1 = eigs[0];
    push(SniepCondition::PerronPositive, l1 > T::zero(), l1);
    let low = eigs[n - 1] + l1;
    push(SniepCondition::LowestAboveMinusPerron, low >= -slack, low);
    let trace = eigs.iter().fold(T::zero(), |a, &l| a + l);
    push(SniepCondition::TraceZero, trace.abs() <= slack, trace);
    if n == 5 {
        let pair = eigs[1] + eigs[4];
        push(SniepCondition::SecondPlusFifth, pair <= slack, pair);
        let cubes = eigs.iter().fold(T::zero(), |a, &l| a + l * l * l);
        push(SniepCondition::CubeSum, cubes >= -tol * s * s * s, cubes);
    }
    Ok(SniepVerdict {
        realizable: checks.iter().all(|c| c.holds),
        checks,
    })
}
