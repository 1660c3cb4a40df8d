//! Dense symmetric matrices: Frobenius geometry, a cyclic Jacobi eigensolver
//! and the two canonical cone splits.
//!
//! Every symmetric `A` splits uniquely as `A = Q − P` with `Q, P` positive
//! semidefinite and `QP = 0` (the spectral split), and as `A = M − N` with
//! `M, N` entrywise nonnegative and `M ∘ N = 0` (the entrywise split).

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

/// Hard cap on Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmatError {
    #[error("matrix order must be at least 1")]
    EmptyMatrix,
    #[error("expected {expected} entries for order {n}, got {got}")]
    ShapeMismatch {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: order {left} vs order {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not symmetric: entries ({i},{j}) and ({j},{i}) differ by {relative:e} relative to the largest entry")]
    Asymmetric { i: usize, j: usize, relative: f64 },
    #[error("non-finite entry at ({i},{j})")]
    NonFinite { i: usize, j: usize },
    #[error("angle is undefined for the zero matrix")]
    ZeroMatrix,
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Dense real symmetric matrix of order `n ≥ 1`, stored row-major in full.
///
/// Symmetry is exact: `get(i, j) == get(j, i)` bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix<T = f64> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymmetricMatrix<T> {
    pub fn zeros(n: usize) -> Result<Self, SymmatError> {
        if n == 0 {
            return Err(SymmatError::EmptyMatrix);
        }
        Ok(Self {
            n,
            data: vec![T::zero(); n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self, SymmatError> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        Ok(m)
    }

    pub fn diagonal(diag: &[T]) -> Result<Self, SymmatError> {
        let mut m = Self::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.n + i] = d;
        }
        Ok(m)
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle `i ≤ j`.
    pub fn from_upper_fn(
        n: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Result<Self, SymmatError> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        Ok(m)
    }

    /// Rank-one matrix `u uᵀ`.
    pub fn outer(u: &[T]) -> Result<Self, SymmatError> {
        Self::from_upper_fn(u.len(), |i, j| u[i] * u[j])
    }

    /// Builds from full row-major storage.
    ///
    /// Inputs whose asymmetry exceeds `T::SYMMETRY_TOL` relative to the
    /// largest entry are rejected; smaller asymmetry is removed by `(A + Aᵀ)/2`.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self, SymmatError> {
        if n == 0 {
            return Err(SymmatError::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(SymmatError::ShapeMismatch {
                n,
                expected: n * n,
                got: data.len(),
            });
        }
        let mut scale = T::zero();
        for (idx, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(SymmatError::NonFinite {
                    i: idx / n,
                    j: idx % n,
                });
            }
            scale = scale.max(v.abs());
        }
        let mut data = data;
        let half = T::lit(0.5);
        for i in 0..n {
            for j in (i + 1)..n {
                let (x, y) = (data[i * n + j], data[j * n + i]);
                if x == y {
                    continue;
                }
                let relative = ((x - y).abs() / scale).to_f64_lossy();
                if relative > T::SYMMETRY_TOL {
                    return Err(SymmatError::Asymmetric { i, j, relative });
                }
                let avg = (x + y) * half;
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self, SymmatError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(SymmatError::ShapeMismatch {
                    n,
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(n, data)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Applies `f` entrywise. `f` must not break symmetry (it sees each value, not its position).
    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|v| v * s)
    }

    /// Frobenius norm `sqrt(Σ aᵢⱼ²)`.
    pub fn norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc + v * v)
            .sqrt()
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.data[i * self.n + i])
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Membership in the nonnegative cone, by exact entry signs.
    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= T::zero())
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.data[i * self.n + i].is_zero())
    }

    /// `self / ‖self‖`, or `None` for the zero matrix.
    pub fn normalized(&self) -> Option<Self> {
        let nrm = self.norm();
        if nrm.is_zero() {
            None
        } else {
            Some(self.scale(T::one() / nrm))
        }
    }

    /// Direct sum `self ⊕ 0` with an `extra × extra` zero block.
    pub fn pad(&self, extra: usize) -> Self {
        let m = self.n + extra;
        let mut data = vec![T::zero(); m * m];
        for i in 0..self.n {
            data[i * m..i * m + self.n].copy_from_slice(self.row(i));
        }
        Self { n: m, data }
    }

    /// Matrix product `self · other` as plain row-major storage (not symmetric in general).
    pub fn matmul(&self, other: &[T], cols: usize) -> Vec<T> {
        let n = self.n;
        assert_eq!(other.len(), n * cols);
        let mut out = vec![T::zero(); n * cols];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let src = &other[k * cols..(k + 1) * cols];
                let dst = &mut out[i * cols..(i + 1) * cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        out
    }

    /// Parses the dense text format: a line holding `n`, then `n` lines of
    /// `n` whitespace-separated reals. Blank lines are skipped.
    pub fn parse_dense(text: &str) -> Result<Self, SymmatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, first) = lines.next().ok_or(SymmatError::Parse {
            line: 1,
            message: "missing matrix order".into(),
        })?;
        let n: usize = first.parse().map_err(|_| SymmatError::Parse {
            line: first_no,
            message: format!("invalid matrix order {first:?}"),
        })?;
        if n == 0 {
            return Err(SymmatError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in 0..n {
            let (no, line) = lines.next().ok_or(SymmatError::Parse {
                line: first_no + row + 1,
                message: format!("expected {n} rows, found {row}"),
            })?;
            let before = data.len();
            for tok in line.split_whitespace() {
                let v: T = tok.parse().map_err(|_| SymmatError::Parse {
                    line: no,
                    message: format!("invalid number {tok:?}"),
                })?;
                data.push(v);
            }
            if data.len() - before != n {
                return Err(SymmatError::Parse {
                    line: no,
                    message: format!("expected {n} values, found {}", data.len() - before),
                });
            }
        }
        if let Some((no, _)) = lines.next() {
            return Err(SymmatError::Parse {
                line: no,
                message: "trailing data after matrix".into(),
            });
        }
        Self::from_row_major(n, data)
    }

    /// Writes the dense text format. Values use the shortest representation
    /// that parses back to the same bits.
    pub fn to_dense_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.n);
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    /// Symmetric eigendecomposition with the default tolerance `T::EIG_TOL`.
    pub fn eigh(&self) -> Result<EigenDecomposition<T>, SymmatError> {
        eigh(self, T::lit(T::EIG_TOL))
    }

    /// Default eigenvalue zero band: `T::ZERO_BAND · n · max(1, ‖A‖)`.
    pub fn default_zero_threshold(&self) -> T {
        T::lit(T::ZERO_BAND) * T::usize(self.n) * self.norm().max(T::one())
    }
}

impl<T: Scalar> Add for &SymmetricMatrix<T> {
    type Output = SymmetricMatrix<T>;
    fn add(self, rhs: Self) -> SymmetricMatrix<T> {
        assert_eq!(self.n, rhs.n, "order mismatch");
        SymmetricMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for &SymmetricMatrix<T> {
    type Output = SymmetricMatrix<T>;
    fn sub(self, rhs: Self) -> SymmetricMatrix<T> {
        assert_eq!(self.n, rhs.n, "order mismatch");
        SymmetricMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &SymmetricMatrix<T> {
    type Output = SymmetricMatrix<T>;
    fn neg(self) -> SymmetricMatrix<T> {
        self.map(|v| -v)
    }
}

impl<T: Scalar> Mul<T> for &SymmetricMatrix<T> {
    type Output = SymmetricMatrix<T>;
    fn mul(self, rhs: T) -> SymmetricMatrix<T> {
        self.scale(rhs)
    }
}

fn check_same_order<T>(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>) -> Result<(), SymmatError> {
    if a.n != b.n {
        return Err(SymmatError::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

/// `⟨A, B⟩ = Σᵢⱼ aᵢⱼ bᵢⱼ`, which equals `Tr AB` for symmetric arguments.
pub fn frobenius_inner<T: Scalar>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
) -> Result<T, SymmatError> {
    check_same_order(a, b)?;
    Ok(a.data
        .iter()
        .zip(&b.data)
        .fold(T::zero(), |acc, (&x, &y)| acc + x * y))
}

/// Cosine of the angle between two nonzero matrices, clamped to `[-1, 1]`.
pub fn cosine<T: Scalar>(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>) -> Result<T, SymmatError> {
    let ip = frobenius_inner(a, b)?;
    let (na, nb) = (a.norm(), b.norm());
    if na.is_zero() || nb.is_zero() {
        return Err(SymmatError::ZeroMatrix);
    }
    Ok((ip / (na * nb)).max(-T::one()).min(T::one()))
}

/// Angle in radians, in `[0, π]`.
pub fn angle<T: Scalar>(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>) -> Result<T, SymmatError> {
    Ok(cosine(a, b)?.acos())
}

/// Sign class of an eigenvalue relative to the zero band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    Positive,
    Zero,
    Negative,
}

/// Eigenvalues in non-increasing order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition<T = f64> {
    n: usize,
    eigenvalues: Vec<T>,
    /// Row-major `n × n`; column `j` is the eigenvector of `eigenvalues[j]`.
    vectors: Vec<T>,
    zero_threshold: T,
}

impl<T: Scalar> EigenDecomposition<T> {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Row-major eigenvector matrix `V` (columns are eigenvectors).
    pub fn vectors(&self) -> &[T] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self.vectors[i * self.n + j]).collect()
    }

    pub fn zero_threshold(&self) -> T {
        self.zero_threshold
    }

    pub fn with_zero_threshold(mut self, threshold: T) -> Self {
        self.zero_threshold = threshold;
        self
    }

    pub fn classify(&self, lambda: T) -> SignClass {
        if lambda > self.zero_threshold {
            SignClass::Positive
        } else if lambda < -self.zero_threshold {
            SignClass::Negative
        } else {
            SignClass::Zero
        }
    }

    pub fn positive_count(&self) -> usize {
        self.count(SignClass::Positive)
    }

    pub fn negative_count(&self) -> usize {
        self.count(SignClass::Negative)
    }

    /// Number of eigenvalues outside the zero band.
    pub fn rank(&self) -> usize {
        self.n - self.count(SignClass::Zero)
    }

    fn count(&self, class: SignClass) -> usize {
        self.eigenvalues
            .iter()
            .filter(|&&l| self.classify(l) == class)
            .count()
    }

    /// Sum of `λ²` over eigenvalues in the given class.
    pub fn sum_squares(&self, class: Option<SignClass>) -> T {
        self.eigenvalues
            .iter()
            .filter(|&&l| class.is_none_or(|c| self.classify(l) == c))
            .fold(T::zero(), |acc, &l| acc + l * l)
    }

    /// `Σ w(λⱼ) vⱼ vⱼᵀ` over the eigenpairs for which `weight` returns a value.
    pub fn compose(&self, weight: impl Fn(T, SignClass) -> Option<T>) -> SymmetricMatrix<T> {
        let n = self.n;
        let picked: Vec<(usize, T)> = self
            .eigenvalues
            .iter()
            .enumerate()
            .filter_map(|(j, &l)| weight(l, self.classify(l)).map(|w| (j, w)))
            .collect();
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            for k in i..n {
                let mut acc = T::zero();
                for &(j, w) in &picked {
                    acc += w * self.vectors[i * n + j] * self.vectors[k * n + j];
                }
                out[i * n + k] = acc;
                out[k * n + i] = acc;
            }
        }
        SymmetricMatrix { n, data: out }
    }
}

/// Cyclic-by-row Jacobi eigensolver.
///
/// Converged once the off-diagonal Frobenius norm drops to `tol · max(1, ‖A‖)`.
/// Fails after [`MAX_SWEEPS`] sweeps. The zero threshold of the result is the
/// default band of [`SymmetricMatrix::default_zero_threshold`].
pub fn eigh<T: Scalar>(
    a: &SymmetricMatrix<T>,
    tol: T,
) -> Result<EigenDecomposition<T>, SymmatError> {
    jacobi(a, tol, MAX_SWEEPS)
}

fn jacobi<T: Scalar>(
    a: &SymmetricMatrix<T>,
    tol: T,
    max_sweeps: usize,
) -> Result<EigenDecomposition<T>, SymmatError> {
    if !tol.is_finite() || tol <= T::zero() {
        return Err(SymmatError::InvalidTolerance(tol.to_f64_lossy()));
    }
    let n = a.n;
    let mut m = a.data.clone();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let target = tol * a.norm().max(T::one());
    let two = T::lit(2.0);

    let off_norm = |m: &[T]| {
        let mut s = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                s += m[i * n + j] * m[i * n + j];
            }
        }
        (two * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= target {
            break;
        }
        if sweeps == max_sweeps {
            return Err(SymmatError::NoConvergence {
                sweeps,
                off_norm: off.to_f64_lossy(),
            });
        }
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.is_zero() {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (two * apq);
                let t = if theta.abs() > T::lit(1e150) {
                    T::lit(0.5) / theta
                } else {
                    let sgn = if theta < T::zero() {
                        -T::one()
                    } else {
                        T::one()
                    };
                    sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;

                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m[r * n + p];
                    let arq = m[r * n + q];
                    let new_rp = c * arp - s * arq;
                    let new_rq = s * arp + c * arq;
                    m[r * n + p] = new_rp;
                    m[p * n + r] = new_rp;
                    m[r * n + q] = new_rq;
                    m[q * n + r] = new_rq;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = T::zero();
                m[q * n + p] = T::zero();

                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[j * n + j]
            .partial_cmp(&m[i * n + i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues: Vec<T> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut vectors = vec![T::zero(); n * n];
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + dst] = v[r * n + src];
        }
    }
    Ok(EigenDecomposition {
        n,
        eigenvalues,
        vectors,
        zero_threshold: a.default_zero_threshold(),
    })
}

/// `A = Q − P` with `Q, P` positive semidefinite and `QP = 0`.
#[derive(Debug, Clone)]
pub struct SpectralSplit<T = f64> {
    /// Positive definite part `Q`.
    pub positive: SymmetricMatrix<T>,
    /// Negative definite part `P`.
    pub negative: SymmetricMatrix<T>,
    pub eigen: EigenDecomposition<T>,
}

/// Spectral split. Eigenvalues inside `±zero_tol` (default band when `None`)
/// join neither part.
pub fn spectral_split<T: Scalar>(
    a: &SymmetricMatrix<T>,
    zero_tol: Option<T>,
) -> Result<SpectralSplit<T>, SymmatError> {
    let mut eigen = a.eigh()?;
    if let Some(z) = zero_tol {
        eigen = eigen.with_zero_threshold(z);
    }
    let positive = eigen.compose(|l, c| (c == SignClass::Positive).then_some(l));
    let negative = eigen.compose(|l, c| (c == SignClass::Negative).then_some(-l));
    Ok(SpectralSplit {
        positive,
        negative,
        eigen,
    })
}

/// `A = M − N` with `M = max(A, 0)` and `N = max(−A, 0)` entrywise.
#[derive(Debug, Clone, PartialEq)]
pub struct EntrywiseSplit<T = f64> {
    pub positive: SymmetricMatrix<T>,
    pub negative: SymmetricMatrix<T>,
}

pub fn entrywise_split<T: Scalar>(a: &SymmetricMatrix<T>) -> EntrywiseSplit<T> {
    let zero = T::zero();
    EntrywiseSplit {
        positive: a.map(|v| if v > zero { v } else { zero }),
        negative: a.map(|v| if v < zero { -v } else { zero }),
    }
}
