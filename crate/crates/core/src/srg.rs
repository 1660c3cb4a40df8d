//! Strongly regular graphs: parameter feasibility, closed-form spectra, the
//! angle between an SRG adjacency matrix and its negative definite part, and
//! exact verification of adjacency matrices.
//!
//! A connected SRG `(n, k, a, c)` has eigenvalues `k` (once),
//! `θ = ((a−c) + √Δ)/2` and `τ = ((a−c) − √Δ)/2` with `Δ = (a−c)² + 4(k−c)`,
//! and `cos ∠(A, 𝒫ₙ) = −sqrt(m_τ τ² / (n k))`.

use std::fmt;
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::symmat::SymmetricMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrgError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("not regular: vertex {vertex} has degree {degree}, vertex 0 has degree {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error(
        "{0}-regular graph on {1} vertices is complete or empty; SRG parameters are undefined"
    )]
    Trivial(usize, usize),
    #[error("vertices {u} and {v} ({}) have {common} common neighbours, expected {expected}", if *.adjacent { "adjacent" } else { "non-adjacent" })]
    IdentityViolated {
        u: usize,
        v: usize,
        adjacent: bool,
        common: usize,
        expected: usize,
    },
    #[error("infeasible parameters: {0}")]
    Infeasible(FeasibilityIssue),
    #[error("c = 0: disconnected graphs are outside the spectral formulas")]
    Disconnected,
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("invalid size for {name}: {reason}")]
    InvalidSize { name: String, reason: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Parameter quadruple `(n, k, a, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub a: u64,
    pub c: u64,
}

impl SrgParams {
    pub const fn new(n: u64, k: u64, a: u64, c: u64) -> Self {
        Self { n, k, a, c }
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.a, self.c)
    }
}

/// Reason a parameter quadruple fails [`srg_feasible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityIssue {
    /// Violates `0 < k < n`, `a < k` or `c ≤ k`.
    Bounds(&'static str),
    Disconnected,
    /// `(n − k − 1) c ≠ k (k − a − 1)`.
    CountingIdentity {
        lhs: i128,
        rhs: i128,
    },
    /// A multiplicity is not an integer.
    NonIntegralMultiplicity,
    /// A multiplicity is zero or negative.
    NonPositiveMultiplicity,
}

impl fmt::Display for FeasibilityIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeasibilityIssue::Bounds(b) => write!(f, "bound violated: {b}"),
            FeasibilityIssue::Disconnected => write!(f, "c = 0 (disconnected)"),
            FeasibilityIssue::CountingIdentity { lhs, rhs } => {
                write!(f, "(n-k-1)c = {lhs} differs from k(k-a-1) = {rhs}")
            }
            FeasibilityIssue::NonIntegralMultiplicity => {
                write!(f, "eigenvalue multiplicities are not integers")
            }
            FeasibilityIssue::NonPositiveMultiplicity => {
                write!(f, "an eigenvalue multiplicity is not positive")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub issues: Vec<FeasibilityIssue>,
}

fn isqrt(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    Some(r)
}

/// `(m_θ, m_τ, Δ, integral (θ, τ))`.
type Multiplicities = (u64, u64, i128, Option<(i64, i64)>);

/// Exact multiplicities `(m_θ, m_τ)` in integer arithmetic, or the issue that
/// prevents them. Assumes `c ≥ 1`.
fn multiplicities(p: &SrgParams) -> Result<Multiplicities, FeasibilityIssue> {
    let (n, k, a, c) = (p.n as i128, p.k as i128, p.a as i128, p.c as i128);
    let delta = (a - c) * (a - c) + 4 * (k - c);
    let b = 2 * k + (n - 1) * (a - c);
    let (m_theta, m_tau, integral) = match isqrt(delta) {
        Some(d) if d * d == delta && d > 0 => {
            // m = ((n−1) ∓ b/√Δ)/2 = ((n−1)d ∓ b) / (2d)
            let num_theta = (n - 1) * d - b;
            let num_tau = (n - 1) * d + b;
            if num_theta % (2 * d) != 0 || num_tau % (2 * d) != 0 {
                return Err(FeasibilityIssue::NonIntegralMultiplicity);
            }
            let theta = (a - c + d) / 2;
            let tau = (a - c - d) / 2;
            (
                num_theta / (2 * d),
                num_tau / (2 * d),
                Some((theta as i64, tau as i64)),
            )
        }
        _ => {
            // √Δ irrational: integral multiplicities force b = 0 and n odd.
            if b != 0 || (n - 1) % 2 != 0 {
                return Err(FeasibilityIssue::NonIntegralMultiplicity);
            }
            ((n - 1) / 2, (n - 1) / 2, None)
        }
    };
    if m_theta <= 0 || m_tau <= 0 {
        return Err(FeasibilityIssue::NonPositiveMultiplicity);
    }
    Ok((m_theta as u64, m_tau as u64, delta, integral))
}

/// Necessary conditions on `(n, k, a, c)`: basic bounds, connectedness,
/// `(n−k−1)c = k(k−a−1)`, and positive integral eigenvalue multiplicities.
pub fn srg_feasible(p: &SrgParams) -> Feasibility {
    let mut issues = Vec::new();
    if !(p.k > 0 && p.k < p.n) {
        issues.push(FeasibilityIssue::Bounds("0 < k < n"));
    }
    if p.a >= p.k {
        issues.push(FeasibilityIssue::Bounds("a < k"));
    }
    if p.c > p.k {
        issues.push(FeasibilityIssue::Bounds("c <= k"));
    }
    if p.c == 0 {
        issues.push(FeasibilityIssue::Disconnected);
    }
    let (n, k, a, c) = (p.n as i128, p.k as i128, p.a as i128, p.c as i128);
    let lhs = (n - k - 1) * c;
    let rhs = k * (k - a - 1);
    if lhs != rhs {
        issues.push(FeasibilityIssue::CountingIdentity { lhs, rhs });
    }
    if issues.is_empty() {
        if let Err(issue) = multiplicities(p) {
            issues.push(issue);
        }
    }
    Feasibility {
        feasible: issues.is_empty(),
        issues,
    }
}

/// Spectrum of a connected SRG.
#[derive(Debug, Clone, PartialEq)]
pub struct SrgSpectrum<T = f64> {
    pub params: SrgParams,
    pub k: u64,
    pub theta: T,
    pub m_theta: u64,
    pub tau: T,
    pub m_tau: u64,
    /// `Δ = (a − c)² + 4(k − c)`.
    pub discriminant: i128,
    /// `(θ, τ)` when `Δ` is a perfect square (then both are integers).
    pub integral: Option<(i64, i64)>,
}

impl<T: Scalar> SrgSpectrum<T> {
    /// `(eigenvalue, multiplicity)` in decreasing order.
    pub fn eigenvalues(&self) -> [(T, u64); 3] {
        [
            (T::lit(self.k as f64), 1),
            (self.theta, self.m_theta),
            (self.tau, self.m_tau),
        ]
    }
}

pub fn srg_spectrum<T: Scalar>(p: &SrgParams) -> Result<SrgSpectrum<T>, SrgError> {
    let feas = srg_feasible(p);
    if let Some(issue) = feas.issues.into_iter().next() {
        return Err(match issue {
            FeasibilityIssue::Disconnected => SrgError::Disconnected,
            other => SrgError::Infeasible(other),
        });
    }
    let (m_theta, m_tau, delta, integral) = multiplicities(p).map_err(SrgError::Infeasible)?;
    let (theta, tau) = match integral {
        Some((th, ta)) => (T::lit(th as f64), T::lit(ta as f64)),
        None => {
            let amc = T::lit(p.a as f64 - p.c as f64);
            let sd = T::lit(delta as f64).sqrt();
            let half = T::lit(0.5);
            ((amc + sd) * half, (amc - sd) * half)
        }
    };
    Ok(SrgSpectrum {
        params: *p,
        k: p.k,
        theta,
        m_theta,
        tau,
        m_tau,
        discriminant: delta,
        integral,
    })
}

/// Angle between an SRG adjacency matrix and its negative definite part.
#[derive(Debug, Clone, PartialEq)]
pub struct SrgAngle<T = f64> {
    pub cosine: T,
    pub angle: T,
    /// `m_τ τ² / (n k)` exactly, when `τ` is an integer.
    pub exact_cosine_sq: Option<Ratio<i64>>,
}

/// `cos = −sqrt(m_τ τ² / (n k))`.
pub fn srg_angle<T: Scalar>(p: &SrgParams) -> Result<SrgAngle<T>, SrgError> {
    let s: SrgSpectrum<T> = srg_spectrum(p)?;
    let nk = T::lit(p.n as f64) * T::lit(p.k as f64);
    let cosine = -(T::lit(s.m_tau as f64) * s.tau * s.tau / nk).sqrt();
    let exact_cosine_sq = s.integral.map(|(_, tau)| {
        let num = s.m_tau as i64 * tau * tau;
        Ratio::new(num, (p.n * p.k) as i64)
    });
    Ok(SrgAngle {
        cosine,
        angle: cosine.acos(),
        exact_cosine_sq,
    })
}

/// Simple undirected graph with bit-packed adjacency rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn new(n: usize) -> Result<Self, SrgError> {
        if n == 0 {
            return Err(SrgError::EmptyGraph);
        }
        let words = n.div_ceil(64);
        Ok(Self {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    /// Builds from an edge list; rejects loops, duplicates and out-of-range vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, SrgError> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(SrgError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(SrgError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(SrgError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds from precomputed rows; `rows[u]` must hold `div_ceil(n, 64)` words.
    pub(crate) fn from_row_words(n: usize, rows: Vec<Vec<u64>>) -> Self {
        let words = n.div_ceil(64);
        let mut bits = Vec::with_capacity(n * words);
        for r in rows {
            debug_assert_eq!(r.len(), words);
            bits.extend(r);
        }
        Self { n, words, bits }
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Number of common neighbours of `u` and `v`, i.e. the `(u, v)` entry of `A²`.
    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.neighbors(u)
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn adjacency_matrix<T: Scalar>(&self) -> SymmetricMatrix<T> {
        SymmetricMatrix::from_upper_fn(self.n, |i, j| {
            if self.has_edge(i, j) {
                T::one()
            } else {
                T::zero()
            }
        })
        .expect("graph has at least one vertex")
    }

    /// Parses the edge-list format: `n m` on the first line, then `m` lines `i j`.
    pub fn parse_edge_list(text: &str) -> Result<Self, SrgError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (no, header) = lines.next().ok_or(SrgError::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let nums = parse_usizes(header, no)?;
        let [n, m] = nums[..] else {
            return Err(SrgError::Parse {
                line: no,
                message: "header must be \"n m\"".into(),
            });
        };
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (no, line) = lines.next().ok_or(SrgError::Parse {
                line: no + edges.len() + 1,
                message: format!("expected {m} edges, found {}", edges.len()),
            })?;
            let nums = parse_usizes(line, no)?;
            let [i, j] = nums[..] else {
                return Err(SrgError::Parse {
                    line: no,
                    message: "edge must be \"i j\"".into(),
                });
            };
            edges.push((i, j));
        }
        if let Some((no, _)) = lines.next() {
            return Err(SrgError::Parse {
                line: no,
                message: "more edges than declared".into(),
            });
        }
        Self::from_edges(n, &edges)
    }

    pub fn to_edge_list_string(&self) -> String {
        let edges = self.edges();
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, edges.len());
        for (i, j) in edges {
            let _ = writeln!(s, "{i} {j}");
        }
        s
    }
}

fn parse_usizes(line: &str, no: usize) -> Result<Vec<usize>, SrgError> {
    line.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| SrgError::Parse {
                line: no,
                message: format!("invalid integer {t:?}"),
            })
        })
        .collect()
}

/// Certifies that `g` is strongly regular by checking
/// `A² = kI + aA + c(J − I − A)` entrywise with bitset popcounts.
pub fn verify_srg(g: &Graph) -> Result<SrgParams, SrgError> {
    let n = g.order();
    let k = g.degree(0);
    if let Some((vertex, degree)) = (1..n).map(|v| (v, g.degree(v))).find(|&(_, d)| d != k) {
        return Err(SrgError::NotRegular {
            vertex,
            degree,
            expected: k,
        });
    }
    if k == 0 || k == n - 1 {
        return Err(SrgError::Trivial(k, n));
    }
    let first_adjacent = g.neighbors(0).next().expect("k > 0");
    let a = g.common_neighbors(0, first_adjacent);
    let first_non_adjacent = (1..n).find(|&v| !g.has_edge(0, v)).expect("k < n - 1");
    let c = g.common_neighbors(0, first_non_adjacent);

    let violation = (0..n).into_par_iter().find_map_first(|u| {
        ((u + 1)..n).find_map(|v| {
            let adjacent = g.has_edge(u, v);
            let expected = if adjacent { a } else { c };
            let common = g.common_neighbors(u, v);
            (common != expected).then_some(SrgError::IdentityViolated {
                u,
                v,
                adjacent,
                common,
                expected,
            })
        })
    });
    match violation {
        Some(e) => Err(e),
        None => Ok(SrgParams::new(n as u64, k as u64, a as u64, c as u64)),
    }
}

/// Named small graphs. `param` is the part size for `K_mm` and the length for `cycle`.
///
/// | name | vertices | ordering |
/// |------|----------|----------|
/// | `C5` | 5 | `i ~ i±1 mod 5` |
/// | `petersen` | 10 | outer 5-cycle `0..5`, spokes `i ~ i+5`, inner pentagram `5+i ~ 5+(i+2)%5` |
/// | `K_mm` | 2m | parts `0..m` and `m..2m` |
/// | `cycle` | n | `i ~ i±1 mod n` |
/// | `matching4` | 4 | edges `0-1`, `2-3` |
pub fn build_named(name: &str, param: Option<usize>) -> Result<Graph, SrgError> {
    let size_err = |reason: &str| SrgError::InvalidSize {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    match name.to_ascii_lowercase().as_str() {
        "c5" | "pentagon" => cycle(5),
        "petersen" => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edges(10, &edges)
        }
        "k_mm" | "kmm" => {
            let m = param.ok_or_else(|| size_err("part size m required"))?;
            if m == 0 {
                return Err(size_err("m must be at least 1"));
            }
            let edges: Vec<_> = (0..m)
                .flat_map(|i| (m..2 * m).map(move |j| (i, j)))
                .collect();
            Graph::from_edges(2 * m, &edges)
        }
        "cycle" => {
            let n = param.ok_or_else(|| size_err("cycle length required"))?;
            if n < 3 {
                return Err(size_err("cycle length must be at least 3"));
            }
            cycle(n)
        }
        "matching4" => Graph::from_edges(4, &[(0, 1), (2, 3)]),
        _ => Err(SrgError::UnknownName(name.to_string())),
    }
}

fn cycle(n: usize) -> Result<Graph, SrgError> {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_spectrum() {
        let s: SrgSpectrum = srg_spectrum(&SrgParams::new(5, 2, 0, 1)).unwrap();
        let r5 = 5f64.sqrt();
        assert!((s.theta - (-1.0 + r5) / 2.0).abs() < 1e-15);
        assert!((s.tau - (-1.0 - r5) / 2.0).abs() < 1e-15);
        assert_eq!((s.m_theta, s.m_tau), (2, 2));
        assert_eq!(s.integral, None);
        assert_eq!(s.discriminant, 5);
    }

    #[test]
    fn integral_spectra() {
        let s: SrgSpectrum = srg_spectrum(&SrgParams::new(10, 3, 0, 1)).unwrap();
        assert_eq!(s.integral, Some((1, -2)));
        assert_eq!((s.m_theta, s.m_tau), (5, 4));

        let s: SrgSpectrum = srg_spectrum(&SrgParams::new(27, 10, 1, 5)).unwrap();
        assert_eq!(s.integral, Some((1, -5)));
        assert_eq!((s.m_theta, s.m_tau), (20, 6));
    }

    #[test]
    fn spectrum_errors() {
        assert_eq!(
            srg_spectrum::<f64>(&SrgParams::new(6, 2, 1, 0)),
            Err(SrgError::Disconnected)
        );
        assert!(matches!(
            srg_spectrum::<f64>(&SrgParams::new(6, 3, 0, 1)),
            Err(SrgError::Infeasible(
                FeasibilityIssue::CountingIdentity { .. }
            ))
        ));
        // (n-k-1)c = k(k-a-1) holds for (7,3,0,2) but the multiplicities are not integral
        assert_eq!(
            srg_spectrum::<f64>(&SrgParams::new(7, 3, 0, 2)),
            Err(SrgError::Infeasible(
                FeasibilityIssue::NonIntegralMultiplicity
            ))
        );
    }

    #[test]
    fn feasibility_examples() {
        assert!(srg_feasible(&SrgParams::new(5, 2, 0, 1)).feasible);
        assert!(srg_feasible(&SrgParams::new(10, 3, 0, 1)).feasible);
        let f = srg_feasible(&SrgParams::new(6, 3, 0, 1));
        assert!(!f.feasible);
        assert_eq!(
            f.issues,
            vec![FeasibilityIssue::CountingIdentity { lhs: 2, rhs: 6 }]
        );
        let f = srg_feasible(&SrgParams::new(4, 4, 4, 5));
        assert!(f.issues.len() >= 3);
    }

    #[test]
    fn angle_examples() {
        let a: SrgAngle = srg_angle(&SrgParams::new(5, 2, 0, 1)).unwrap();
        assert!((a.cosine + (1.0 + 1.0 / 5f64.sqrt()) / 2.0).abs() < 1e-15);
        assert_eq!(a.exact_cosine_sq, None);

        let a: SrgAngle = srg_angle(&SrgParams::new(15, 6, 1, 3)).unwrap();
        assert_eq!(a.exact_cosine_sq, Some(Ratio::new(1, 2)));
        assert!((a.angle - 0.75 * std::f64::consts::PI).abs() < 1e-15);

        let a: SrgAngle = srg_angle(&SrgParams::new(27, 10, 1, 5)).unwrap();
        assert_eq!(a.exact_cosine_sq, Some(Ratio::new(5, 9)));
        assert!((a.cosine + 5f64.sqrt() / 3.0).abs() < 1e-15);
    }

    #[test]
    fn verify_named_graphs() {
        assert_eq!(
            verify_srg(&build_named("C5", None).unwrap()),
            Ok(SrgParams::new(5, 2, 0, 1))
        );
        assert_eq!(
            verify_srg(&build_named("petersen", None).unwrap()),
            Ok(SrgParams::new(10, 3, 0, 1))
        );
        // K_{m,m} is an SRG (2m, m, 0, m)
        assert_eq!(
            verify_srg(&build_named("K_mm", Some(3)).unwrap()),
            Ok(SrgParams::new(6, 3, 0, 3))
        );
    }

    #[test]
    fn verify_rejects_non_srg() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            verify_srg(&path),
            Err(SrgError::NotRegular {
                vertex: 1,
                degree: 2,
                expected: 1
            })
        ));
        let c6 = build_named("cycle", Some(6)).unwrap();
        // 0 and 2 share vertex 1; 0 and 3 share nothing
        assert_eq!(
            verify_srg(&c6),
            Err(SrgError::IdentityViolated {
                u: 0,
                v: 3,
                adjacent: false,
                common: 0,
                expected: 1
            })
        );
        let k4 = build_named("K_mm", Some(1)).unwrap();
        assert_eq!(verify_srg(&k4), Err(SrgError::Trivial(1, 2)));
    }

    #[test]
    fn named_builders() {
        let c5 = build_named("C5", None).unwrap();
        let expected = [
            [0, 1, 0, 0, 1],
            [1, 0, 1, 0, 0],
            [0, 1, 0, 1, 0],
            [0, 0, 1, 0, 1],
            [1, 0, 0, 1, 0],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert_eq!(c5.has_edge(i, j), e == 1);
            }
        }
        let k22 = build_named("K_mm", Some(2)).unwrap();
        assert_eq!(k22.edges(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        let m4 = build_named("matching4", None).unwrap();
        assert_eq!(m4.edges(), vec![(0, 1), (2, 3)]);
        assert!(matches!(
            build_named("nope", None),
            Err(SrgError::UnknownName(_))
        ));
        assert!(matches!(
            build_named("cycle", Some(2)),
            Err(SrgError::InvalidSize { .. })
        ));
        assert!(matches!(
            build_named("K_mm", None),
            Err(SrgError::InvalidSize { .. })
        ));
    }

    #[test]
    fn four_cycle_spectrum_is_symmetric() {
        let a = build_named("K_mm", Some(2))
            .unwrap()
            .adjacency_matrix::<f64>();
        let e = a.eigh().unwrap();
        let l = e.eigenvalues();
        for i in 0..4 {
            assert!((l[i] + l[3 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = build_named("petersen", None).unwrap();
        let text = g.to_edge_list_string();
        assert!(text.starts_with("10 15\n0 1\n"));
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);

        assert!(matches!(
            Graph::parse_edge_list("3 1\n0 3\n"),
            Err(SrgError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 1\n1 1\n"),
            Err(SrgError::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n1 0\n"),
            Err(SrgError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::parse_edge_list("3 2\n0 1\n"),
            Err(SrgError::Parse { .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("3\n"),
            Err(SrgError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("0 0\n"),
            Err(SrgError::EmptyGraph)
        ));
    }

    #[test]
    fn large_graph_bitsets_span_words() {
        let g = build_named("cycle", Some(130)).unwrap();
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![1, 129]);
        assert_eq!(g.common_neighbors(63, 65), 1);
        assert_eq!(g.edge_count(), 130);
    }
}
