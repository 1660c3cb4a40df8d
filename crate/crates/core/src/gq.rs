//! Classical generalized quadrangles over GF(q) and their collinearity graphs.
//!
//! * GQ(q, q): all points of PG(3, q) with the symplectic form
//!   `B(x, y) = x₀y₁ − x₁y₀ + x₂y₃ − x₃y₂`; lines are the totally isotropic lines.
//! * GQ(q, q²): singular points of the elliptic quadric in PG(5, q) given by
//!   `Q(x) = x₀x₁ + x₂x₃ + x₄² + αx₄x₅ + βx₅²` with `t² + αt + β` irreducible;
//!   lines are the totally singular lines.
//!
//! Points are enumerated lexicographically over normalized coordinate
//! vectors (first nonzero coordinate equal to one) in packed element order,
//! so adjacency matrices are bit-identical across runs.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec, FieldTables};
use crate::srg::Graph;

/// Largest `q` accepted by the builders.
pub const MAX_CONSTRUCT_Q: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GqError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("q = {q} exceeds the construction bound {max}")]
    TooLarge { q: u64, max: u64 },
    #[error("no irreducible quadratic found over GF({0})")]
    NoIrreducibleQuadratic(u32),
    #[error("line through points {u} and {v} leaves the point set")]
    LineOutsidePointSet { u: usize, v: usize },
    #[error("expected {expected} {what}, constructed {got}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("line-based and form-based collinearity disagree at points {u} and {v}")]
    AdjacencyMismatch { u: usize, v: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrangleKind {
    /// GQ(q, q) from the symplectic polarity of PG(3, q).
    Symplectic,
    /// GQ(q, q²) from the elliptic quadric of PG(5, q).
    Elliptic,
}

impl fmt::Display for QuadrangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadrangleKind::Symplectic => write!(f, "symplectic W(3,q), order (q,q)"),
            QuadrangleKind::Elliptic => write!(f, "elliptic quadric Q-(5,q), order (q,q^2)"),
        }
    }
}

/// Projective point with its first nonzero coordinate equal to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    pub coords: Vec<FieldElement>,
}

/// Point-line incidence structure together with its form-based collinearity graph.
#[derive(Debug, Clone)]
pub struct QuadrangleStructure {
    pub kind: QuadrangleKind,
    pub field: FieldSpec,
    pub order_s: u64,
    pub order_t: u64,
    pub points: Vec<ProjectivePoint>,
    /// Sorted point indices of each line; lines sorted lexicographically.
    pub lines: Vec<Vec<usize>>,
    /// `u ~ v` iff `u ≠ v` and the two points are orthogonal under the form.
    pub adjacency: Graph,
}

impl QuadrangleStructure {
    /// Text export: parameters, points (coordinates as packed field elements) and lines.
    pub fn to_report_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# generalized quadrangle: {}", self.kind);
        let _ = writeln!(
            s,
            "field q={} p={} e={} modulus={:?}",
            self.field.order(),
            self.field.characteristic(),
            self.field.degree(),
            self.field.modulus()
        );
        let _ = writeln!(s, "order s={} t={}", self.order_s, self.order_t);
        let _ = writeln!(s, "points {}", self.points.len());
        for (i, p) in self.points.iter().enumerate() {
            let c: Vec<String> = p.coords.iter().map(|x| x.0.to_string()).collect();
            let _ = writeln!(s, "{i} {}", c.join(" "));
        }
        let _ = writeln!(s, "lines {}", self.lines.len());
        for (i, l) in self.lines.iter().enumerate() {
            let c: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{i} {}", c.join(" "));
        }
        s
    }
}

fn check_bound(q: u64) -> Result<(), GqError> {
    if q > MAX_CONSTRUCT_Q {
        return Err(GqError::TooLarge {
            q,
            max: MAX_CONSTRUCT_Q,
        });
    }
    Ok(())
}

/// Normalized vectors of length `dim` in lexicographic order.
fn projective_points(q: u32, dim: usize) -> Vec<Vec<FieldElement>> {
    let total = (q as u64).pow(dim as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut coords = vec![FieldElement::ZERO; dim];
        let mut x = idx;
        for c in coords.iter_mut().rev() {
            *c = FieldElement((x % q as u64) as u32);
            x /= q as u64;
        }
        if coords.iter().find(|c| !c.is_zero()) == Some(&FieldElement::ONE) {
            out.push(coords);
        }
    }
    out
}

fn key(coords: &[FieldElement], q: u32) -> u64 {
    coords
        .iter()
        .fold(0u64, |acc, c| acc * q as u64 + c.0 as u64)
}

fn normalize(t: &FieldTables, v: &mut [FieldElement]) {
    if let Some(&lead) = v.iter().find(|c| !c.is_zero()) {
        let inv = t.inv(lead);
        for c in v.iter_mut() {
            *c = t.mul(*c, inv);
        }
    }
}

/// Shared assembly: form-based adjacency, then lines as point sets of
/// `span{u, v}` for collinear pairs, then count checks.
fn assemble(
    kind: QuadrangleKind,
    field: FieldSpec,
    tables: &FieldTables,
    coords: Vec<Vec<FieldElement>>,
    orthogonal: impl Fn(&[FieldElement], &[FieldElement]) -> bool + Sync,
    (s, t): (u64, u64),
) -> Result<QuadrangleStructure, GqError> {
    let n = coords.len();
    let q = field.order();
    let expected_points = ((s + 1) * (s * t + 1)) as usize;
    if n != expected_points {
        return Err(GqError::CountMismatch {
            what: "points",
            expected: expected_points,
            got: n,
        });
    }
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut row = vec![0u64; words];
            for v in 0..n {
                if v != u && orthogonal(&coords[u], &coords[v]) {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
            row
        })
        .collect();
    let adjacency = Graph::from_row_words(n, rows);

    let index: HashMap<u64, usize> = coords
        .iter()
        .enumerate()
        .map(|(i, c)| (key(c, q), i))
        .collect();
    let mut lines = Vec::new();
    for u in 0..n {
        let mut covered = vec![false; n];
        for v in adjacency.neighbors(u) {
            if v < u || covered[v] {
                continue;
            }
            let mut line = vec![v];
            for lambda in field.elements() {
                let mut w: Vec<FieldElement> = coords[u]
                    .iter()
                    .zip(&coords[v])
                    .map(|(&a, &b)| tables.add(a, tables.mul(lambda, b)))
                    .collect();
                normalize(tables, &mut w);
                let idx = *index
                    .get(&key(&w, q))
                    .ok_or(GqError::LineOutsidePointSet { u, v })?;
                line.push(idx);
            }
            line.sort_unstable();
            for &x in &line {
                covered[x] = true;
            }
            if line[0] == u {
                lines.push(line);
            }
        }
    }
    lines.sort();
    let expected_lines = ((t + 1) * (s * t + 1)) as usize;
    if lines.len() != expected_lines {
        return Err(GqError::CountMismatch {
            what: "lines",
            expected: expected_lines,
            got: lines.len(),
        });
    }
    Ok(QuadrangleStructure {
        kind,
        field,
        order_s: s,
        order_t: t,
        points: coords
            .into_iter()
            .map(|c| ProjectivePoint { coords: c })
            .collect(),
        lines,
        adjacency,
    })
}

/// GQ(q, q) on the points of PG(3, q).
pub fn build_gq_symplectic(q: u64) -> Result<QuadrangleStructure, GqError> {
    check_bound(q)?;
    let field = FieldSpec::new(q)?;
    let t = field.tables().expect("small field");
    let coords = projective_points(field.order(), 4);
    let form = |x: &[FieldElement], y: &[FieldElement]| {
        let a = t.sub(t.mul(x[0], y[1]), t.mul(x[1], y[0]));
        let b = t.sub(t.mul(x[2], y[3]), t.mul(x[3], y[2]));
        t.add(a, b).is_zero()
    };
    assemble(
        QuadrangleKind::Symplectic,
        field.clone(),
        &t,
        coords,
        form,
        (q, q),
    )
}

/// First `(α, β)` in packed order `β + α q` with `t² + αt + β` irreducible over GF(q).
pub fn irreducible_quadratic(field: &FieldSpec) -> Result<(FieldElement, FieldElement), GqError> {
    let t = field.tables().expect("small field");
    for alpha in field.elements() {
        for beta in field.elements() {
            let has_root = field
                .elements()
                .any(|x| t.add(t.add(t.mul(x, x), t.mul(alpha, x)), beta).is_zero());
            if !has_root {
                return Ok((alpha, beta));
            }
        }
    }
    Err(GqError::NoIrreducibleQuadratic(field.order()))
}

/// GQ(q, q²) on the elliptic quadric of PG(5, q).
pub fn build_gq_elliptic(q: u64) -> Result<QuadrangleStructure, GqError> {
    check_bound(q)?;
    let field = FieldSpec::new(q)?;
    let t = field.tables().expect("small field");
    let (alpha, beta) = irreducible_quadratic(&field)?;
    let quad = |x: &[FieldElement]| {
        let mut acc = t.add(t.mul(x[0], x[1]), t.mul(x[2], x[3]));
        acc = t.add(acc, t.mul(x[4], x[4]));
        acc = t.add(acc, t.mul(alpha, t.mul(x[4], x[5])));
        t.add(acc, t.mul(beta, t.mul(x[5], x[5])))
    };
    let coords: Vec<_> = projective_points(field.order(), 6)
        .into_iter()
        .filter(|c| quad(c).is_zero())
        .collect();
    // B(u, v) = Q(u + v) − Q(u) − Q(v), and Q vanishes on every point.
    let form = |x: &[FieldElement], y: &[FieldElement]| {
        let sum: Vec<FieldElement> = x.iter().zip(y).map(|(&a, &b)| t.add(a, b)).collect();
        t.sub(t.sub(quad(&sum), quad(x)), quad(y)).is_zero()
    };
    assemble(
        QuadrangleKind::Elliptic,
        field.clone(),
        &t,
        coords,
        form,
        (q, q * q),
    )
}

/// Collinearity graph from the lines, cross-checked against the form-based adjacency.
pub fn collinearity_graph(g: &QuadrangleStructure) -> Result<Graph, GqError> {
    let n = g.points.len();
    let mut graph = Graph::new(n).map_err(|_| GqError::CountMismatch {
        what: "points",
        expected: 1,
        got: 0,
    })?;
    for line in &g.lines {
        for (i, &u) in line.iter().enumerate() {
            for &v in &line[i + 1..] {
                graph.set_edge(u, v);
            }
        }
    }
    if graph != g.adjacency {
        let (u, v) = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .find(|&(u, v)| graph.has_edge(u, v) != g.adjacency.has_edge(u, v))
            .expect("graphs differ somewhere");
        return Err(GqError::AdjacencyMismatch { u, v });
    }
    Ok(graph)
}

/// First failure found by [`gq_axiom_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// A line does not carry `s + 1` points.
    LineSize { line: usize, size: usize },
    /// A point is not on `t + 1` lines.
    PointDegree { point: usize, lines: usize },
    /// Two lines share more than one point.
    LinesMeetTwice { first: usize, second: usize },
    /// A point off a line is collinear with `count ≠ 1` points of that line.
    Projection {
        point: usize,
        line: usize,
        count: usize,
    },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::LineSize { line, size } => write!(f, "line {line} has {size} points"),
            AxiomViolation::PointDegree { point, lines } => write!(f, "point {point} lies on {lines} lines"),
            AxiomViolation::LinesMeetTwice { first, second } => {
                write!(f, "lines {first} and {second} meet in more than one point")
            }
            AxiomViolation::Projection { point, line, count } => write!(
                f,
                "point {point} is collinear with {count} points of line {line} (expected exactly one)"
            ),
        }
    }
}

/// Exhaustive check of the order regularities and both quadrangle axioms.
///
/// Order of checks: points per line, lines per point, pairwise line
/// intersections, then for each point `u` off a line `m` the existence and
/// uniqueness of the point on `m` collinear with `u`. With pairwise line
/// intersections of size at most one, the connecting line is unique too.
pub fn gq_axiom_check(g: &QuadrangleStructure) -> Result<(), AxiomViolation> {
    let n = g.points.len();
    let s1 = g.order_s as usize + 1;
    let t1 = g.order_t as usize + 1;
    if let Some((line, l)) = g.lines.iter().enumerate().find(|(_, l)| l.len() != s1) {
        return Err(AxiomViolation::LineSize {
            line,
            size: l.len(),
        });
    }
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (li, l) in g.lines.iter().enumerate() {
        for &p in l {
            through[p].push(li);
        }
    }
    if let Some((point, ls)) = through.iter().enumerate().find(|(_, ls)| ls.len() != t1) {
        return Err(AxiomViolation::PointDegree {
            point,
            lines: ls.len(),
        });
    }

    let mut meet = vec![0u32; g.lines.len()];
    for (li, l) in g.lines.iter().enumerate() {
        meet.iter_mut().for_each(|m| *m = 0);
        for &p in l {
            for &other in &through[p] {
                if other > li {
                    meet[other] += 1;
                    if meet[other] > 1 {
                        return Err(AxiomViolation::LinesMeetTwice {
                            first: li,
                            second: other,
                        });
                    }
                }
            }
        }
    }

    let mut collinear = Graph::new(n).expect("nonempty");
    for l in &g.lines {
        for (i, &u) in l.iter().enumerate() {
            for &v in &l[i + 1..] {
                collinear.set_edge(u, v);
            }
        }
    }
    let bad = (0..n).into_par_iter().find_map_first(|u| {
        g.lines.iter().enumerate().find_map(|(li, l)| {
            if l.contains(&u) {
                return None;
            }
            let count = l.iter().filter(|&&v| collinear.has_edge(u, v)).count();
            (count != 1).then_some(AxiomViolation::Projection {
                point: u,
                line: li,
                count,
            })
        })
    });
    match bad {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srg::{verify_srg, SrgParams};

    #[test]
    fn symplectic_two() {
        let g = build_gq_symplectic(2).unwrap();
        assert_eq!(g.points.len(), 15);
        assert_eq!(g.lines.len(), 15);
        assert_eq!(verify_srg(&g.adjacency), Ok(SrgParams::new(15, 6, 1, 3)));
        assert_eq!(gq_axiom_check(&g), Ok(()));
        let c = collinearity_graph(&g).unwrap();
        assert!((0..15).all(|v| c.degree(v) == 6));
    }

    #[test]
    fn symplectic_three() {
        let g = build_gq_symplectic(3).unwrap();
        assert_eq!(g.points.len(), 40);
        assert_eq!(verify_srg(&g.adjacency), Ok(SrgParams::new(40, 12, 2, 4)));
        assert_eq!(gq_axiom_check(&g), Ok(()));
    }

    #[test]
    fn elliptic_two() {
        let g = build_gq_elliptic(2).unwrap();
        assert_eq!(g.points.len(), 27);
        assert_eq!(g.lines.len(), 45);
        assert_eq!(verify_srg(&g.adjacency), Ok(SrgParams::new(27, 10, 1, 5)));
        assert_eq!(gq_axiom_check(&g), Ok(()));
        let c = collinearity_graph(&g).unwrap();
        assert!((0..27).all(|v| c.degree(v) == 10));
    }

    #[test]
    fn elliptic_three_degree() {
        let g = build_gq_elliptic(3).unwrap();
        assert_eq!(g.points.len(), 112);
        let c = collinearity_graph(&g).unwrap();
        assert!((0..112).all(|v| c.degree(v) == 30));
    }

    #[test]
    fn points_are_normalized_and_sorted() {
        let g = build_gq_elliptic(3).unwrap();
        for w in g.points.windows(2) {
            assert!(w[0].coords < w[1].coords);
        }
        for p in &g.points {
            assert_eq!(
                p.coords.iter().find(|c| !c.is_zero()),
                Some(&FieldElement::ONE)
            );
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = build_gq_elliptic(4).unwrap();
        let b = build_gq_elliptic(4).unwrap();
        assert_eq!(a.adjacency, b.adjacency);
        assert_eq!(a.lines, b.lines);
    }

    #[test]
    fn deleting_a_line_breaks_point_regularity() {
        let mut g = build_gq_elliptic(2).unwrap();
        let removed = g.lines.remove(0);
        assert_eq!(
            gq_axiom_check(&g),
            Err(AxiomViolation::PointDegree {
                point: removed[0],
                lines: 4
            })
        );
        assert!(matches!(
            collinearity_graph(&g),
            Err(GqError::AdjacencyMismatch { .. })
        ));
    }

    #[test]
    fn merged_lines_are_caught() {
        let mut g = build_gq_symplectic(2).unwrap();
        // Swap one point between two lines through a common point: sizes and
        // degrees survive, the projection axiom does not.
        let (a, b) = (0, 1);
        let x = *g.lines[a].iter().find(|p| !g.lines[b].contains(p)).unwrap();
        let y = *g.lines[b].iter().find(|p| !g.lines[a].contains(p)).unwrap();
        for p in g.lines[a].iter_mut() {
            if *p == x {
                *p = y;
            }
        }
        for p in g.lines[b].iter_mut() {
            if *p == y {
                *p = x;
            }
        }
        assert!(gq_axiom_check(&g).is_err());
    }

    #[test]
    fn size_bound_and_field_errors() {
        assert_eq!(
            build_gq_elliptic(9).unwrap_err(),
            GqError::TooLarge { q: 9, max: 8 }
        );
        assert_eq!(
            build_gq_symplectic(6).unwrap_err(),
            GqError::Field(FieldError::NotPrimePower(6))
        );
    }

    #[test]
    fn irreducible_quadratics() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(
            irreducible_quadratic(&f2).unwrap(),
            (FieldElement(1), FieldElement(1))
        );
        let f3 = FieldSpec::new(3).unwrap();
        // t² + 1 has no root mod 3
        assert_eq!(
            irreducible_quadratic(&f3).unwrap(),
            (FieldElement(0), FieldElement(1))
        );
    }

    #[test]
    fn report_lists_points_and_lines() {
        let g = build_gq_symplectic(2).unwrap();
        let r = g.to_report_string();
        assert!(r.contains("order s=2 t=2"));
        assert!(r.contains("points 15"));
        assert!(r.contains("lines 15"));
        assert_eq!(r.lines().count(), 4 + 15 + 1 + 15);
    }
}
