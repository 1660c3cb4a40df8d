//! Command implementations behind the `coneangle` binary.
//!
//! Every command returns a [`Report`]; rendering and exit codes are handled
//! by the binary. Exit codes: 0 success, 1 invalid input or failed
//! precondition, 2 numerical or construction failure.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use coneangle::cones::{SEARCH_MAX_ITER, SEARCH_TOL, SNIEP_TOL};
use coneangle::gq::MAX_CONSTRUCT_Q;
use coneangle::{
    build_gq_elliptic, build_gq_symplectic, build_named, collinearity_graph, gq_axiom_check,
    max_angle_nonneg, max_angle_psd, multistart_search, prime_power, sniep_realizable, srg_angle,
    srg_feasible, srg_spectrum, verify_srg, ConeError, ExactRatio, GqError, Graph,
    MultistartConfig, QuadrangleStructure, SrgError, SrgParams, SymmatError, SymmetricMatrix,
};

pub mod report;

pub use report::{fmt_float, Format, Report, Table, Value};

/// Largest `qmax` accepted by the analytic table.
pub const MAX_TABLE_Q: u64 = 1 << 16;
/// Agreement required between constructed and analytic cosines.
pub const CONSTRUCT_AGREEMENT: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl From<SymmatError> for CliError {
    fn from(e: SymmatError) -> Self {
        match e {
            SymmatError::NoConvergence { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::Matrix(m) => m.into(),
            ConeError::Degenerate { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SrgError> for CliError {
    fn from(e: SrgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<GqError> for CliError {
    fn from(e: GqError) -> Self {
        match e {
            GqError::Field(_) | GqError::TooLarge { .. } => CliError::Input(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "coneangle",
    version,
    about = "Maximal angles between symmetric matrices and the PSD / nonnegative cones"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with_all = ["csv", "format"])]
    pub json: bool,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true, conflicts_with = "format")]
    pub csv: bool,
    /// Artifact file: witness matrix (angle), edge list (gq), best nonnegative iterate (search).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Base seed for random starts; restart i uses seed + i.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Increase threshold of the critical-pair search, or relative SNIEP tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

impl Common {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            self.format
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AngleKind {
    Psd,
    Nonneg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GqKind {
    /// GQ(q, q), symplectic.
    Qq,
    /// GQ(q, q²), elliptic quadric.
    Qq2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower bounds on the maximal PSD/nonnegative angle from GQ(q, q²), per prime power q.
    Table1 {
        #[arg(long, default_value_t = MAX_CONSTRUCT_Q)]
        qmax: u64,
        /// Also build each quadrangle and certify the row from the graph.
        #[arg(long)]
        construct: bool,
    },
    /// Maximal angle from a matrix file to the PSD or nonnegative cone.
    Angle { kind: AngleKind, matrix: PathBuf },
    /// Build a generalized quadrangle and report its collinearity graph.
    Gq {
        q: u64,
        #[arg(long, value_enum, default_value_t = GqKind::Qq2)]
        kind: GqKind,
        #[arg(long)]
        check_axioms: bool,
        /// Write the points and lines to this file.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Strongly regular graph parameters and verification.
    Srg {
        #[command(subcommand)]
        action: SrgAction,
    },
    /// Seeded multistart critical-pair search.
    Search {
        n: usize,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = SEARCH_MAX_ITER)]
        iters: usize,
        /// Named graph whose adjacency matrix replaces restart 0.
        #[arg(long)]
        warm_start: Option<String>,
        /// Size parameter for the warm-start graph (K_mm part size, cycle length).
        #[arg(long)]
        warm_size: Option<usize>,
    },
    /// Trace-zero SNIEP predicate for 2 to 5 eigenvalues.
    Sniep {
        /// Comma-separated eigenvalues, e.g. `1,1,-1,-1`.
        #[arg(allow_hyphen_values = true)]
        eigs: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SrgAction {
    /// Eigenvalues and multiplicities from the parameters.
    Spectrum {
        #[arg(long, value_parser = parse_params)]
        params: SrgParams,
    },
    /// Standard feasibility conditions.
    Feasible {
        #[arg(long, value_parser = parse_params)]
        params: SrgParams,
    },
    /// Angle between the adjacency matrix and its negative definite part.
    Angle {
        #[arg(long, value_parser = parse_params)]
        params: SrgParams,
    },
    /// Certify a graph as strongly regular.
    Verify {
        /// Edge-list file.
        #[arg(required_unless_present = "named", conflicts_with = "named")]
        graph: Option<PathBuf>,
        /// Built-in graph: c5, petersen, K_mm, cycle, matching4.
        #[arg(long)]
        named: Option<String>,
        #[arg(long)]
        size: Option<usize>,
    },
}

/// Parses `n,k,a,c`.
pub fn parse_params(s: &str) -> Result<SrgParams, String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| format!("invalid integer {t:?}"))
        })
        .collect::<Result<_, _>>()?;
    match v[..] {
        [n, k, a, c] => Ok(SrgParams::new(n, k, a, c)),
        _ => Err(format!("expected n,k,a,c, got {} values", v.len())),
    }
}

/// Parses a comma-separated list of reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("invalid number {:?}", t.trim())))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Table1 { qmax, construct } => cmd_table1(*qmax, *construct),
        Command::Angle { kind, matrix } => cmd_angle(*kind, matrix, c.out.as_deref()),
        Command::Gq {
            q,
            kind,
            check_axioms,
            structure,
        } => cmd_gq(
            *q,
            *kind,
            *check_axioms,
            c.out.as_deref(),
            structure.as_deref(),
        ),
        Command::Srg { action } => cmd_srg(action),
        Command::Search {
            n,
            restarts,
            iters,
            warm_start,
            warm_size,
        } => {
            let warm = warm_start.as_deref().map(|name| (name, *warm_size));
            cmd_search(*n, c.seed, *restarts, *iters, c.tol, warm, c.out.as_deref())
        }
        Command::Sniep { eigs } => cmd_sniep(&parse_list(eigs)?, c.tol),
    }
}

/// One row per prime power `q ≤ qmax`: `n = (q+1)(q³+1)` and the angle
/// `arccos(−√(q²+1)/(q+1))`; with `construct`, each row is certified from the
/// built quadrangle.
pub fn cmd_table1(qmax: u64, construct: bool) -> Result<Report, CliError> {
    if construct && qmax > MAX_CONSTRUCT_Q {
        return Err(CliError::Input(format!(
            "--construct supports q <= {MAX_CONSTRUCT_Q}, got qmax = {qmax}"
        )));
    }
    if qmax > MAX_TABLE_Q {
        return Err(CliError::Input(format!(
            "qmax must be at most {MAX_TABLE_Q}"
        )));
    }
    let mut report = Report::new("table1");
    report.input("qmax", qmax).input("construct", construct);

    let mut columns = vec![
        "q",
        "n",
        "k",
        "a",
        "c",
        "cosine",
        "cos2_exact",
        "angle_rad",
        "angle_over_pi",
    ];
    if construct {
        columns.extend(["verified_params", "constructed_cosine", "abs_diff"]);
    }
    let mut table = Table::new(&columns);
    let mut last = f64::NEG_INFINITY;
    let mut increasing = true;
    for q in (2..=qmax).filter(|&q| prime_power(q).is_some()) {
        let qi = q as i128;
        let n = (qi + 1) * (qi * qi * qi + 1);
        let k = qi * (qi * qi + 1);
        let cosine = -((q * q + 1) as f64).sqrt() / (q + 1) as f64;
        let angle = cosine.acos();
        increasing &= angle > last;
        last = angle;
        let exact = i64::try_from(q * q + 1)
            .ok()
            .zip(i64::try_from((q + 1) * (q + 1)).ok())
            .map(|(a, b)| ExactRatio::new(a, b));
        let mut row: Vec<Value> = vec![
            q.into(),
            n.into(),
            k.into(),
            (qi - 1).into(),
            (qi * qi + 1).into(),
            cosine.into(),
            exact.into(),
            angle.into(),
            (angle / PI).into(),
        ];
        if construct {
            let g = build_gq_elliptic(q)?;
            let params = verify_srg(&g.adjacency).map_err(|e| {
                CliError::Numerical(format!("q = {q}: constructed graph fails: {e}"))
            })?;
            let expected = SrgParams::new(n as u64, k as u64, q - 1, q * q + 1);
            if params != expected {
                return Err(CliError::Numerical(format!(
                    "q = {q}: constructed graph is {params}, expected {expected}"
                )));
            }
            let built = srg_angle::<f64>(&params)?;
            let diff = (built.cosine - cosine).abs();
            if diff.is_nan() || diff > CONSTRUCT_AGREEMENT {
                return Err(CliError::Numerical(format!(
                    "q = {q}: constructed cosine {} differs from {} by {diff:e}",
                    fmt_float(built.cosine),
                    fmt_float(cosine)
                )));
            }
            row.extend([params.to_string().into(), built.cosine.into(), diff.into()]);
        }
        table.push(row);
    }
    report.result("rows", table.rows.len());
    report.result("angles_increasing", increasing);
    report.table = Some(table);
    Ok(report)
}

pub fn cmd_angle(kind: AngleKind, matrix: &Path, out: Option<&Path>) -> Result<Report, CliError> {
    let a = SymmetricMatrix::<f64>::parse_dense(&read(matrix)?)?;
    let r = match kind {
        AngleKind::Psd => max_angle_psd(&a)?,
        AngleKind::Nonneg => max_angle_nonneg(&a)?,
    };
    let mut report = Report::new("angle");
    report
        .input(
            "kind",
            match kind {
                AngleKind::Psd => "psd",
                AngleKind::Nonneg => "nonneg",
            },
        )
        .input("matrix", matrix.display().to_string());
    report.result("order", a.order());
    report.angle("", r.cosine, r.angle);
    report.result("witness", &r.witness);
    if let Some(path) = out {
        write(path, &r.witness.to_dense_string())?;
        report.result("witness_file", path.display().to_string());
    }
    Ok(report)
}

pub fn cmd_gq(
    q: u64,
    kind: GqKind,
    check_axioms: bool,
    out: Option<&Path>,
    structure: Option<&Path>,
) -> Result<Report, CliError> {
    let g: QuadrangleStructure = match kind {
        GqKind::Qq => build_gq_symplectic(q)?,
        GqKind::Qq2 => build_gq_elliptic(q)?,
    };
    collinearity_graph(&g)?;
    let params = verify_srg(&g.adjacency).map_err(|e| {
        CliError::Numerical(format!("collinearity graph is not strongly regular: {e}"))
    })?;
    let spectrum = srg_spectrum::<f64>(&params)?;
    let angle = srg_angle::<f64>(&params)?;

    let mut report = Report::new("gq");
    report
        .input("q", q)
        .input(
            "kind",
            match kind {
                GqKind::Qq => "qq",
                GqKind::Qq2 => "qq2",
            },
        )
        .input("check_axioms", check_axioms);
    report
        .result("structure", g.kind.to_string())
        .result("modulus", format!("{:?}", g.field.modulus()))
        .result("s", g.order_s)
        .result("t", g.order_t)
        .result("points", g.points.len())
        .result("lines", g.lines.len())
        .result("srg_n", params.n)
        .result("srg_k", params.k)
        .result("srg_a", params.a)
        .result("srg_c", params.c)
        .result("eig_k", spectrum.k)
        .result("eig_theta", spectrum.theta)
        .result("mult_theta", spectrum.m_theta)
        .result("eig_tau", spectrum.tau)
        .result("mult_tau", spectrum.m_tau)
        .result("cos2_exact", angle.exact_cosine_sq);
    report.angle("", angle.cosine, angle.angle);
    if check_axioms {
        gq_axiom_check(&g)
            .map_err(|v| CliError::Numerical(format!("quadrangle axiom violated: {v}")))?;
        report.result("axioms", "passed");
    }
    if let Some(path) = out {
        write(path, &g.adjacency.to_edge_list_string())?;
        report.result("edge_list_file", path.display().to_string());
    }
    if let Some(path) = structure {
        write(path, &g.to_report_string())?;
        report.result("structure_file", path.display().to_string());
    }
    Ok(report)
}

pub fn cmd_srg(action: &SrgAction) -> Result<Report, CliError> {
    let mut report = Report::new("srg");
    match action {
        SrgAction::Spectrum { params } => {
            report
                .input("action", "spectrum")
                .input("params", params.to_string());
            let s = srg_spectrum::<f64>(params)?;
            report
                .result("eig_k", s.k)
                .result("eig_theta", s.theta)
                .result("mult_theta", s.m_theta)
                .result("eig_tau", s.tau)
                .result("mult_tau", s.m_tau)
                .result("discriminant", s.discriminant)
                .result("integral", s.integral.is_some());
        }
        SrgAction::Feasible { params } => {
            report
                .input("action", "feasible")
                .input("params", params.to_string());
            let f = srg_feasible(params);
            let issues: Vec<String> = f.issues.iter().map(|i| i.to_string()).collect();
            report
                .result("feasible", f.feasible)
                .result("issues", issues.join("; "));
        }
        SrgAction::Angle { params } => {
            report
                .input("action", "angle")
                .input("params", params.to_string());
            let a = srg_angle::<f64>(params)?;
            report.result("cos2_exact", a.exact_cosine_sq);
            report.angle("", a.cosine, a.angle);
        }
        SrgAction::Verify { graph, named, size } => {
            report.input("action", "verify");
            let g = match (graph, named) {
                (Some(path), _) => {
                    report.input("graph", path.display().to_string());
                    Graph::parse_edge_list(&read(path)?)?
                }
                (None, Some(name)) => {
                    report.input("named", name.as_str()).input("size", *size);
                    build_named(name, *size)?
                }
                (None, None) => return Err(CliError::Input("give a graph file or --named".into())),
            };
            let params = verify_srg(&g)?;
            report
                .result("srg_n", params.n)
                .result("srg_k", params.k)
                .result("srg_a", params.a)
                .result("srg_c", params.c);
            match srg_angle::<f64>(&params) {
                Ok(a) => {
                    let spectral = max_angle_psd(&g.adjacency_matrix::<f64>())?;
                    report.result("cos2_exact", a.exact_cosine_sq);
                    report.angle("", a.cosine, a.angle);
                    report.angle("eigh", spectral.cosine, spectral.angle);
                }
                Err(e) => {
                    report.result("angle", format!("unavailable: {e}"));
                }
            }
        }
    }
    Ok(report)
}

pub fn cmd_search(
    n: usize,
    seed: u64,
    restarts: usize,
    iters: usize,
    tol: Option<f64>,
    warm_start: Option<(&str, Option<usize>)>,
    out: Option<&Path>,
) -> Result<Report, CliError> {
    if restarts == 0 {
        return Err(CliError::Input("restarts must be at least 1".into()));
    }
    let tol = tol.unwrap_or(SEARCH_TOL);
    let warm = warm_start
        .map(|(name, size)| build_named(name, size).map(|g| g.adjacency_matrix::<f64>()))
        .transpose()?;
    let config = MultistartConfig {
        n,
        seed,
        restarts,
        tol,
        max_iter: iters,
    };
    let result = multistart_search(&config, warm.as_ref())?;

    let mut report = Report::new("search");
    report.seed = Some(seed);
    report
        .input("n", n)
        .input("restarts", restarts)
        .input("iters", iters)
        .input("tol", tol)
        .input("warm_start", warm_start.map(|(name, _)| name));

    let mut table = Table::new(&[
        "index",
        "seed",
        "status",
        "steps",
        "converged",
        "angle_over_pi",
    ]);
    let mut failed = 0usize;
    for o in &result.outcomes {
        let row = match &o.result {
            Ok(t) => vec![
                o.index.into(),
                o.seed.into(),
                "ok".into(),
                t.steps().into(),
                t.converged.into(),
                (t.angle() / PI).into(),
            ],
            Err(e) => {
                failed += 1;
                vec![
                    o.index.into(),
                    o.seed.into(),
                    e.to_string().into(),
                    Value::Null,
                    Value::Null,
                    Value::Null,
                ]
            }
        };
        table.push(row);
    }
    let (best, trace) = match (result.best, result.best_trace()) {
        (Some(i), Some(t)) => (i, t),
        _ => {
            return Err(CliError::Numerical(format!(
                "all {restarts} restarts failed"
            )))
        }
    };
    let angle = trace.angle();
    report
        .result("best_index", best)
        .result("best_seed", result.outcomes[best].seed)
        .result("failed_restarts", failed);
    report.angle("best", angle.cos(), angle);
    report
        .result("best_steps", trace.steps())
        .result("best_converged", trace.converged)
        .result("best_n", &trace.final_n)
        .result("best_p", &trace.final_p);
    if let Some(path) = out {
        write(path, &trace.final_n.to_dense_string())?;
        report.result("best_n_file", path.display().to_string());
    }
    report.table = Some(table);
    Ok(report)
}

pub fn cmd_sniep(eigs: &[f64], tol: Option<f64>) -> Result<Report, CliError> {
    let tol = tol.unwrap_or(SNIEP_TOL);
    let verdict = sniep_realizable(eigs, tol)?;
    let mut report = Report::new("sniep");
    report
        .input(
            "eigenvalues",
            eigs.iter()
                .map(|&x| fmt_float(x))
                .collect::<Vec<_>>()
                .join(","),
        )
        .input("tol", tol);
    report.result("realizable", verdict.realizable);
    let failed: Vec<String> = verdict
        .failures()
        .map(|c| c.condition.to_string())
        .collect();
    report.result("failed", failed.join(";"));
    let mut table = Table::new(&["condition", "holds", "value"]);
    for c in &verdict.checks {
        report.result(&c.condition.to_string(), c.holds);
        table.push(vec![
            c.condition.to_string().into(),
            c.holds.into(),
            c.value.into(),
        ]);
    }
    report.table = Some(table);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_classes_map_to_exit_codes() {
        let degenerate = ConeError::Degenerate {
            iteration: 3,
            reason: "x".into(),
        };
        assert_eq!(CliError::from(degenerate).exit_code(), 2);
        assert_eq!(
            CliError::from(ConeError::InsideNonnegativeCone).exit_code(),
            1
        );
        let stalled = SymmatError::NoConvergence {
            sweeps: 100,
            off_norm: 1.0,
        };
        assert_eq!(CliError::from(ConeError::Matrix(stalled)).exit_code(), 2);
        assert_eq!(
            CliError::from(GqError::TooLarge { q: 9, max: 8 }).exit_code(),
            1
        );
        assert_eq!(
            CliError::from(GqError::AdjacencyMismatch { u: 0, v: 1 }).exit_code(),
            2
        );
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_params("27, 10,1,5"), Ok(SrgParams::new(27, 10, 1, 5)));
        assert!(parse_params("27,10,1").is_err());
        assert_eq!(parse_list("1, -1").unwrap(), vec![1.0, -1.0]);
        assert!(parse_list("1,,2").is_err());
    }

    #[test]
    fn table1_bounds() {
        assert!(matches!(cmd_table1(9, true), Err(CliError::Input(_))));
        assert!(matches!(
            cmd_table1(MAX_TABLE_Q + 1, false),
            Err(CliError::Input(_))
        ));
        assert_eq!(cmd_table1(1, false).unwrap().table.unwrap().rows.len(), 0);
    }
}
