//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coneangle::cones::{SEARCH_TOL, SNIEP_TOL};
use coneangle::sample::{self, rng_for};
use coneangle::{
    angle, build_gq_elliptic, build_gq_symplectic, build_named, critical_pair_search,
    entrywise_split, frobenius_inner, gq_axiom_check, max_angle_nonneg, max_angle_psd,
    multistart_search, sniep_realizable, spectral_split, srg_angle, srg_spectrum, verify_srg,
    ConeError, ExactRatio, MultistartConfig, SniepCondition, SrgParams, SymmetricMatrix,
};
use coneangle_cli::{cmd_table1, Format};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    ensure!(elapsed < limit, "took {elapsed:.2?}, limit {limit:?}");
    Ok(format!("{elapsed:.2?}"))
}

/// Published angles in units of π, to four decimals.
const TABLE: [(u64, u64, f64, f64, f64); 5] = [
    (2, 27, 5.0, 3.0, 0.7677),
    (3, 112, 10.0, 4.0, 0.7902),
    (4, 325, 17.0, 5.0, 0.8086),
    (5, 756, 26.0, 6.0, 0.8232),
    (7, 2752, 50.0, 8.0, 0.8451),
];

fn c1_table_analytic() -> Outcome {
    let start = Instant::now();
    let report = cmd_table1(7, false).map_err(|e| e.to_string())?;
    let emitted: serde_json::Value =
        serde_json::from_str(&report.render(Format::Json)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let cols: Vec<&str> = emitted["table"]["columns"]
        .as_array()
        .ok_or("no table")?
        .iter()
        .filter_map(|c| c.as_str())
        .collect();
    let col = |name: &str| {
        cols.iter()
            .position(|c| *c == name)
            .ok_or(format!("no column {name}"))
    };
    let rows = emitted["table"]["rows"].as_array().ok_or("no rows")?;
    let mut worst: f64 = 0.0;
    for (q, n, num, den, published) in TABLE {
        let row = rows
            .iter()
            .find(|r| r[col("q").unwrap()] == q)
            .ok_or(format!("no row for q = {q}"))?;
        ensure!(row[col("n")?] == n, "q = {q}: n = {}", row[col("n")?]);
        let cosine = row[col("cosine")?].as_f64().ok_or("cosine")?;
        let expected = -num.sqrt() / den;
        ensure!(
            (cosine - expected).abs() < 1e-14,
            "q = {q}: cosine {cosine} vs {expected}"
        );
        let over_pi = row[col("angle_over_pi")?].as_f64().ok_or("angle")?;
        let diff = (over_pi - published).abs();
        ensure!(diff < 1e-4, "q = {q}: {over_pi} vs published {published}");
        worst = worst.max(diff);
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("5 rows, max |Δ| = {worst:.2e} π, {elapsed:.2?}"))
}

fn c2_table_constructive() -> Outcome {
    let start = Instant::now();
    for q in 2u64..=5 {
        let g = build_gq_elliptic(q).map_err(|e| e.to_string())?;
        let n = (q + 1) * (q * q * q + 1);
        ensure!(
            g.adjacency.order() as u64 == n,
            "q = {q}: {} vertices",
            g.adjacency.order()
        );
        let params = verify_srg(&g.adjacency).map_err(|e| format!("q = {q}: {e}"))?;
        let expected = SrgParams::new(n, q * (q * q + 1), q - 1, q * q + 1);
        ensure!(params == expected, "q = {q}: {params} vs {expected}");
        let s = srg_spectrum::<f64>(&params).map_err(|e| e.to_string())?;
        let (_, tau) = s.integral.ok_or("non-integral spectrum")?;
        let ratio = ExactRatio::new(s.m_tau as i64 * tau * tau, (params.n * params.k) as i64);
        let qi = q as i64;
        let want = ExactRatio::new(qi * qi + 1, (qi + 1) * (qi + 1));
        ensure!(ratio == want, "q = {q}: ratio {ratio} vs {want}");
    }
    let t = within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("q = 2..5 certified, {t}"))
}

fn c3_spectral_cross_check() -> Outcome {
    let mut notes = Vec::new();
    for q in [2u64, 3] {
        let g = build_gq_elliptic(q).map_err(|e| e.to_string())?;
        let params = verify_srg(&g.adjacency).map_err(|e| e.to_string())?;
        let s = srg_spectrum::<f64>(&params).map_err(|e| e.to_string())?;
        let a = g.adjacency.adjacency_matrix::<f64>();
        let e = a.eigh().map_err(|e| e.to_string())?;
        let mut covered = 0;
        for (value, mult) in s.eigenvalues() {
            let count = e
                .eigenvalues()
                .iter()
                .filter(|l| (*l - value).abs() <= 1e-6)
                .count();
            ensure!(
                count as u64 == mult,
                "q = {q}: {count} eigenvalues near {value}, expected {mult}"
            );
            covered += count;
        }
        ensure!(
            covered == a.order(),
            "q = {q}: eigenvalues outside the bands"
        );
        let psd = max_angle_psd(&a).map_err(|e| e.to_string())?;
        let formula = srg_angle::<f64>(&params).map_err(|e| e.to_string())?;
        let diff = (psd.angle - formula.angle).abs();
        ensure!(diff <= 1e-9, "q = {q}: angle differs by {diff:e}");
        notes.push(format!("n = {}: |Δangle| = {diff:.1e}", params.n));
    }
    Ok(notes.join(", "))
}

fn c4_pentagon() -> Outcome {
    let a = build_named("c5", None)
        .map_err(|e| e.to_string())?
        .adjacency_matrix::<f64>();
    let r = max_angle_psd(&a).map_err(|e| e.to_string())?;
    let want = -(1.0 + 1.0 / 5f64.sqrt()) / 2.0;
    let diff = (r.cosine - want).abs();
    ensure!(diff <= 1e-12, "cosine {} vs {want} ({diff:e})", r.cosine);
    let over_pi = r.angle / PI;
    ensure!((over_pi - 0.7575).abs() <= 5e-4, "angle {over_pi} π");
    Ok(format!("cosine {:.15}, angle {over_pi:.6} π", r.cosine))
}

fn c5_small_order_ceiling() -> Outcome {
    let ceiling = 0.75 * PI;
    let mut notes = Vec::new();
    for n in 2..=4 {
        let config = MultistartConfig {
            n,
            seed: 20_000 + n as u64,
            restarts: 10_000,
            tol: SEARCH_TOL,
            max_iter: 10_000,
        };
        let result = multistart_search::<f64>(&config, None).map_err(|e| e.to_string())?;
        let mut max: f64 = 0.0;
        for o in &result.outcomes {
            let trace = o
                .result
                .as_ref()
                .map_err(|e| format!("n = {n}, restart {}: {e}", o.index))?;
            ensure!(
                trace.angle() <= ceiling + 1e-9,
                "n = {n}, restart {}: {} exceeds 3π/4",
                o.index,
                trace.angle()
            );
            max = max.max(trace.angle());
        }
        notes.push(format!("n = {n}: max {:.12} π", max / PI));
    }
    for (name, param) in [("cycle", Some(4)), ("matching4", None)] {
        let start = build_named(name, param)
            .map_err(|e| e.to_string())?
            .adjacency_matrix::<f64>();
        let trace = critical_pair_search(&start, SEARCH_TOL, 10_000).map_err(|e| e.to_string())?;
        let diff = (trace.angle() - ceiling).abs();
        ensure!(diff <= 1e-10, "{name} start ends {diff:e} from 3π/4");
    }
    notes.push("C4 and matching4 attain 3π/4".into());
    Ok(notes.join(", "))
}

fn c6_bipartite() -> Outcome {
    let mut graphs = Vec::new();
    for m in 1..=6 {
        graphs.push((format!("K_{m},{m}"), build_named("K_mm", Some(m))));
    }
    for m in 2..=8 {
        graphs.push((format!("C_{}", 2 * m), build_named("cycle", Some(2 * m))));
    }
    let mut worst: f64 = 0.0;
    for (label, g) in &graphs {
        let g = g.as_ref().map_err(|e| e.to_string())?;
        let r = max_angle_psd(&g.adjacency_matrix::<f64>()).map_err(|e| e.to_string())?;
        let diff = (r.angle - 0.75 * PI).abs();
        ensure!(diff <= 1e-10, "{label}: {diff:e} from 3π/4");
        worst = worst.max(diff);
    }
    Ok(format!("{} graphs, max |Δ| = {worst:.1e}", graphs.len()))
}

fn c7_symplectic() -> Outcome {
    for q in [2u64, 3] {
        let g = build_gq_symplectic(q).map_err(|e| e.to_string())?;
        let params = verify_srg(&g.adjacency).map_err(|e| format!("q = {q}: {e}"))?;
        let n = (q + 1) * (q * q + 1);
        ensure!(
            params.n == n,
            "q = {q}: {} vertices, expected {n}",
            params.n
        );
        let exact = srg_angle::<f64>(&params)
            .map_err(|e| e.to_string())?
            .exact_cosine_sq
            .ok_or("no exact cosine")?;
        ensure!(exact == ExactRatio::new(1, 2), "q = {q}: cos² = {exact}");
    }
    Ok("GQ(2,2) = (15,6,1,3), GQ(3,3) = (40,12,2,4), cos² = 1/2".into())
}

fn c8_axioms() -> Outcome {
    let start = Instant::now();
    for q in [2u64, 3] {
        for (label, g) in [
            ("elliptic", build_gq_elliptic(q)),
            ("symplectic", build_gq_symplectic(q)),
        ] {
            let g = g.map_err(|e| e.to_string())?;
            gq_axiom_check(&g).map_err(|v| format!("{label} q = {q}: {v}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(30))
}

fn check_cone_invariants(a: &SymmetricMatrix, seed: u64) -> Result<(), String> {
    let n = a.order();
    let scale = a.norm().max(1.0);
    let split = spectral_split(a, None).map_err(|e| e.to_string())?;
    let residual = (a - &(&split.positive - &split.negative)).norm();
    ensure!(
        residual <= 1e-10 * scale,
        "reconstruction residual {residual:e}"
    );
    let inner = frobenius_inner(&split.positive, &split.negative).map_err(|e| e.to_string())?;
    ensure!(
        inner <= 1e-9 * split.positive.norm() * split.negative.norm(),
        "<Q,P> = {inner:e}"
    );
    let e = entrywise_split(a);
    ensure!(&(&e.positive - &e.negative) == a, "A != M - N");
    ensure!(
        frobenius_inner(&e.positive, &e.negative).unwrap() == 0.0,
        "<M,N> != 0"
    );

    let mut rng = rng_for(seed, 1);
    let unique = |x: &SymmetricMatrix, w: &SymmetricMatrix| -> Result<(), String> {
        let dev = (&x.normalized().ok_or("zero sample")? - w).norm();
        ensure!(dev <= 1e-4, "near-maximal sample {dev:e} from witness");
        Ok(())
    };
    match max_angle_psd(a) {
        Ok(best) => {
            for i in 0..200 {
                let x: SymmetricMatrix = if i % 10 == 9 {
                    let r: SymmetricMatrix = sample::psd(n, n, &mut rng);
                    &best.witness + &r.normalized().unwrap().scale(10f64.powi(-(i as i32 % 13)))
                } else {
                    sample::psd(n, 1 + i % n, &mut rng)
                };
                let t = angle(a, &x).map_err(|e| e.to_string())?;
                ensure!(
                    t <= best.angle + 1e-9,
                    "PSD sample exceeds maximum by {:e}",
                    t - best.angle
                );
                if t >= best.angle - 1e-9 {
                    unique(&x, &best.witness)?;
                }
            }
        }
        Err(ConeError::InsidePsdCone { .. }) => {}
        Err(e) => return Err(e.to_string()),
    }
    match max_angle_nonneg(a) {
        Ok(best) => {
            for i in 0..200usize {
                let x: SymmetricMatrix = if i % 10 == 9 {
                    let r: SymmetricMatrix = sample::nonnegative(n, &mut rng);
                    &best.witness + &r.normalized().unwrap().scale(10f64.powi(-(i as i32 % 13)))
                } else {
                    sample::nonnegative(n, &mut rng)
                };
                let t = angle(a, &x).map_err(|e| e.to_string())?;
                ensure!(
                    t <= best.angle + 1e-9,
                    "nonnegative sample exceeds maximum by {:e}",
                    t - best.angle
                );
                if t >= best.angle - 1e-9 {
                    unique(&x, &best.witness)?;
                }
            }
        }
        Err(ConeError::InsideNonnegativeCone) => {}
        Err(e) => return Err(e.to_string()),
    }
    Ok(())
}

fn c9_cone_split_oracles() -> Outcome {
    let seed = 9_000;
    for i in 0..500u64 {
        let n = 1 + (i as usize % 12);
        let a: SymmetricMatrix = sample::symmetric(n, &mut rng_for(seed, i));
        check_cone_invariants(&a, seed + i).map_err(|e| format!("matrix {i} (n = {n}): {e}"))?;
    }
    Ok(format!("500 matrices, n = 1..12, seed {seed}"))
}

fn c10_sniep() -> Outcome {
    let c5 = [
        2.0,
        0.5 * (5f64.sqrt() - 1.0),
        0.5 * (5f64.sqrt() - 1.0),
        -0.5 * (5f64.sqrt() + 1.0),
        -0.5 * (5f64.sqrt() + 1.0),
    ];
    let v = sniep_realizable(&c5, SNIEP_TOL).map_err(|e| e.to_string())?;
    ensure!(v.realizable, "C5 spectrum rejected");

    let v = sniep_realizable(&[4.0, 0.0, 0.0, -2.0, -2.0], SNIEP_TOL).map_err(|e| e.to_string())?;
    let reason: Vec<SniepCondition> = v.failures().map(|c| c.condition).collect();
    ensure!(
        !v.realizable && reason == [SniepCondition::SecondPlusFifth],
        "(4,0,0,-2,-2) expected not realizable because lambda2 + lambda5 < 0; predicate returned realizable = {}, failed = {reason:?}",
        v.realizable
    );

    let v = sniep_realizable(&[1.0, 1.0, -1.0, -1.0], SNIEP_TOL).map_err(|e| e.to_string())?;
    ensure!(v.realizable, "(1,1,-1,-1) rejected");
    Ok("C5 realizable, (4,0,0,-2,-2) rejected, (1,1,-1,-1) realizable".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1 table reproduction (analytic)", c1_table_analytic),
        (
            "C2 table reproduction (constructive)",
            c2_table_constructive,
        ),
        ("C3 spectral cross-check", c3_spectral_cross_check),
        ("C4 pentagon benchmark", c4_pentagon),
        ("C5 small-order ceiling", c5_small_order_ceiling),
        ("C6 bipartite graphs", c6_bipartite),
        ("C7 GQ(q,q) angle", c7_symplectic),
        ("C8 GQ axioms", c8_axioms),
        ("C9 cone-split oracles", c9_cone_split_oracles),
        ("C10 SNIEP predicate", c10_sniep),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name}: {reason}");
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
