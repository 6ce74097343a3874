use std::fmt::Write as _;

use arspec_core::antiregular::{
    eigenvalue_estimates, extreme_eigenvalue_bounds, f1, f2, forbidden_interval_check,
    solve_spectrum, symmetry_bound, symmetry_defect, t_k_ratio, Parity, SolverConfig,
    SpectrumResult, T_K_REFERENCE,
};
use arspec_core::graph::{adjacency_from_sequence, antiregular_sequence, laplacian};
use arspec_core::oracle::{jacobi_eigenvalues, DEFAULT_TOLERANCE};
use arspec_core::threshold::{scan as scan_all, ScanReport};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::{Check, CliError, Format, Method, Report};

pub const ORACLE_TOLERANCE: f64 = 1e-8;
pub const TABLE_TOLERANCE: f64 = 1e-6;
pub const MAX_DENSE_ORDER: usize = 2000;
const LAPLACIAN_TOLERANCE: f64 = 1e-6;

fn json_body(value: &serde_json::Value) -> Vec<u8> {
    let mut body = serde_json::to_vec_pretty(value).expect("json serializes");
    body.push(b'\n');
    body
}

fn dense_spectrum(n: usize) -> Result<Vec<f64>, CliError> {
    let a = adjacency_from_sequence(&antiregular_sequence(n)?).to_real();
    Ok(jacobi_eigenvalues(&a, DEFAULT_TOLERANCE)?.eigenvalues)
}

/// Largest `|a_i - b_i|`; NaN if any difference is NaN.
fn max_delta(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, |m: f64, d| if d > m || d.is_nan() { d } else { m })
}

pub fn spectrum(n: usize, method: Method, format: Format) -> Result<Report, CliError> {
    if method != Method::Cheb && n > MAX_DENSE_ORDER {
        return Err(CliError::Usage(format!(
            "--method {method:?} needs n <= {MAX_DENSE_ORDER}, got {n}"
        )));
    }
    let cfg = SolverConfig::default();
    match method {
        Method::Cheb => {
            let s = solve_spectrum(n, &cfg)?;
            let body = match format {
                Format::Json => json_body(&s.to_json()),
                Format::Csv => {
                    let mut buf = Vec::new();
                    s.write_csv(&mut buf)?;
                    buf
                }
            };
            Ok(Report { body, passed: true })
        }
        Method::Dense => {
            let values = dense_spectrum(n)?;
            let body = match format {
                Format::Json => json_body(&json!({ "n": n, "eigenvalues": values })),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["index", "lambda"])?;
                    for (i, l) in values.iter().enumerate() {
                        w.write_record([i.to_string(), l.to_string()])?;
                    }
                    w.into_inner()
                        .map_err(|e| CliError::Internal(e.to_string()))?
                }
            };
            Ok(Report { body, passed: true })
        }
        Method::Both => {
            let cheb = solve_spectrum(n, &cfg)?.eigenvalues();
            let dense = dense_spectrum(n)?;
            let worst = max_delta(&cheb, &dense);
            let passed = worst <= ORACLE_TOLERANCE;
            let body = match format {
                Format::Json => {
                    let rows: Vec<_> = cheb
                        .iter()
                        .zip(&dense)
                        .enumerate()
                        .map(|(i, (c, d))| json!({ "index": i, "cheb": c, "dense": d, "delta": (c - d).abs() }))
                        .collect();
                    json_body(
                        &json!({ "n": n, "max_delta": worst, "tolerance": ORACLE_TOLERANCE, "rows": rows }),
                    )
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(["index", "cheb", "dense", "delta"])?;
                    for (i, (c, d)) in cheb.iter().zip(&dense).enumerate() {
                        w.write_record([
                            i.to_string(),
                            c.to_string(),
                            d.to_string(),
                            (c - d).abs().to_string(),
                        ])?;
                    }
                    w.into_inner()
                        .map_err(|e| CliError::Internal(e.to_string()))?
                }
            };
            if !passed {
                eprintln!("arspec: max delta {worst:e} exceeds {ORACLE_TOLERANCE:e}");
            }
            Ok(Report { body, passed })
        }
    }
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    k: usize,
    t_k: f64,
    reference: f64,
    delta: f64,
}

pub fn table1(format: Format) -> Result<Report, CliError> {
    let cfg = SolverConfig::default();
    let rows = T_K_REFERENCE
        .iter()
        .map(|&(n, reference)| {
            let t_k = t_k_ratio(n / 2, &cfg)?;
            Ok(TableRow {
                n,
                k: n / 2,
                t_k,
                reference,
                delta: (t_k - reference).abs(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let passed = rows.iter().all(|r| r.delta <= TABLE_TOLERANCE);
    let body = match format {
        Format::Json => json_body(&json!({ "tolerance": TABLE_TOLERANCE, "rows": rows })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "k", "t_k", "reference", "delta"])?;
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    r.k.to_string(),
                    format!("{:.10}", r.t_k),
                    format!("{:.10}", r.reference),
                    format!("{:.3e}", r.delta),
                ])?;
            }
            w.into_inner()
                .map_err(|e| CliError::Internal(e.to_string()))?
        }
    };
    Ok(Report { body, passed })
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Serialize)]
struct CheckOutcome {
    name: &'static str,
    status: Status,
    detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, ok_detail: String) -> CheckOutcome {
    if failures.is_empty() {
        CheckOutcome {
            name,
            status: Status::Pass,
            detail: ok_detail,
        }
    } else {
        let mut detail = failures[..failures.len().min(3)].join("; ");
        if failures.len() > 3 {
            let _ = write!(detail, "; and {} more", failures.len() - 3);
        }
        CheckOutcome {
            name,
            status: Status::Fail,
            detail,
        }
    }
}

fn skipped(name: &'static str, why: &str) -> CheckOutcome {
    CheckOutcome {
        name,
        status: Status::Skip,
        detail: why.to_string(),
    }
}

fn check_oracle(specs: &[SpectrumResult], dense: &[Vec<f64>], tol: f64) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (s, d) in specs.iter().zip(dense) {
        let delta = max_delta(&s.eigenvalues(), d);
        worst = worst.max(delta);
        if delta.is_nan() || delta > tol {
            failures.push(format!("n = {}: delta {delta:.3e} > {tol:e}", s.n));
        }
    }
    outcome(
        "oracle equivalence",
        failures,
        format!("max delta {worst:.2e} <= {tol:e}"),
    )
}

fn check_forbidden(specs: &[SpectrumResult]) -> CheckOutcome {
    let failures = specs
        .iter()
        .filter(|s| !forbidden_interval_check(s, 0.0))
        .map(|s| format!("n = {}", s.n))
        .collect();
    outcome(
        "forbidden interval",
        failures,
        "no nontrivial eigenvalue inside".into(),
    )
}

fn even_orders(specs: &[SpectrumResult]) -> impl Iterator<Item = &SpectrumResult> {
    specs
        .iter()
        .filter(|s| s.parity == Parity::Even && s.k >= 2)
}

fn check_monotone(specs: &[SpectrumResult]) -> CheckOutcome {
    let even: Vec<&SpectrumResult> = specs.iter().filter(|s| s.parity == Parity::Even).collect();
    let mut failures = Vec::new();
    for w in even.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b.positives[0].lambda >= a.positives[0].lambda {
            failures.push(format!("lambda+_1 not decreasing at n = {}", b.n));
        }
        if let (Some(x), Some(y)) = (a.negatives.first(), b.negatives.first()) {
            if y.lambda <= x.lambda {
                failures.push(format!("lambda-_1 not increasing at n = {}", b.n));
            }
        }
    }
    outcome(
        "monotone extreme limits",
        failures,
        format!("{} even orders", even.len()),
    )
}

fn check_brackets(specs: &[SpectrumResult]) -> CheckOutcome {
    let mut failures = Vec::new();
    for s in even_orders(specs) {
        let h = Parity::Even.spacing(s.k);
        let gamma = |j: usize| j as f64 * h;
        for (i, r) in s.positives.iter().enumerate() {
            let j = i + 1;
            let hi = if j == s.k {
                f64::INFINITY
            } else {
                f1(gamma(j))
            };
            if !(f1(gamma(j - 1)) < r.lambda && r.lambda < hi) {
                failures.push(format!("n = {}, lambda+_{j}", s.n));
            }
        }
        for (i, r) in s.negatives.iter().enumerate() {
            let j = i + 1;
            if !(f2(gamma(j)) < r.lambda && r.lambda < f2(gamma(j - 1))) {
                failures.push(format!("n = {}, lambda-_{j}", s.n));
            }
        }
        if s.positives.len() != s.k || s.negatives.len() != s.k - 1 {
            failures.push(format!("n = {}: wrong root count", s.n));
        }
    }
    outcome(
        "bracket containment",
        failures,
        "every root inside its bracket".into(),
    )
}

fn check_extremes(specs: &[SpectrumResult]) -> Result<CheckOutcome, CliError> {
    let mut failures = Vec::new();
    for s in even_orders(specs) {
        if !extreme_eigenvalue_bounds(s)?.holds() {
            failures.push(format!("n = {}", s.n));
        }
    }
    Ok(outcome(
        "extreme eigenvalue bounds",
        failures,
        "lambda_max > n/2 and lambda_min bound hold".into(),
    ))
}

fn check_symmetry(specs: &[SpectrumResult]) -> Result<CheckOutcome, CliError> {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for s in even_orders(specs) {
        for j in 1..s.k {
            let d = symmetry_defect(s, j)?;
            let b = symmetry_bound(Parity::Even, s.k, j)?;
            worst = worst.max(d / b);
            if d > b {
                failures.push(format!("n = {}, j = {j}: {d:e} > {b:e}", s.n));
            }
        }
    }
    Ok(outcome(
        "pair symmetry bound",
        failures,
        format!("max defect/bound {worst:.3}"),
    ))
}

fn check_estimates(specs: &[SpectrumResult]) -> Result<CheckOutcome, CliError> {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for s in even_orders(specs) {
        for j in 1..s.k {
            let e = eigenvalue_estimates(s.k, j)?;
            let dp = (s.positives[j - 1].lambda - e.est_pos).abs();
            let dn = (s.negatives[j - 1].lambda - e.est_neg).abs();
            worst = worst.max(dp.max(dn) / e.err_bound);
            if dp > e.err_bound || dn > e.err_bound {
                failures.push(format!("n = {}, j = {j}", s.n));
            }
        }
    }
    Ok(outcome(
        "asymptote estimate bound",
        failures,
        format!("max error/bound {worst:.3}"),
    ))
}

fn check_laplacian(n_max: usize) -> Result<CheckOutcome, CliError> {
    let failures = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let a = adjacency_from_sequence(&antiregular_sequence(n)?);
            let got = jacobi_eigenvalues(&laplacian(&a)?.to_real(), DEFAULT_TOLERANCE)?.eigenvalues;
            let skip = n.div_ceil(2);
            let want: Vec<f64> = (0..=n).filter(|&x| x != skip).map(|x| x as f64).collect();
            Ok((n, max_delta(&got, &want)))
        })
        .collect::<Result<Vec<_>, CliError>>()?
        .into_iter()
        .filter(|&(_, d)| d >= LAPLACIAN_TOLERANCE)
        .map(|(n, d)| format!("n = {n}: off by {d:e}"))
        .collect();
    Ok(outcome(
        "Laplacian integer spectrum",
        failures,
        "{0..n} minus floor((n+1)/2)".into(),
    ))
}

pub fn verify(n_max: usize, oracle_tol: f64, format: Option<Format>) -> Result<Report, CliError> {
    let cfg = SolverConfig::default();
    let specs = (2..=n_max)
        .into_par_iter()
        .map(|n| solve_spectrum(n, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let dense = (2..=n_max)
        .into_par_iter()
        .map(dense_spectrum)
        .collect::<Result<Vec<_>, _>>()?;

    let mut checks = vec![
        check_oracle(&specs, &dense, oracle_tol),
        check_forbidden(&specs),
    ];
    if n_max >= 4 {
        checks.push(check_monotone(&specs));
        checks.push(check_brackets(&specs));
        checks.push(check_extremes(&specs)?);
        checks.push(check_symmetry(&specs)?);
        checks.push(check_estimates(&specs)?);
    } else {
        let why = "needs an even order n >= 4; skipped for n_max < 4";
        for name in [
            "monotone extreme limits",
            "bracket containment",
            "extreme eigenvalue bounds",
            "pair symmetry bound",
            "asymptote estimate bound",
        ] {
            checks.push(skipped(name, why));
        }
    }
    checks.push(check_laplacian(n_max)?);

    let passed = checks.iter().all(|c| c.status != Status::Fail);
    let body = match format {
        Some(Format::Json) => {
            json_body(&json!({ "n_max": n_max, "passed": passed, "checks": checks }))
        }
        Some(Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "status", "detail"])?;
            for c in &checks {
                let status = serde_json::to_value(c.status).expect("status serializes");
                w.write_record([c.name, status.as_str().unwrap_or_default(), &c.detail])?;
            }
            w.into_inner()
                .map_err(|e| CliError::Internal(e.to_string()))?
        }
        None => {
            let mut text = String::new();
            for c in &checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                let _ = writeln!(text, "{tag}  {}: {}", c.name, c.detail);
            }
            let _ = writeln!(
                text,
                "n = 2..{n_max}: {}",
                if passed {
                    "all checks passed"
                } else {
                    "FAILED"
                }
            );
            text.into_bytes()
        }
    };
    Ok(Report { body, passed })
}

fn scan_passed(report: &ScanReport, check: Check) -> bool {
    match check {
        Check::Omega => report.omega_passed(),
        Check::Extremal => report.extremes_attained(),
        Check::Both => report.omega_passed() && report.extremes_attained(),
    }
}

pub fn scan(n: usize, check: Check, format: Format) -> Result<Report, CliError> {
    let report = scan_all(n)?;
    let passed = scan_passed(&report, check);
    let body = match format {
        Format::Json => {
            let mut v = report.to_json();
            v["check"] = json!(format!("{check:?}").to_lowercase());
            json_body(&v)
        }
        Format::Csv if check == Check::Extremal => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["quantity", "sequence", "value", "antiregular_value"])?;
            let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            if let Some(m) = &report.min_positive {
                w.write_record([
                    "min_positive",
                    &m.sequence,
                    &m.value.to_string(),
                    &fmt(report.antiregular_min_positive),
                ])?;
            }
            if let Some(m) = &report.max_nontrivial_negative {
                w.write_record([
                    "max_nontrivial_negative",
                    &m.sequence,
                    &m.value.to_string(),
                    &fmt(report.antiregular_max_negative),
                ])?;
            }
            w.into_inner()
                .map_err(|e| CliError::Internal(e.to_string()))?
        }
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_violations_csv(&mut buf)?;
            buf
        }
    };
    Ok(Report { body, passed })
}

pub fn density(n: usize, bins: usize, format: Format) -> Result<Report, CliError> {
    let values = solve_spectrum(n, &SolverConfig::default())?.eigenvalues();
    let lo = values[0];
    let hi = values[values.len() - 1];
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &l in &values {
        let i = (((l - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let edges = |i: usize| {
        (
            lo + i as f64 * width,
            if i + 1 == bins {
                hi
            } else {
                lo + (i + 1) as f64 * width
            },
        )
    };
    let body = match format {
        Format::Json => {
            let rows: Vec<_> = counts
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let (a, b) = edges(i);
                    json!({ "bin_lo": a, "bin_hi": b, "count": c })
                })
                .collect();
            json_body(&json!({ "n": n, "bins": rows }))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["bin_lo", "bin_hi", "count"])?;
            for (i, c) in counts.iter().enumerate() {
                let (a, b) = edges(i);
                w.write_record([a.to_string(), b.to_string(), c.to_string()])?;
            }
            w.into_inner()
                .map_err(|e| CliError::Internal(e.to_string()))?
        }
    };
    Ok(Report { body, passed: true })
}
