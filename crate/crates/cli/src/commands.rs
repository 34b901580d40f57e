use hardy_lambda::duality::{functional_from_kernel, kernel_from_form, verify_certificate, CertificateReport, VerifyOptions};
use hardy_lambda::hardy::BoundaryForm;
use hardy_lambda::lambda::{classify_form_with, midpoint_decompose, trace_slice};
use hardy_lambda::nehari::{extremal_solve, ExtremalOptions};
use hardy_lambda::oracle::{oracle_support, OracleOptions};
use hardy_lambda::C64;
use serde::Serialize;

use crate::problem::{to_c, to_pairs, Pair, Problem, Settings};
use crate::Failure;

const CIRCLE_TOL: f64 = 1e-7;

#[derive(Serialize)]
struct FormDoc {
    ell: usize,
    w_zeros: Vec<Pair>,
    q: Vec<Pair>,
    #[serde(rename = "A")]
    scale: f64,
    values: Vec<Pair>,
}

impl FormDoc {
    fn new(f: &BoundaryForm<f64>) -> Self {
        Self {
            ell: f.ell(),
            w_zeros: to_pairs(f.w_zeros()),
            q: to_pairs(f.q().coeffs()),
            scale: f.scale(),
            values: to_pairs(&f.values()),
        }
    }
}

fn json<T: Serialize>(doc: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(doc)
        .map(|s| s + "\n")
        .map_err(|e| Failure::Invariant(format!("serialization: {e}")))
}

fn verify_options(s: &Settings) -> VerifyOptions<f64> {
    VerifyOptions { grid: s.grid, eq_tol: s.tol, seed: s.seed, ..VerifyOptions::default() }
}

pub fn extremal(p: &Problem, s: &Settings) -> Result<String, Failure> {
    #[derive(Serialize)]
    struct Doc {
        support: f64,
        c_normalized: Vec<Pair>,
        #[serde(rename = "F")]
        form: FormDoc,
        unique: bool,
        certificate_report: CertificateReport<f64>,
    }
    let c = p.functional()?;
    let sol = extremal_solve(&c, &ExtremalOptions { grid: s.grid, ..ExtremalOptions::default() })?;
    let report = verify_certificate(&sol.form, &sol.kernel, &sol.functional, &verify_options(s))?;
    if !report.passed {
        eprintln!("warning: certificate failed: {}", report.failures.join("; "));
    }
    json(&Doc {
        support: sol.support,
        c_normalized: to_pairs(sol.functional.coeffs()),
        form: FormDoc::new(&sol.form),
        unique: sol.unique,
        certificate_report: report,
    })
}

pub fn classify(p: &Problem, s: &Settings) -> Result<String, Failure> {
    #[derive(Serialize)]
    struct Doc {
        kind: &'static str,
        q_roots: Vec<Pair>,
        nearest_circle_distance: Option<f64>,
        certificate_report: Option<CertificateReport<f64>>,
    }
    let f = p.form(CIRCLE_TOL)?;
    let cl = classify_form_with(&f, &verify_options(s), CIRCLE_TOL)?;
    let roots = if f.q().degree().unwrap_or(0) > 0 { f.q().roots(1e-12)? } else { Vec::new() };
    json(&Doc {
        kind: cl.kind.as_str(),
        q_roots: to_pairs(&roots),
        nearest_circle_distance: cl.nearest_circle_distance,
        certificate_report: cl.report,
    })
}

fn parse_plane(text: &str, n: usize) -> Result<(Vec<C64>, Vec<C64>), Failure> {
    let basis: Vec<Vec<Pair>> =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("--plane: {e}")))?;
    if basis.len() != 2 {
        return Err(Failure::Input(format!("--plane: expected 2 vectors, got {}", basis.len())));
    }
    for (i, v) in basis.iter().enumerate() {
        if v.len() != n {
            return Err(Failure::Input(format!("--plane[{i}]: expected {n} entries, got {}", v.len())));
        }
    }
    let conv = |v: &[Pair]| v.iter().map(to_c).collect::<Vec<_>>();
    Ok((conv(&basis[0]), conv(&basis[1])))
}

pub fn slice(p: &Problem, _s: &Settings, plane: Option<&str>, steps: usize) -> Result<String, Failure> {
    let n = p.nodes.len();
    let (e1, e2) = match plane {
        Some(text) => parse_plane(text, n)?,
        None => {
            let mut e1 = vec![C64::new(0.0, 0.0); n];
            let mut e2 = e1.clone();
            e1[0] = C64::new(1.0, 0.0);
            e2[0] = C64::new(0.0, 1.0);
            (e1, e2)
        }
    };
    Ok(trace_slice(&p.nodes, &e1, &e2, steps)?.to_csv())
}

pub fn decompose(p: &Problem, _s: &Settings) -> Result<String, Failure> {
    #[derive(Serialize)]
    struct Doc {
        #[serde(rename = "F1")]
        first: FormDoc,
        #[serde(rename = "F2")]
        second: FormDoc,
        midpoint_error: f64,
        separation: f64,
    }
    let f = p.form(CIRCLE_TOL)?;
    let d = midpoint_decompose(&f)?;
    json(&Doc {
        first: FormDoc::new(&d.first),
        second: FormDoc::new(&d.second),
        midpoint_error: d.midpoint_error,
        separation: d.separation,
    })
}

pub fn verify(p: &Problem, s: &Settings) -> Result<String, Failure> {
    #[derive(Serialize)]
    struct Doc {
        c: Vec<Pair>,
        #[serde(flatten)]
        report: CertificateReport<f64>,
    }
    let f = p.form(CIRCLE_TOL)?;
    let k = kernel_from_form(&f);
    let c = if p.has_functional() { p.functional()? } else { functional_from_kernel(&k)? };
    let report = verify_certificate(&f, &k, &c, &verify_options(s))?;
    if !report.passed {
        eprintln!("certificate failed: {}", report.failures.join("; "));
    }
    json(&Doc { c: to_pairs(c.coeffs()), report })
}

pub fn oracle(p: &Problem, s: &Settings) -> Result<String, Failure> {
    #[derive(Serialize)]
    struct Doc {
        oracle_value: f64,
        solver_value: f64,
        gap: f64,
        relative_gap: f64,
        converged: bool,
        iterations: usize,
        ladder: Vec<(usize, f64)>,
    }
    let c = p.functional()?;
    let solver = hardy_lambda::nehari::support_function(&c)?;
    let o = oracle_support(&c, &OracleOptions { degree: s.deg, grid: s.grid, ..OracleOptions::default() })?;
    if !o.converged {
        eprintln!("warning: reference solver stopped after {} iterations", o.iterations);
    }
    json(&Doc {
        oracle_value: o.value,
        solver_value: solver,
        gap: solver - o.value,
        relative_gap: (solver - o.value) / solver,
        converged: o.converged,
        iterations: o.iterations,
        ladder: o.ladder,
    })
}
