//! Command line front end: every pipeline of the core library behind one
//! executable with deterministic seeds and machine-readable reports.
//!
//! All JSON reports carry a top-level `"schema": "1"` field and sorted keys.
//! Exit codes: 0 for success or a consistent verdict, 2 for a mathematically
//! negative verdict (asymmetric collection, hypothesis violation, nonzero
//! residual), 1 for operational errors.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use billiard_lab_core::billiard::{invariance_residual, orbit, Ellipse};
use billiard_lab_core::invariants::curve_invariants;
use billiard_lab_core::polycore::{homogenize, parse_polynomial, BivariatePolynomial};
use billiard_lab_core::puiseux::{branches_at_infinity, puiseux_branches, DEFAULT_MAX_TERMS};
use billiard_lab_core::symmetry::{
    project_to_curve, relative_symmetry_report, sample_curve_points, DEFAULT_SYMMETRY_TOL,
};
use billiard_lab_core::theorems::{
    audit_collection, certify_conic_affine, default_scan_coefficients, default_t_sequence,
    lemma_scan, verify_tangent_asymptotics, ConicVerdict, GermTriple, TrackedCoordinate,
    DEFAULT_SCAN_MAX_P,
};

type C = Complex64;
type AnyError = Box<dyn std::error::Error>;
type RunResult = Result<u8, AnyError>;

const EXIT_OK: u8 = 0;
const EXIT_VERDICT: u8 = 2;

/// Outer billiards, plane-curve singularities and the root-symmetry audit.
#[derive(Parser)]
#[command(name = "billiard-lab", version, about)]
struct RunConfig {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Coordinate {
    Z,
    W,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep random outside points of an ellipse and report the invariance
    /// residual |f(T(A)) - f(A)| of a candidate polynomial integral.
    Invariance {
        /// Ellipse semi-axes.
        #[arg(long = "curve-ellipse", value_name = "A,B")]
        curve_ellipse: String,
        /// Candidate integral, a polynomial in x and y.
        #[arg(long)]
        integral: String,
        /// Number of sampled outside points.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Verdict threshold on the max residual.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Iterate the outer billiard map and emit the orbit as CSV
    /// (columns: k, x, y, s, residual) plus a JSON summary.
    Orbit {
        #[arg(long = "curve-ellipse", value_name = "A,B")]
        curve_ellipse: String,
        /// Initial point outside the curve.
        #[arg(long, value_name = "X,Y")]
        start: String,
        /// Number of map iterations.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Optional integral; its drift fills the residual column.
        #[arg(long)]
        integral: Option<String>,
        /// Tangency refinement tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Write the orbit table to this CSV file.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
    /// Check the relative symmetry of tangent-line intersection multisets
    /// of {psi = 0} inside {gamma = 0}.
    Symmetry {
        /// Curve whose tangent lines are taken.
        #[arg(long)]
        psi: String,
        /// Containing curve intersected with each tangent line.
        #[arg(long)]
        gamma: String,
        /// `auto` to sample points on the curve, or a file of `x,y` lines.
        #[arg(long, default_value = "auto")]
        points: String,
        /// Number of sampled points in auto mode.
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SYMMETRY_TOL)]
        tol: f64,
    },
    /// Newton-Puiseux branches of a curve at an affine point or along the
    /// infinity line.
    Puiseux {
        #[arg(long)]
        curve: String,
        /// Affine base point.
        #[arg(long, value_name = "X,Y", conflicts_with = "infinity")]
        at: Option<String>,
        /// Expand at the intersection with the infinity line instead.
        #[arg(long)]
        infinity: bool,
        /// Series terms kept per branch.
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        terms: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Singularity invariants (s, s*, kappa, delta, h), genus and the
    /// Pluecker residual of a curve, or of a whole corpus directory.
    Invariants {
        #[arg(long, required_unless_present = "corpus")]
        curve: Option<String>,
        /// Include infinity-chart records, genus and the Pluecker residual.
        #[arg(long)]
        projective: bool,
        /// Directory of `.txt` curve files; emits a summary table
        /// (CSV columns: name, degree, genus, delta_sum, hessian_sum,
        /// pluecker_residual).
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
        /// Write the corpus summary table to this CSV file.
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// The Pluecker identity 3d(d-2) = sum of Hessian invariants.
    Pluecker {
        #[arg(long)]
        curve: String,
    },
    /// Audit a collection of germ triples (p,q,c) with shared ratio r:
    /// W-polynomial root powers, k1/k2 counts, M-symmetry about 1.
    Audit {
        /// Common ratio p/q, e.g. `3/2`.
        #[arg(long)]
        r: String,
        /// Inline `(p,q,c);(p,q,c);...` or a file with one triple per line.
        #[arg(long)]
        triples: String,
        /// Symmetry verdict threshold.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Scan single-triple collections over a ratio grid and flag where the
    /// M-symmetry defect vanishes.
    LemmaScan {
        /// Comma-separated ratios.
        #[arg(long, default_value = "4/3,3/2,2,5/2,3")]
        rs: String,
        #[arg(long = "max-p", default_value_t = DEFAULT_SCAN_MAX_P)]
        max_p: u32,
        /// Write the grid to this CSV file (columns: r, p, q, c_re, c_im,
        /// m_symmetry_defect, rpk1_residual, symmetric).
        #[arg(long = "table", value_name = "FILE")]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Track the intersections of the moving tangent line of a branch with
    /// a target curve along a shrinking parameter sequence.
    Asymptotics {
        /// Curve carrying the branch.
        #[arg(long)]
        curve: String,
        /// Base point of the branch.
        #[arg(long, value_name = "X,Y", default_value = "0,0")]
        at: String,
        /// Branch index at the base point.
        #[arg(long, default_value_t = 0)]
        branch: usize,
        /// Curve intersected with each tangent line.
        #[arg(long)]
        target: String,
        /// Coordinate whose scaling factor is tracked.
        #[arg(long, value_enum, default_value_t = Coordinate::Z)]
        coordinate: Coordinate,
    },
    /// Certify that a curve satisfying the no-singularity/no-inflection
    /// hypotheses with subquadratic infinity branches is a conic.
    Certify {
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(config: RunConfig) -> RunResult {
    let out = config.out.as_deref();
    match config.command {
        Command::Invariance {
            curve_ellipse,
            integral,
            n,
            seed,
            tol,
        } => run_invariance(&curve_ellipse, &integral, n, seed, tol, out),
        Command::Orbit {
            curve_ellipse,
            start,
            n,
            integral,
            tol,
            csv,
        } => run_orbit(&curve_ellipse, &start, n, integral.as_deref(), tol, csv.as_deref(), out),
        Command::Symmetry {
            psi,
            gamma,
            points,
            n,
            tol,
        } => run_symmetry(&psi, &gamma, &points, n, tol, out),
        Command::Puiseux {
            curve,
            at,
            infinity,
            terms,
            tol,
        } => run_puiseux(&curve, at.as_deref(), infinity, terms, tol, out),
        Command::Invariants {
            curve,
            projective,
            corpus,
            csv,
            tol,
        } => match corpus {
            Some(dir) => run_invariants_corpus(&dir, csv.as_deref(), tol, out),
            None => run_invariants(curve.as_deref().unwrap(), projective, tol, out),
        },
        Command::Pluecker { curve } => run_pluecker(&curve, out),
        Command::Audit { r, triples, tol } => run_audit(&r, &triples, tol, out),
        Command::LemmaScan {
            rs,
            max_p,
            table,
            tol,
        } => run_lemma_scan(&rs, max_p, table.as_deref(), tol, out),
        Command::Asymptotics {
            curve,
            at,
            branch,
            target,
            coordinate,
        } => run_asymptotics(&curve, &at, branch, &target, coordinate, out),
        Command::Certify { curve, tol } => run_certify(&curve, tol, out),
    }
}

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

fn run_invariance(
    ellipse_spec: &str,
    integral: &str,
    n: usize,
    seed: u64,
    tol: f64,
    out: Option<&Path>,
) -> RunResult {
    let (a, b) = parse_pair(ellipse_spec)?;
    let ellipse = Ellipse::new(a, b);
    let f = parse_poly(integral)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual = 0.0f64;
    let mut sum = 0.0f64;
    for _ in 0..n {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let u = rng.gen_range(1.2..3.0);
        let point = (a * u * theta.cos(), b * u * theta.sin());
        let residual = invariance_residual(&ellipse, &f, point, 1e-12)?;
        max_residual = max_residual.max(residual);
        sum += residual;
    }
    let invariant = max_residual <= tol;
    emit(
        json!({
            "schema": "1",
            "curve": ellipse_spec_string(a, b),
            "integral": f.to_string(),
            "n": n,
            "seed": seed,
            "tol": tol,
            "max_residual": max_residual,
            "mean_residual": if n > 0 { sum / n as f64 } else { 0.0 },
            "invariant": invariant,
        }),
        out,
    )?;
    Ok(if invariant { EXIT_OK } else { EXIT_VERDICT })
}

fn run_orbit(
    ellipse_spec: &str,
    start_spec: &str,
    n: usize,
    integral: Option<&str>,
    tol: f64,
    csv: Option<&Path>,
    out: Option<&Path>,
) -> RunResult {
    let (a, b) = parse_pair(ellipse_spec)?;
    let ellipse = Ellipse::new(a, b);
    let start = parse_pair(start_spec)?;
    let f = integral.map(parse_poly).transpose()?;
    let rec = orbit(&ellipse, start, n, tol, f.as_ref())?;
    if let Some(path) = csv {
        let mut table = String::from("k,x,y,s,residual\n");
        for (k, ((x, y), (s, residual))) in rec
            .points
            .iter()
            .zip(rec.tangency_params.iter().zip(&rec.residuals))
            .enumerate()
        {
            table.push_str(&format!("{k},{x},{y},{s},{residual}\n"));
        }
        fs::write(path, table)?;
    }
    let tail = &rec.residuals[1..];
    let max_residual = tail.iter().copied().fold(0.0f64, f64::max);
    let mean_residual = if tail.is_empty() {
        0.0
    } else {
        tail.iter().sum::<f64>() / tail.len() as f64
    };
    emit(
        json!({
            "schema": "1",
            "curve": ellipse_spec_string(a, b),
            "start": [start.0, start.1],
            "n": n,
            "integral": f.map(|p| p.to_string()),
            "max_residual": max_residual,
            "mean_residual": mean_residual,
            "csv": csv.map(|p| p.display().to_string()),
        }),
        out,
    )?;
    Ok(EXIT_OK)
}

fn run_symmetry(
    psi_spec: &str,
    gamma_spec: &str,
    points: &str,
    n: usize,
    tol: f64,
    out: Option<&Path>,
) -> RunResult {
    let psi = parse_poly(psi_spec)?;
    let gamma = parse_poly(gamma_spec)?;
    let samples = if points == "auto" {
        auto_curve_samples(&psi, n)?
    } else {
        fs::read_to_string(points)?
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .map(|l| {
                let (x, y) = parse_pair(l)?;
                Ok((C::new(x, 0.0), C::new(y, 0.0)))
            })
            .collect::<Result<Vec<_>, AnyError>>()?
    };
    let mut reports = Vec::with_capacity(samples.len());
    for &t in &samples {
        reports.push(relative_symmetry_report(&psi, &gamma, t, tol)?);
    }
    let max_defect = reports.iter().map(|r| r.defect).fold(0.0f64, f64::max);
    let all_symmetric = reports.iter().all(|r| r.symmetric);
    emit(
        json!({
            "schema": "1",
            "psi": psi.to_string(),
            "gamma": gamma.to_string(),
            "tol": tol,
            "points": samples.len(),
            "max_defect": max_defect,
            "all_symmetric": all_symmetric,
            "reports": serde_json::to_value(&reports)?,
        }),
        out,
    )?;
    Ok(if all_symmetric { EXIT_OK } else { EXIT_VERDICT })
}

fn run_puiseux(
    curve: &str,
    at: Option<&str>,
    infinity: bool,
    terms: usize,
    tol: f64,
    out: Option<&Path>,
) -> RunResult {
    let f = parse_poly(curve)?;
    let branches = if infinity {
        let big_f = homogenize(&f, f.degree())?;
        branches_at_infinity(&big_f, terms, tol)?
    } else {
        let (x, y) = parse_pair(at.unwrap_or("0,0"))?;
        puiseux_branches(&f, (C::new(x, 0.0), C::new(y, 0.0)), terms, tol)?
    };
    emit(
        json!({
            "schema": "1",
            "curve": f.to_string(),
            "infinity": infinity,
            "branches": serde_json::to_value(&branches)?,
        }),
        out,
    )?;
    Ok(EXIT_OK)
}

fn run_invariants(curve: &str, projective: bool, tol: f64, out: Option<&Path>) -> RunResult {
    let f = parse_poly(curve)?;
    let report = curve_invariants(&f, tol)?;
    let value = if projective {
        json!({
            "schema": "1",
            "curve": f.to_string(),
            "degree": report.degree,
            "records": serde_json::to_value(&report.records)?,
            "delta_sum": report.delta_sum(),
            "hessian_sum": report.hessian_sum(),
            "genus": report.genus,
            "pluecker_residual": report.pluecker_residual,
        })
    } else {
        let affine: Vec<_> = report
            .records
            .iter()
            .filter(|r| r.chart.is_none())
            .collect();
        let delta_sum: u64 = affine.iter().map(|r| r.delta).sum();
        let hessian_sum: u64 = affine.iter().map(|r| r.hessian_h).sum();
        json!({
            "schema": "1",
            "curve": f.to_string(),
            "degree": report.degree,
            "records": serde_json::to_value(&affine)?,
            "delta_sum": delta_sum,
            "hessian_sum": hessian_sum,
        })
    };
    emit(value, out)?;
    Ok(EXIT_OK)
}

fn run_invariants_corpus(
    dir: &Path,
    csv: Option<&Path>,
    tol: f64,
    out: Option<&Path>,
) -> RunResult {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("no .txt curve files in {}", dir.display()).into());
    }
    let mut table = String::from("name,degree,genus,delta_sum,hessian_sum,pluecker_residual\n");
    let mut rows = Vec::new();
    for path in &files {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let f = parse_poly(fs::read_to_string(path)?.trim())?;
        let report = curve_invariants(&f, tol)?;
        table.push_str(&format!(
            "{name},{},{},{},{},{}\n",
            report.degree,
            report.genus,
            report.delta_sum(),
            report.hessian_sum(),
            report.pluecker_residual
        ));
        rows.push(json!({
            "name": name,
            "curve": f.to_string(),
            "degree": report.degree,
            "genus": report.genus,
            "delta_sum": report.delta_sum(),
            "hessian_sum": report.hessian_sum(),
            "pluecker_residual": report.pluecker_residual,
        }));
    }
    match csv {
        Some(path) => fs::write(path, &table)?,
        None => print!("{table}"),
    }
    if out.is_some() {
        emit(json!({ "schema": "1", "rows": rows }), out)?;
    }
    Ok(EXIT_OK)
}

fn run_pluecker(curve: &str, out: Option<&Path>) -> RunResult {
    let f = parse_poly(curve)?;
    let report = curve_invariants(&f, 1e-9)?;
    let d = report.degree as i64;
    emit(
        json!({
            "schema": "1",
            "curve": f.to_string(),
            "degree": report.degree,
            "hessian_sum": report.hessian_sum(),
            "expected": 3 * d * (d - 2),
            "residual": report.pluecker_residual,
        }),
        out,
    )?;
    Ok(if report.pluecker_residual == 0 {
        EXIT_OK
    } else {
        EXIT_VERDICT
    })
}

fn run_audit(r_spec: &str, triples_spec: &str, tol: f64, out: Option<&Path>) -> RunResult {
    let r = parse_ratio(r_spec)?;
    let triples = parse_triples(triples_spec)?;
    let audit = audit_collection(&triples, tol)?;
    if audit.r != r {
        return Err(format!("triples have ratio {}, not the requested {r}", audit.r).into());
    }
    let symmetric = audit.m_symmetry_defect <= tol;
    let mut value = serde_json::to_value(&audit)?;
    let obj = value.as_object_mut().expect("audit serializes to an object");
    obj.insert("schema".to_string(), json!("1"));
    obj.insert("tol".to_string(), json!(tol));
    obj.insert("symmetric".to_string(), json!(symmetric));
    emit(value, out)?;
    Ok(if symmetric { EXIT_OK } else { EXIT_VERDICT })
}

fn run_lemma_scan(
    rs_spec: &str,
    max_p: u32,
    table_path: Option<&Path>,
    tol: f64,
    out: Option<&Path>,
) -> RunResult {
    let rs = rs_spec
        .split(',')
        .map(|s| parse_ratio(s.trim()))
        .collect::<Result<Vec<_>, AnyError>>()?;
    let rows = lemma_scan(&rs, max_p, &default_scan_coefficients(), tol)?;
    if let Some(path) = table_path {
        let mut table =
            String::from("r,p,q,c_re,c_im,m_symmetry_defect,rpk1_residual,symmetric\n");
        for row in &rows {
            table.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                row.r, row.p, row.q, row.c.re, row.c.im, row.m_symmetry_defect,
                row.rpk1_residual, row.symmetric
            ));
        }
        fs::write(path, table)?;
    }
    let symmetric_rs: Vec<String> = {
        let mut seen: Vec<Rational64> = Vec::new();
        for row in rows.iter().filter(|row| row.symmetric) {
            if !seen.contains(&row.r) {
                seen.push(row.r);
            }
        }
        seen.iter().map(|r| r.to_string()).collect()
    };
    emit(
        json!({
            "schema": "1",
            "max_p": max_p,
            "tol": tol,
            "symmetric_ratios": symmetric_rs,
            "rows": serde_json::to_value(&rows)?,
        }),
        out,
    )?;
    Ok(EXIT_OK)
}

fn run_asymptotics(
    curve: &str,
    at: &str,
    branch: usize,
    target: &str,
    coordinate: Coordinate,
    out: Option<&Path>,
) -> RunResult {
    let f = parse_poly(curve)?;
    let target = parse_poly(target)?;
    let (x, y) = parse_pair(at)?;
    let branches = puiseux_branches(&f, (C::new(x, 0.0), C::new(y, 0.0)), 8, 1e-9)?;
    let b = branches
        .get(branch)
        .ok_or_else(|| format!("branch index {branch} out of range ({} found)", branches.len()))?;
    let coord = match coordinate {
        Coordinate::Z => TrackedCoordinate::Z,
        Coordinate::W => TrackedCoordinate::W,
    };
    let report = verify_tangent_asymptotics(b, &target, coord, &default_t_sequence())?;
    emit(
        json!({
            "schema": "1",
            "curve": f.to_string(),
            "target": target.to_string(),
            "base_point": [x, y],
            "branch": branch,
            "final_factors": serde_json::to_value(report.final_factors())?,
            "report": serde_json::to_value(&report)?,
        }),
        out,
    )?;
    Ok(EXIT_OK)
}

fn run_certify(curve: &str, tol: f64, out: Option<&Path>) -> RunResult {
    let f = parse_poly(curve)?;
    let cert = certify_conic_affine(&f, tol)?;
    let verdict = cert.verdict;
    let mut value = serde_json::to_value(&cert)?;
    let obj = value
        .as_object_mut()
        .expect("certificate serializes to an object");
    obj.insert("schema".to_string(), json!("1"));
    obj.insert("curve".to_string(), json!(f.to_string()));
    emit(value, out)?;
    Ok(if verdict == ConicVerdict::ConicConsistent {
        EXIT_OK
    } else {
        EXIT_VERDICT
    })
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

fn emit(value: Value, out: Option<&Path>) -> Result<(), AnyError> {
    let text = format!("{value:#}\n");
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn ellipse_spec_string(a: f64, b: f64) -> String {
    format!("ellipse {a},{b}")
}

fn parse_poly(s: &str) -> Result<BivariatePolynomial, AnyError> {
    Ok(parse_polynomial(s, ("x", "y"))?)
}

fn parse_pair(s: &str) -> Result<(f64, f64), AnyError> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn parse_ratio(s: &str) -> Result<Rational64, AnyError> {
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => Ok(Rational64::new(n.trim().parse()?, d.trim().parse()?)),
        None => Ok(Rational64::from_integer(t.parse()?)),
    }
}

fn parse_complex(s: &str) -> Result<C, AnyError> {
    let t: String = s.trim().replace(' ', "");
    if let Ok(re) = t.parse::<f64>() {
        return Ok(C::new(re, 0.0));
    }
    let body = t
        .strip_suffix('i')
        .ok_or_else(|| format!("cannot parse complex number `{s}`"))?;
    // split off a trailing signed imaginary part, if present
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(k, ch)| {
            (ch == '+' || ch == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
        })
        .map(|(k, _)| k)
        .last();
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>()?,
    };
    Ok(C::new(re_s.parse::<f64>()?, im))
}

fn parse_triples(spec: &str) -> Result<Vec<GermTriple>, AnyError> {
    let text = if Path::new(spec).is_file() {
        fs::read_to_string(spec)?
    } else {
        spec.to_string()
    };
    let mut out = Vec::new();
    for piece in text
        .split(|ch| ch == ';' || ch == '\n')
        .map(str::trim)
        .filter(|p| !p.is_empty() && !p.starts_with('#'))
    {
        let inner = piece
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| format!("expected `(p,q,c)`, got `{piece}`"))?;
        let parts: Vec<&str> = inner.splitn(3, ',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected `(p,q,c)`, got `{piece}`").into());
        }
        out.push(GermTriple::new(
            parts[0].parse()?,
            parts[1].parse()?,
            parse_complex(parts[2])?,
        )?);
    }
    if out.is_empty() {
        return Err("no germ triples supplied".into());
    }
    Ok(out)
}

fn auto_curve_samples(psi: &BivariatePolynomial, n: usize) -> Result<Vec<(C, C)>, AnyError> {
    let starts = [
        (1.0, 0.0),
        (0.0, 1.0),
        (0.5, 0.5),
        (1.3, 0.7),
        (0.0, 0.0),
    ];
    let mut last_err: Option<billiard_lab_core::Error> = None;
    for (x, y) in starts {
        let start = (C::new(x, 0.0), C::new(y, 0.0));
        match project_to_curve(psi, start, 1e-12)
            .and_then(|z| sample_curve_points(psi, z, n, C::new(0.3, 0.17), 1e-12))
        {
            Ok(pts) => return Ok(pts),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err
        .map(|e| e.to_string())
        .unwrap_or_else(|| "no usable starting point".to_string())
        .into())
}
