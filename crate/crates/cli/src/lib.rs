//! JSON problem files in, bound tables and CSV/JSON artifacts out.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use eigenbound::bounds::{full_report, p_limit_scan, BoundReport, DomainInput, PScanRow, DEFAULT_K_MAX, DEFAULT_TOL};
use eigenbound::geometry::{inradius, DomainSpec, Shape};
use eigenbound::oracle::{fd_laplacian_lambda1, GridEigenResult};
use eigenbound::radial::{profile_table, OperatorSpec};
use eigenbound::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Rows in the profile CSV.
const PROFILE_ROWS: usize = 201;
/// Default grid spacing as a fraction of the inradius.
const GRID_PER_INRADIUS: f64 = 64.0;

#[derive(Debug, Parser)]
#[command(name = "eigenbound", version, about = "Certified bounds for principal Dirichlet eigenvalues")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the bound report for a JSON problem file.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub file: PathBuf,
    /// Write the report as JSON.
    #[arg(long, value_name = "OUT")]
    pub json: Option<PathBuf>,
    /// Write the certificate profile as CSV (r, phi, dphi, residual).
    #[arg(long, value_name = "OUT")]
    pub profile_csv: Option<PathBuf>,
    /// Write the oracle eigenvector as CSV (x, y, value); implies --oracle.
    #[arg(long, value_name = "OUT")]
    pub field_csv: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    pub k_max: Option<usize>,
    /// Residual tolerance for the certificate.
    #[arg(long, value_name = "X")]
    pub tol: Option<f64>,
    /// Run the finite-difference oracle (planar Laplacian only).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_name = "H")]
    pub grid_h: Option<f64>,
    /// Comma-separated increasing p values; prints p-Laplacian bounds for each.
    #[arg(long, value_name = "P1,P2,...", value_delimiter = ',', num_args = 1)]
    pub p_scan: Option<Vec<f64>>,
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub operator: OperatorSpec,
    pub domain: Option<DomainFile>,
    pub inradius_only: Option<f64>,
    pub convex: Option<bool>,
    #[serde(default)]
    pub options: Options,
}

/// A shape plus an optional dimension; balls take the operator's dimension
/// when none is given.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct DomainFile {
    pub dimension: Option<usize>,
    #[serde(flatten)]
    pub shape: Shape,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub k_max: Option<usize>,
    pub tol: Option<f64>,
    #[serde(default)]
    pub oracle: bool,
    pub grid_h: Option<f64>,
    pub emit_profile: Option<PathBuf>,
    pub emit_field: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_)
            | Error::Argument(_)
            | Error::Geometry(_)
            | Error::Unsupported(_)
            | Error::Route(_)
            | Error::Range(_) => EXIT_USAGE,
            Error::Numeric(_) | Error::Construction(_) | Error::SingularPoint(_) | Error::Consistency(_) => {
                EXIT_NUMERIC
            }
        };
        CliError { code, message: e.to_string() }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::usage(format!("{}: {e}", path.display()))
}

/// Parses a problem file; schema errors carry the JSON path of the offending value.
pub fn parse_problem(text: &str) -> Result<ProblemFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::usage(format!("invalid problem file at {path}: {}", e.inner()))
    })
}

pub fn domain_input(problem: &ProblemFile) -> Result<DomainInput, CliError> {
    problem.operator.validate()?;
    match (&problem.domain, problem.inradius_only) {
        (Some(d), None) => {
            if problem.convex.is_some() {
                return Err(CliError::usage("\"convex\" only applies together with \"inradius_only\""));
            }
            let dimension = match (&d.shape, d.dimension) {
                (Shape::Ball { .. }, None) => Some(problem.operator.dimension().ok_or_else(|| {
                    CliError::usage("ball needs \"dimension\" for an operator without one")
                })?),
                (_, dim) => dim,
            };
            Ok(DomainInput::Shape(DomainSpec::new(d.shape.clone(), dimension)?))
        }
        (None, Some(r)) => {
            if !(r.is_finite() && r > 0.0) {
                return Err(CliError::usage(format!("inradius_only must be finite and positive, got {r}")));
            }
            Ok(DomainInput::InradiusOnly { inradius: r, convex: problem.convex.unwrap_or(false) })
        }
        _ => Err(CliError::usage("exactly one of \"domain\" and \"inradius_only\" is required")),
    }
}

/// Everything a run produces, before any of it is written.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: BoundReport,
    pub oracle: Option<GridEigenResult>,
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{name} must be finite and positive, got {v}")))
    }
}

pub fn solve(problem: &ProblemFile, args: &RunArgs) -> Result<Outcome, CliError> {
    let domain = domain_input(problem)?;
    let k_max = args.k_max.or(problem.options.k_max).unwrap_or(DEFAULT_K_MAX);
    let tol = positive("tol", args.tol.or(problem.options.tol).unwrap_or(DEFAULT_TOL))?;
    let report = full_report(&problem.operator, &domain, k_max, tol)?;
    let want_oracle = args.oracle || problem.options.oracle || field_path(problem, args).is_some();
    let oracle = if want_oracle {
        let spec = match (&domain, problem.operator) {
            (DomainInput::Shape(d), OperatorSpec::Laplacian { n: 2 }) => d,
            _ => return Err(CliError::usage("the grid oracle needs the Laplacian with n = 2 and a planar domain")),
        };
        let h = match args.grid_h.or(problem.options.grid_h) {
            Some(h) => positive("grid_h", h)?,
            None => inradius(spec)? / GRID_PER_INRADIUS,
        };
        Some(fd_laplacian_lambda1(spec, h, tol)?)
    } else {
        None
    };
    Ok(Outcome { report, oracle })
}

fn field_path<'a>(problem: &'a ProblemFile, args: &'a RunArgs) -> Option<&'a PathBuf> {
    args.field_csv.as_ref().or(problem.options.emit_field.as_ref())
}

fn describe_operator(op: &OperatorSpec) -> String {
    match *op {
        OperatorSpec::Laplacian { n } => format!("laplacian n={n}"),
        OperatorSpec::PLaplacian { p, n } => format!("p_laplacian p={p} n={n}"),
        OperatorSpec::InfinityLaplacian => "infinity_laplacian".into(),
        OperatorSpec::PucciMax { gamma, big_gamma, n } => format!("pucci_max gamma={gamma} Gamma={big_gamma} n={n}"),
        OperatorSpec::GradientLimit => "gradient_limit".into(),
    }
}

fn label<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

pub fn format_table(outcome: &Outcome) -> String {
    let r = &outcome.report;
    let mut s = String::new();
    let mut row = |k: &str, v: String| {
        let _ = writeln!(s, "{k:<16}{v}");
    };
    row("operator", describe_operator(&r.operator));
    match r.inradius_resolution {
        Some(h) => row("R", format!("{} (resolution {h:e})", r.inradius)),
        None => row("R", r.inradius.to_string()),
    }
    if let (Some(d), Some(rd)) = (r.delta_used, r.r_delta_used) {
        row("delta", d.to_string());
        row("R_delta", rd.to_string());
    }
    let gap = r
        .zero_gap_used
        .map(|g| format!(" (k={}, x={}, y={})", g.k, g.x, g.y))
        .unwrap_or_default();
    row("lower", format!("{}  {}{gap}", r.lower, label(&r.lower_method)));
    match (r.upper, r.upper_method) {
        (Some(u), Some(m)) => row("upper", format!("{u}  {}", label(&m))),
        _ => row("upper", "none".into()),
    }
    if let Some(rfk) = r.rfk {
        row("RFK", rfk.to_string());
    }
    if let Some(o) = &outcome.oracle {
        row("oracle lambda_h", format!("{} (h={}, {} iterations)", o.lambda_h, o.h, o.iterations));
    }
    let c = &r.certificate.residual;
    row(
        "residual",
        format!(
            "max {:e} over {} samples on [{}, {}], {}",
            c.max_residual,
            c.samples,
            c.interval[0],
            c.interval[1],
            if c.verified { "verified" } else { "NOT verified" }
        ),
    );
    let scale = if r.operator == OperatorSpec::GradientLimit { "length^-1" } else { "length^-2" };
    let _ = writeln!(s, "eigenvalues scale as {scale}");
    s
}

pub fn report_json(report: &BoundReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

pub fn profile_csv(report: &BoundReport) -> Result<String, CliError> {
    let rows = profile_table(&report.operator, &report.certificate.profile, report.lower, PROFILE_ROWS)?;
    let mut s = String::from("r,phi,dphi,residual\n");
    for [r, phi, dphi, res] in rows {
        let _ = writeln!(s, "{r},{phi},{dphi},{res}");
    }
    Ok(s)
}

pub fn field_csv(result: &GridEigenResult) -> String {
    let mut s = String::from("x,y,value\n");
    for [x, y, v] in result.eigenvector.iter().flatten() {
        let _ = writeln!(s, "{x},{y},{v}");
    }
    s
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_error(path, e))
}

/// Plain decimals, switching to exponent form for very small or large magnitudes.
fn num(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e15) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn scan_table(rows: &[PScanRow], r: f64) -> String {
    let limit = (std::f64::consts::PI / (2.0 * r)).powi(2);
    let mut s = String::new();
    let _ = writeln!(s, "{:<12}{:<24}{:<24}{:<24}{:<24}{:<24}", "p", "lower", "upper", "(pi/2R)^2", "limit-lower", "upper-limit");
    let cell = |v: Option<f64>| v.map_or_else(|| "-".to_string(), num);
    for row in rows {
        if let Some(note) = &row.note {
            let _ = writeln!(s, "{:<12}{note}", row.p);
            continue;
        }
        let _ = writeln!(
            s,
            "{:<12}{:<24}{:<24}{:<24}{:<24}{:<24}",
            row.p,
            cell(row.lower),
            cell(row.upper),
            num(limit),
            cell(row.lower.map(|l| limit - l)),
            cell(row.upper.map(|u| u - limit)),
        );
    }
    s
}

fn run_scan(problem: &ProblemFile, args: &RunArgs, p_list: &[f64], out: &mut dyn Write) -> Result<(), CliError> {
    let domain = domain_input(problem)?;
    let (n, r) = match &domain {
        DomainInput::Shape(d) => (problem.operator.dimension().unwrap_or(d.dimension()), inradius(d)?),
        DomainInput::InradiusOnly { inradius, .. } => (
            problem
                .operator
                .dimension()
                .ok_or_else(|| CliError::usage("p-scan needs a dimension from the operator or the domain"))?,
            *inradius,
        ),
    };
    let rows = p_limit_scan(n, r, p_list)?;
    for row in &rows {
        if let Some(note) = &row.note {
            eprintln!("warning: {note}");
        }
    }
    if let Some(path) = &args.json {
        let mut text = serde_json::to_string_pretty(&rows).expect("rows serialize");
        text.push('\n');
        write_file(path, &text)?;
    }
    if !args.quiet {
        out.write_all(scan_table(&rows, r).as_bytes()).map_err(|e| CliError::usage(e.to_string()))?;
    }
    Ok(())
}

pub fn run(args: &RunArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.file).map_err(|e| io_error(&args.file, e))?;
    let problem = parse_problem(&text)?;
    if let Some(p_list) = &args.p_scan {
        return run_scan(&problem, args, p_list, out);
    }
    let outcome = solve(&problem, args)?;
    if let Some(path) = &args.json {
        write_file(path, &report_json(&outcome.report))?;
    }
    if let Some(path) = args.profile_csv.as_ref().or(problem.options.emit_profile.as_ref()) {
        write_file(path, &profile_csv(&outcome.report)?)?;
    }
    if let (Some(path), Some(o)) = (field_path(&problem, args), &outcome.oracle) {
        write_file(path, &field_csv(o))?;
    }
    if !args.quiet {
        out.write_all(format_table(&outcome).as_bytes()).map_err(|e| CliError::usage(e.to_string()))?;
    }
    Ok(())
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let Command::Run(run_args) = cli.command;
    let stdout = std::io::stdout();
    match run(&run_args, &mut stdout.lock()) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_a_path() {
        let e = parse_problem(r#"{"operator":{"family":"laplacian","n":-1},"inradius_only":1}"#).unwrap_err();
        assert_eq!(e.code, EXIT_USAGE);
        assert!(e.message.contains("operator"), "{}", e.message);
    }

    #[test]
    fn ball_takes_operator_dimension() {
        let p = parse_problem(r#"{"operator":{"family":"laplacian","n":3},"domain":{"shape":"ball","radius":1}}"#)
            .unwrap();
        match domain_input(&p).unwrap() {
            DomainInput::Shape(d) => assert_eq!(d.dimension(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn domain_and_inradius_are_exclusive() {
        let p = parse_problem(
            r#"{"operator":{"family":"gradient_limit"},"domain":{"shape":"box","sides":[1,1]},"inradius_only":1}"#,
        )
        .unwrap();
        assert_eq!(domain_input(&p).unwrap_err().code, EXIT_USAGE);
        let p = parse_problem(r#"{"operator":{"family":"gradient_limit"}}"#).unwrap();
        assert_eq!(domain_input(&p).unwrap_err().code, EXIT_USAGE);
    }

    #[test]
    fn unknown_shape_fields_are_rejected() {
        let e = parse_problem(
            r#"{"operator":{"family":"gradient_limit"},"domain":{"shape":"box","sides":[1,1],"colour":1}}"#,
        );
        assert!(e.is_err());
    }
}
