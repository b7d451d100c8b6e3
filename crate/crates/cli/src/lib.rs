//! Command-line front end for `wdk-core`.
//!
//! Three subcommands: `solve` runs the certified iteration on a polynomial,
//! `validate` checks a local convergence theorem against known roots, and
//! `radii` prints the convergence radii for a degree and exponent.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Number, Value};
use thiserror::Error;
use wdk_core::gauge::{self, CFunction};
use wdk_core::local_theory::{self, LocalCheckReport, LocalTheorem};
use wdk_core::polynomial::from_roots;
use wdk_core::solver::{
    self, GuessStrategy, IterationMode, SolveOptions, SolveReport, SolveStatus, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use wdk_core::{CVec, Complex, GaugeParams, PExponent, Polynomial, RootVector};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_UNCERTIFIED: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] wdk_core::Error),
}

impl CliError {
    /// A solve that was required to certify but could not is a run failure,
    /// not an input error.
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(wdk_core::Error::Precondition(_)) => EXIT_FAILED,
            _ => EXIT_INPUT,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "wdk",
    version,
    about = "Certified simultaneous polynomial root finding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the Weierstrass iteration and certify the result.
    Solve(SolveArgs),
    /// Check a local convergence theorem for known roots and a start vector.
    Validate(ValidateArgs),
    /// Print the convergence radii for degree n and exponent p.
    Radii(RadiiArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Coefficients, highest degree first: "1,0,-1" or "1,0.5+2i,-1i".
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "input",
        required_unless_present = "input"
    )]
    coeffs: Option<String>,
    /// JSON file of the form {"coefficients": [[re, im], ...]}.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "inf")]
    p: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long, default_value = "one_point")]
    mode: String,
    /// Start vector; defaults to points on a circle enclosing the zeros.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Write the JSON report here ("-" for standard output).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include the iteration trace and bound history in the JSON report.
    #[arg(long)]
    trace: bool,
    /// Fail unless some iterate passes the semilocal test.
    #[arg(long)]
    require_certificate: bool,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long, allow_hyphen_values = true)]
    roots: String,
    #[arg(long, allow_hyphen_values = true)]
    x0: String,
    /// local1 | local1_h | local2 | local3
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value = "inf")]
    p: String,
    /// Contraction target for local1_h, in (0, 1).
    #[arg(long)]
    h: Option<f64>,
    /// Majorant for local3: quadratic | rational.
    #[arg(long)]
    c: Option<String>,
    /// Contraction factor for local3, in (0, 1).
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RadiiArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "inf")]
    p: String,
    /// Also print the local1 radius for this contraction target.
    #[arg(long)]
    h: Option<f64>,
}

/// Runs the CLI with process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI, writing the report to `out` and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args, out),
        Command::Validate(args) => cmd_validate(args, out),
        Command::Radii(args) => cmd_radii(args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

// ---------------------------------------------------------------------------
// Input parsing

/// Parses `re`, `re+imi`, `re-imi`, `imi` or `i`.
pub fn parse_complex(token: &str) -> CliResult<Complex> {
    let bad = || CliError::Parse {
        what: "complex number",
        detail: format!("{token:?}"),
    };
    let s: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let num = |t: &str| -> CliResult<f64> {
        let v: f64 = match t {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => t.parse().map_err(|_| bad())?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        return if re.is_finite() {
            Ok(Complex::new(re, 0.0))
        } else {
            Err(bad())
        };
    };
    // last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re: f64 = body[..k].parse().map_err(|_| bad())?;
            if !re.is_finite() {
                return Err(bad());
            }
            Ok(Complex::new(re, num(&body[k..])?))
        }
        None => Ok(Complex::new(0.0, num(body)?)),
    }
}

/// Comma-separated list of complex tokens.
pub fn parse_complex_list(list: &str) -> CliResult<Vec<Complex>> {
    list.split(',').map(parse_complex).collect()
}

fn parse_p(s: &str) -> CliResult<PExponent> {
    s.parse().map_err(|e: wdk_core::Error| CliError::Parse {
        what: "exponent p",
        detail: e.to_string(),
    })
}

/// Reads `{"coefficients": [[re, im], ...]}`; bare reals are accepted too.
pub fn read_coefficients(path: &Path) -> CliResult<Vec<Complex>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |detail: String| CliError::Parse {
        what: "coefficient file",
        detail,
    };
    let doc: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let list = doc
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"coefficients\" array".into()))?;
    list.iter()
        .enumerate()
        .map(|(k, v)| {
            let pair = match v {
                Value::Number(_) => v.as_f64().map(|re| (re, 0.0)),
                Value::Array(a) if a.len() == 2 => a[0].as_f64().zip(a[1].as_f64()),
                _ => None,
            };
            pair.map(|(re, im)| Complex::new(re, im))
                .ok_or_else(|| bad(format!("entry {k} is not [re, im]")))
        })
        .collect()
}

fn polynomial_of(coeffs: Vec<Complex>) -> CliResult<Polynomial> {
    let f = Polynomial::new(coeffs)?;
    if f.degree() < 2 {
        return Err(CliError::Usage(format!(
            "degree must be at least 2, got {}",
            f.degree()
        )));
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// JSON

/// A float with 17 significant digits; non-finite values become `null`.
fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(
        text.parse::<Number>()
            .expect("formatted float is a JSON number"),
    )
}

fn complex_json(z: Complex) -> Value {
    json!([num(z.re), num(z.im)])
}

fn cvec_json(x: &CVec) -> Value {
    Value::Array(x.iter().map(|&z| complex_json(z)).collect())
}

fn write_json(value: &Value, target: &Path, out: &mut dyn Write) -> CliResult<()> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("JSON values serialize");
    bytes.push(b'\n');
    let io = |source| CliError::Io {
        path: target.to_path_buf(),
        source,
    };
    if target == Path::new("-") {
        out.write_all(&bytes).map_err(io)
    } else {
        std::fs::write(target, bytes).map_err(io)
    }
}

/// Serializes a solve report. With `with_trace` the retained iterates,
/// corrections, `E` values and bound history are included.
pub fn emit_json(report: &SolveReport, with_trace: bool) -> Vec<u8> {
    let mut bytes =
        serde_json::to_vec_pretty(&report_json(report, with_trace)).expect("JSON values serialize");
    bytes.push(b'\n');
    bytes
}

fn report_json(report: &SolveReport, with_trace: bool) -> Value {
    let mut doc = Map::new();
    doc.insert("status".into(), json!(report.status.as_str()));
    doc.insert("degree".into(), json!(report.roots.len()));
    doc.insert("p".into(), json!(report.p.to_string()));
    if let Some(cert) = &report.certificate {
        doc.insert(
            "certificate".into(),
            json!({
                "e0": num(cert.e0),
                "lambda": num(cert.lambda),
                "theta": num(cert.theta),
                "rho": cert.rho.iter().map(|&r| num(r)).collect::<Vec<_>>(),
                "rho_norm": num(cert.rho.p_norm(report.p)),
                "passed": cert.passed,
                "quadratic": cert.quadratic,
                "anchor": cert.anchor,
            }),
        );
    }
    doc.insert("roots".into(), cvec_json(&report.roots));
    if let Some(disks) = &report.disks {
        let list: Vec<Value> = disks
            .iter()
            .map(|d| json!({"center": complex_json(d.center), "radius": num(d.radius)}))
            .collect();
        doc.insert("disks".into(), Value::Array(list));
    }
    doc.insert("iterations".into(), json!(report.iterations));
    if with_trace {
        let t = &report.trace;
        doc.insert(
            "trace".into(),
            json!({
                "offset": t.offset,
                "iterates": t.iterates.iter().map(cvec_json).collect::<Vec<_>>(),
                "corrections": t.corrections.iter().map(cvec_json).collect::<Vec<_>>(),
                "e_values": t.e_values.iter().map(|&e| num(e)).collect::<Vec<_>>(),
            }),
        );
        let bounds: Vec<Value> = t
            .bound_history
            .iter()
            .map(|b| {
                json!({
                    "kind": b.kind.as_str(),
                    "k": b.k,
                    "values": b.values.iter().map(|&v| num(v)).collect::<Vec<_>>(),
                })
            })
            .collect();
        doc.insert("bounds".into(), Value::Array(bounds));
    }
    Value::Object(doc)
}

fn local_json(rep: &LocalCheckReport) -> Value {
    let opt = |v: Option<bool>| v.map_or(Value::Null, Value::Bool);
    json!({
        "theorem": rep.theorem.as_str(),
        "condition_value": num(rep.condition_value),
        "threshold": num(rep.threshold),
        "satisfied": rep.satisfied,
        "lambda": num(rep.lambda),
        "theta": rep.theta.map_or(Value::Null, num),
        "per_step_ok": rep.per_step_ok,
        "quadratic": rep.quadratic,
        "han_ok": opt(rep.han_ok),
        "wang_zhao_ok": opt(rep.wang_zhao_ok),
        "tilli_ok": opt(rep.tilli_ok),
        "passed": rep.passed(),
    })
}

// ---------------------------------------------------------------------------
// Commands

fn fmt_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e} {sign} {:.16e}i", z.re, z.im.abs())
}

fn io_out(source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn cmd_solve(args: SolveArgs, out: &mut dyn Write) -> CliResult<i32> {
    let coeffs = match (&args.coeffs, &args.input) {
        (Some(list), None) => parse_complex_list(list)?,
        (None, Some(path)) => read_coefficients(path)?,
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --coeffs and --input".into(),
            ))
        }
    };
    let f = polynomial_of(coeffs)?;
    let mut opts = SolveOptions::new(parse_p(&args.p)?);
    opts.tol = args.tol;
    opts.max_iter = args.max_iter;
    opts.mode = args.mode.parse::<IterationMode>()?;
    opts.require_certificate = args.require_certificate;
    let x0 = match &args.x0 {
        Some(list) => {
            let x0 = CVec::new(parse_complex_list(list)?)?;
            if x0.len() != f.degree() {
                return Err(CliError::Usage(format!(
                    "--x0 has {} entries but the degree is {}",
                    x0.len(),
                    f.degree()
                )));
            }
            x0
        }
        None => solver::initial_guess(&f, GuessStrategy::Circle),
    };
    let report = solver::solve(&f, &x0, &opts)?;

    match &args.json {
        Some(path) if path == Path::new("-") => {
            out.write_all(&emit_json(&report, args.trace))
                .map_err(io_out)?;
        }
        Some(path) => {
            write_json(&report_json(&report, args.trace), path, out)?;
            print_solve(&report, out).map_err(io_out)?;
        }
        None => print_solve(&report, out).map_err(io_out)?,
    }
    Ok(match report.status {
        SolveStatus::CertifiedConverged => EXIT_CERTIFIED,
        SolveStatus::ConvergedUncertified => EXIT_UNCERTIFIED,
        SolveStatus::MaxIterReached | SolveStatus::Degenerate => EXIT_FAILED,
    })
}

fn print_solve(report: &SolveReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "status      {}", report.status)?;
    writeln!(out, "degree      {}", report.roots.len())?;
    writeln!(out, "p           {}", report.p)?;
    writeln!(out, "iterations  {}", report.iterations)?;
    if let Some(c) = &report.certificate {
        writeln!(
            out,
            "certificate passed={} quadratic={} anchor={} E={:.6e} lambda={:.6e} theta={:.6e} |rho|={:.6e}",
            c.passed,
            c.quadratic,
            c.anchor,
            c.e0,
            c.lambda,
            c.theta,
            c.rho.p_norm(report.p)
        )?;
    }
    writeln!(out, "roots")?;
    for (i, &z) in report.roots.iter().enumerate() {
        match &report.disks {
            Some(d) => writeln!(
                out,
                "  {i:>3}  {}  radius {:.3e}",
                fmt_complex(z),
                d.disks[i].radius
            )?,
            None => writeln!(out, "  {i:>3}  {}", fmt_complex(z))?,
        }
    }
    Ok(())
}

fn cmd_validate(args: ValidateArgs, out: &mut dyn Write) -> CliResult<i32> {
    let p = parse_p(&args.p)?;
    let roots = RootVector::new(CVec::new(parse_complex_list(&args.roots)?)?);
    let x0 = CVec::new(parse_complex_list(&args.x0)?)?;
    if roots.len() < 2 || roots.len() != x0.len() {
        return Err(CliError::Usage(format!(
            "need at least two roots and as many start values ({} roots, {} start values)",
            roots.len(),
            x0.len()
        )));
    }
    let f = from_roots(&roots, Complex::new(1.0, 0.0))?;
    let theorem: LocalTheorem = args.theorem.parse()?;
    let report = match theorem {
        LocalTheorem::Local1 => local_theory::check_local1(&f, &roots, &x0, p, None)?,
        LocalTheorem::Local1H => {
            let h = args
                .h
                .ok_or_else(|| CliError::Usage("local1_h needs --h".into()))?;
            local_theory::check_local1(&f, &roots, &x0, p, Some(h))?
        }
        LocalTheorem::Local2 => local_theory::check_local2(&f, &roots, &x0, p)?,
        LocalTheorem::Local3 => {
            let c = match args.c.as_deref() {
                Some("quadratic") => CFunction::Quadratic,
                Some("rational") => CFunction::Rational,
                Some(other) => return Err(CliError::Usage(format!("unknown --c {other:?}"))),
                None => return Err(CliError::Usage("local3 needs --c".into())),
            };
            let sigma = args
                .sigma
                .ok_or_else(|| CliError::Usage("local3 needs --sigma".into()))?;
            local_theory::check_local3(&f, &roots, &x0, p, c, sigma)?
        }
    };

    match &args.json {
        Some(path) => write_json(&local_json(&report), path, out)?,
        None => {
            let w = |out: &mut dyn Write| -> std::io::Result<()> {
                writeln!(out, "theorem     {}", report.theorem)?;
                writeln!(
                    out,
                    "condition   E = {:.6e} vs threshold {:.6e}: {}",
                    report.condition_value,
                    report.threshold,
                    if report.satisfied { "holds" } else { "fails" }
                )?;
                let ok = report.per_step_ok.iter().filter(|&&b| b).count();
                writeln!(out, "estimates   {ok}/{} steps", report.per_step_ok.len())?;
                writeln!(out, "quadratic   {}", report.quadratic)?;
                for (name, v) in [
                    ("han", report.han_ok),
                    ("wang_zhao", report.wang_zhao_ok),
                    ("tilli", report.tilli_ok),
                ] {
                    if let Some(v) = v {
                        writeln!(out, "{name:<11} {v}")?;
                    }
                }
                writeln!(out, "passed      {}", report.passed())
            };
            w(out).map_err(io_out)?;
        }
    }
    Ok(if report.passed() {
        EXIT_CERTIFIED
    } else {
        EXIT_UNCERTIFIED
    })
}

fn cmd_radii(args: RadiiArgs, out: &mut dyn Write) -> CliResult<i32> {
    let gp = GaugeParams::new(args.n, parse_p(&args.p)?)?;
    let mut lines = vec![
        ("local1", gauge::radius_local1(&gp).value),
        ("local2", gauge::radius_local2(&gp).value),
        ("local2_lower_bound", gauge::lower_bound_local2(&gp)),
        ("wang_zhao", gauge::wang_zhao_threshold(&gp)),
        ("semilocal", gauge::radius_semi(&gp).value),
        ("semilocal_simple", gauge::simple_semilocal_threshold(&gp)),
    ];
    if let Some(h) = args.h {
        lines.insert(1, ("local1_h", gauge::radius_local1_h(&gp, h)?.value));
    }
    for (name, v) in lines {
        writeln!(out, "{name}={v}").map_err(io_out)?;
    }
    Ok(EXIT_CERTIFIED)
}
