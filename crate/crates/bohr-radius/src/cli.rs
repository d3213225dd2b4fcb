//! Command-line front end; `main` is a one-line wrapper around [`run`].
//!
//! Subcommands: `radius`, `det`, `table`, `asym`, `verify`. Output goes to
//! stdout as JSON, CSV or a bare value depending on the subcommand and
//! `--format`; diagnostics go to stderr. Exit codes: 0 success, 1 a
//! computation failed, 2 the invocation itself was invalid.
//!
//! Identical argv (and `--seed`) produce byte-identical stdout: JSON objects
//! are emitted with sorted keys and floats print through Rust's shortest
//! round-trip formatting.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::asympt::{asym_table, richardson, AsymRow, PI_SQUARED_OVER_3};
use crate::bohrcheck::{search_violation, CoefficientMode, SearchOptions};
use crate::error::Error;
use crate::solver::{radius, Method, RadiusOptions, DEFAULT_TOL};
use crate::toeplitz::{build_matrix, delta, dense_det, ToeplitzParams, DENSE_SIZE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "bohr",
    no_binary_name = true,
    version,
    about = "Radius bounds for the coefficient-sum inequality of degree-n polynomials"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the radius for one degree.
    Radius(RadiusArgs),
    /// Evaluate the determinant D_n(r).
    Det(DetArgs),
    /// Radii for a list of degrees.
    Table(TableArgs),
    /// Convergence table of c = n^2 (R_n - 1/3) toward pi^2/3.
    Asym(AsymArgs),
    /// Search for a polynomial violating the inequality at (n, r).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Spectral,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Spectral => Method::Spectral,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum JsonOrCsv {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlainOrJson {
    Plain,
    Json,
}

#[derive(Args)]
struct RadiusArgs {
    /// Polynomial degree.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
    /// Bisection tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = JsonOrCsv::Json)]
    format: JsonOrCsv,
}

#[derive(Args)]
struct DetArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: f64,
    /// Cross-check the recurrence against the dense LU determinant
    /// (available for n <= 64).
    #[arg(long)]
    dense_check: bool,
    #[arg(long, value_enum, default_value_t = PlainOrJson::Plain)]
    format: PlainOrJson,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated degrees, e.g. 2,3,8,100.
    #[arg(long, value_name = "LIST")]
    n_list: Option<String>,
    /// Inclusive exponent range LO..HI over powers of two, e.g. 8..12
    /// for n = 256..4096.
    #[arg(long, value_name = "LO..HI", conflicts_with = "n_list")]
    n_pow2: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = JsonOrCsv::Csv)]
    format: JsonOrCsv,
    /// Append-only cache file of "n,radius,tol" lines; entries computed at a
    /// tolerance at least as tight as --tol are reused.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct AsymArgs {
    /// Inclusive exponent range LO..HI over powers of two.
    #[arg(long, value_name = "LO..HI")]
    n_pow2: String,
    /// Append an order-1 extrapolation summary line.
    #[arg(long)]
    richardson: bool,
    #[arg(long, value_enum, default_value_t = JsonOrCsv::Csv)]
    format: JsonOrCsv,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 200)]
    restarts: usize,
    /// Circle samples per sup-norm evaluation.
    #[arg(long, default_value_t = 256)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Real)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = JsonOrCsv::Json)]
    format: JsonOrCsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Real,
    Complex,
}

/// Outcome of a handler: exit code plus a stderr message.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn compute(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_COMPUTE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        // faults knowable from the arguments alone are usage errors; anything
        // discovered mid-computation is a computation failure
        let code = match e {
            Error::DegreeTooSmall { .. }
            | Error::RadiusOutOfRange { .. }
            | Error::BadTolerance { .. }
            | Error::SpectralUnavailable { .. }
            | Error::GridTooSmall { .. }
            | Error::EmptyInput { .. }
            | Error::UnsupportedOrder { .. }
            | Error::NoRestarts => EXIT_USAGE,
            _ => EXIT_COMPUTE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::compute(format!("i/o error: {e}"))
    }
}

/// Parses argv (without the program name) and runs, writing to the real
/// stdout and stderr. Returns the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    run_to(argv, &mut out, &mut err)
}

/// Same as [`run`] with explicit output sinks; tests drive the CLI
/// in-process through this.
pub fn run_to<I, S, O, E>(argv: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here and are not failures
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.cmd {
        Cmd::Radius(a) => cmd_radius(a, out),
        Cmd::Det(a) => cmd_det(a, out),
        Cmd::Table(a) => cmd_table(a, out),
        Cmd::Asym(a) => cmd_asym(a, out),
        Cmd::Verify(a) => cmd_verify(a, out),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Reported radius for a degree: the root when one exists, otherwise the
/// supremum 1 of the window (degree 1 satisfies the inequality for every
/// r < 1).
fn radius_scalar(value: Option<f64>) -> f64 {
    value.unwrap_or(1.0)
}

fn json_line<O: Write>(out: &mut O, value: &Value) -> Result<(), Failure> {
    writeln!(out, "{value}").map_err(Failure::from)
}

fn cmd_radius<O: Write>(a: RadiusArgs, out: &mut O) -> Result<(), Failure> {
    let res = radius::<f64>(
        a.n,
        &RadiusOptions {
            tol: a.tol,
            method: a.method.into(),
        },
    )?;
    match a.format {
        JsonOrCsv::Json => {
            let mut obj = Map::new();
            obj.insert("n".into(), json!(res.n));
            obj.insert("radius".into(), json!(radius_scalar(res.value)));
            obj.insert("method".into(), json!(res.method.as_str()));
            obj.insert("tol".into(), json!(a.tol));
            obj.insert("iterations".into(), json!(res.iterations));
            if res.value.is_none() {
                obj.insert("no_root".into(), json!(true));
            }
            if let Some(b) = res.bracket {
                obj.insert("bracket".into(), json!({ "lo": b.lo, "hi": b.hi }));
            }
            if let Some(v) = res.residual_log {
                obj.insert("residual_log".into(), json!(v));
            }
            if let Some(x) = res.x_root {
                obj.insert("x_root".into(), json!(x));
            }
            json_line(out, &Value::Object(obj))
        }
        JsonOrCsv::Csv => {
            writeln!(out, "n,radius")?;
            writeln!(out, "{},{}", res.n, radius_scalar(res.value))?;
            Ok(())
        }
    }
}

fn cmd_det<O: Write>(a: DetArgs, out: &mut O) -> Result<(), Failure> {
    let p = ToeplitzParams::new(a.n, a.r)?;
    let d = delta(&p);
    let dense = if a.dense_check {
        if a.n + 1 > DENSE_SIZE_CAP {
            return Err(Failure::usage(format!(
                "--dense-check supports n <= {}, got {}",
                DENSE_SIZE_CAP - 1,
                a.n
            )));
        }
        let dd = dense_det(&build_matrix(&p));
        if let Some(raw) = d.raw() {
            let scale = raw.abs().max(dd.abs());
            if (raw - dd).abs() > 1e-9 * scale.max(1e-30) && (raw - dd).abs() > 1e-12 {
                return Err(Failure::compute(format!(
                    "recurrence and dense determinants disagree: {raw} vs {dd}"
                )));
            }
        }
        Some(dd)
    } else {
        None
    };
    match a.format {
        PlainOrJson::Plain => {
            match d.raw() {
                Some(v) => writeln!(out, "{v}")?,
                None => {
                    let sign = if d.sign() < 0 { "-" } else { "" };
                    writeln!(out, "{sign}exp({})", d.log_mag())?;
                }
            }
            Ok(())
        }
        PlainOrJson::Json => {
            let mut obj = Map::new();
            obj.insert("n".into(), json!(a.n));
            obj.insert("r".into(), json!(a.r));
            obj.insert("sign".into(), json!(d.sign()));
            obj.insert("log_mag".into(), json!(d.log_mag()));
            obj.insert("raw".into(), d.raw().map_or(Value::Null, |v| json!(v)));
            if let Some(dd) = dense {
                obj.insert("dense".into(), json!(dd));
            }
            json_line(out, &Value::Object(obj))
        }
    }
}

/// Parses "LO..HI" into the inclusive list of powers of two.
fn parse_pow2(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || {
        Failure::usage(format!(
            "expected an exponent range like 8..12, got {spec:?}"
        ))
    };
    let (lo, hi) = spec.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Failure::usage(format!(
            "empty exponent range: {lo} > {hi}"
        )));
    }
    if hi > 24 {
        return Err(Failure::usage(format!(
            "exponent {hi} too large; degrees above 2^24 are not supported"
        )));
    }
    Ok((lo..=hi).map(|e| 1usize << e).collect())
}

fn parse_degree_list(spec: &str) -> Result<Vec<usize>, Failure> {
    let mut ns = Vec::new();
    for piece in spec.split(',') {
        let n: usize = piece.trim().parse().map_err(|_| {
            Failure::usage(format!("bad degree {piece:?} in --n-list"))
        })?;
        ns.push(n);
    }
    if ns.is_empty() {
        return Err(Failure::usage("--n-list must name at least one degree"));
    }
    Ok(ns)
}

/// One cache record: degree, radius, and the tolerance it was computed at.
#[derive(Debug, Clone, Copy)]
struct CacheEntry {
    n: usize,
    radius: f64,
    tol: f64,
}

/// Loads the cache, skipping lines that do not parse (the file is
/// append-only and human-editable; damage should not brick the run).
fn load_cache(path: &Path) -> Result<Vec<CacheEntry>, Failure> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(e.into()),
    };
    let mut entries = Vec::new();
    for line in text.lines() {
        let mut parts = line.split(',');
        let (Some(n), Some(radius), Some(tol)) = (parts.next(), parts.next(), parts.next())
        else {
            continue;
        };
        if parts.next().is_some() {
            continue;
        }
        let (Ok(n), Ok(radius), Ok(tol)) =
            (n.trim().parse(), radius.trim().parse(), tol.trim().parse())
        else {
            continue;
        };
        entries.push(CacheEntry { n, radius, tol });
    }
    Ok(entries)
}

/// Latest entry for n whose recorded tolerance is at least as tight.
fn cache_lookup(entries: &[CacheEntry], n: usize, tol: f64) -> Option<f64> {
    entries
        .iter()
        .rev()
        .find(|e| e.n == n && e.tol <= tol)
        .map(|e| e.radius)
}

fn append_cache(path: &Path, fresh: &[CacheEntry]) -> Result<(), Failure> {
    if fresh.is_empty() {
        return Ok(());
    }
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    for e in fresh {
        writeln!(file, "{},{},{}", e.n, e.radius, e.tol)?;
    }
    Ok(())
}

fn cmd_table<O: Write>(a: TableArgs, out: &mut O) -> Result<(), Failure> {
    let ns = match (&a.n_list, &a.n_pow2) {
        (Some(list), None) => parse_degree_list(list)?,
        (None, Some(spec)) => parse_pow2(spec)?,
        _ => {
            return Err(Failure::usage(
                "table needs exactly one of --n-list or --n-pow2",
            ));
        }
    };
    let cached = match &a.cache {
        Some(path) => load_cache(path)?,
        None => Vec::new(),
    };
    let mut fresh: Vec<CacheEntry> = Vec::new();
    let mut rows: Vec<(usize, f64)> = Vec::new();
    for &n in &ns {
        let value = match cache_lookup(&cached, n, a.tol) {
            Some(v) => v,
            None => {
                let res = radius::<f64>(
                    n,
                    &RadiusOptions {
                        tol: a.tol,
                        method: Method::Both,
                    },
                )?;
                let v = radius_scalar(res.value);
                // rootless degrees are reported but never cached
                if res.value.is_some() {
                    fresh.push(CacheEntry {
                        n,
                        radius: v,
                        tol: a.tol,
                    });
                }
                v
            }
        };
        rows.push((n, value));
    }
    if let Some(path) = &a.cache {
        append_cache(path, &fresh)?;
    }
    match a.format {
        JsonOrCsv::Csv => {
            writeln!(out, "n,radius")?;
            for (n, v) in rows {
                writeln!(out, "{n},{v}")?;
            }
            Ok(())
        }
        JsonOrCsv::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|&(n, v)| json!({ "n": n, "radius": v }))
                .collect();
            json_line(out, &Value::Array(items))
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn asym_json_row(row: &AsymRow<f64>) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(row.n));
    obj.insert("radius".into(), json!(row.radius));
    obj.insert("c".into(), json!(row.c));
    obj.insert("deviation".into(), json!(row.deviation));
    obj.insert(
        "eps".into(),
        row.eps.map_or(Value::Null, |e| json!(e)),
    );
    Value::Object(obj)
}

fn cmd_asym<O: Write>(a: AsymArgs, out: &mut O) -> Result<(), Failure> {
    let ns = parse_pow2(&a.n_pow2)?;
    let rows = asym_table::<f64>(&ns)?;
    let extrapolated = if a.richardson {
        Some(richardson(&rows, 1)?)
    } else {
        None
    };
    match a.format {
        JsonOrCsv::Csv => {
            writeln!(out, "n,radius,c,deviation,eps")?;
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.n,
                    fmt17(row.radius),
                    fmt17(row.c),
                    fmt17(row.deviation),
                    row.eps.map(fmt17).unwrap_or_default()
                )?;
            }
            if let Some(ex) = extrapolated {
                writeln!(
                    out,
                    "# richardson order=1 estimate={} limit={}",
                    fmt17(ex.estimate),
                    fmt17(PI_SQUARED_OVER_3)
                )?;
            }
            Ok(())
        }
        JsonOrCsv::Json => {
            let mut obj = Map::new();
            obj.insert(
                "rows".into(),
                Value::Array(rows.iter().map(asym_json_row).collect()),
            );
            obj.insert("limit".into(), json!(PI_SQUARED_OVER_3));
            if let Some(ex) = extrapolated {
                obj.insert(
                    "richardson".into(),
                    json!({ "order": ex.order, "estimate": ex.estimate }),
                );
            }
            json_line(out, &Value::Object(obj))
        }
    }
}

fn cmd_verify<O: Write>(a: VerifyArgs, out: &mut O) -> Result<(), Failure> {
    if a.n >= 1 && a.samples < crate::bohrcheck::min_samples(a.n) {
        return Err(Failure::usage(format!(
            "--samples {} is below the floor {} for degree {}",
            a.samples,
            crate::bohrcheck::min_samples(a.n),
            a.n
        )));
    }
    let opts = SearchOptions {
        restarts: a.restarts,
        mode: match a.mode {
            ModeArg::Real => CoefficientMode::Real,
            ModeArg::Complex => CoefficientMode::Complex,
        },
        samples: a.samples,
        seed: a.seed,
    };
    let witness = search_violation::<f64>(a.n, a.r, &opts)?;
    match a.format {
        JsonOrCsv::Json => {
            let mut obj = Map::new();
            obj.insert("n".into(), json!(a.n));
            obj.insert("r".into(), json!(a.r));
            obj.insert("restarts".into(), json!(a.restarts));
            obj.insert("samples".into(), json!(opts.samples));
            obj.insert("seed".into(), json!(a.seed));
            obj.insert("mode".into(), json!(opts.mode.as_str()));
            obj.insert("found".into(), json!(witness.is_some()));
            if let Some(w) = &witness {
                obj.insert("gap".into(), json!(w.gap));
                obj.insert("majorant".into(), json!(w.majorant));
                obj.insert("supnorm".into(), json!(w.supnorm));
                let coeffs: Vec<Value> = w
                    .poly
                    .coeffs()
                    .iter()
                    .map(|c| json!([c.re, c.im]))
                    .collect();
                obj.insert("coeffs".into(), Value::Array(coeffs));
            }
            json_line(out, &Value::Object(obj))
        }
        JsonOrCsv::Csv => {
            writeln!(out, "n,r,found,gap,majorant,supnorm")?;
            match &witness {
                Some(w) => writeln!(
                    out,
                    "{},{},true,{},{},{}",
                    a.n, a.r, w.gap, w.majorant, w.supnorm
                )?,
                None => writeln!(out, "{},{},false,,,", a.n, a.r)?,
            }
            Ok(())
        }
    }
}
