//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification or oracle failure, 2 invalid
//! arguments or unparsable input, 3 a construction precondition or hypothesis
//! fails, 4 the candidate search ran out, 5 internal error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certify::{
    check_nd, reachability_verdict, verify_certificate, Rule, Status, TorsionCertificate,
};
use crate::constructors::{construct, Construction, ConstructionRequest, Style};
use crate::error::Error;
use crate::jacobian2::point_order;
use crate::polyring::Poly;
use crate::scalars::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_SEARCH_EXHAUSTED: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

/// Exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) | Error::Parse(_) | Error::Gcd { .. } | Error::Order { .. } => {
            EXIT_USAGE
        }
        Error::Precondition(_)
        | Error::Hypothesis(_)
        | Error::UnsupportedField(_)
        | Error::UnsupportedDegree(_)
        | Error::RepeatedRoot
        | Error::ZeroOrdinate(_)
        | Error::Degree { .. } => EXIT_PRECONDITION,
        Error::SearchExhausted { .. } => EXIT_SEARCH_EXHAUSTED,
        Error::Divisibility(_) | Error::Internal(_) => EXIT_INTERNAL,
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

fn error_json(kind: &str, message: String, code: i32) -> String {
    serde_json::to_string(&ErrorReport {
        error: kind,
        message,
        exit_code: code,
    })
    .expect("error report serializes")
}

#[derive(Parser, Debug)]
#[command(
    name = "torsion-forge",
    version,
    about = "Torsion points on superelliptic curves y^d = f(x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a curve with a point of order m and print its certificate.
    Construct(ConstructArgs),
    /// Re-check a certificate file.
    Verify(VerifyArgs),
    /// Tabulate verdicts over a grid of (n, d, m).
    Scan(ScanArgs),
    /// Compute the order of a certificate's point with divisor arithmetic (d = 2).
    Oracle(OracleArgs),
    /// Decide whether order m is reachable for (n, d).
    Verdict(VerdictArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StyleArg {
    OrderD,
    OrderN,
    DivD,
    TwiceN,
    NPlusEd,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::OrderD => Style::OrderD,
            StyleArg::OrderN => Style::OrderN,
            StyleArg::DivD => Style::DivisibleByD,
            StyleArg::TwiceN => Style::TwiceN,
            StyleArg::NPlusEd => Style::NPlusEd,
        }
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, value_enum)]
    style: Option<StyleArg>,
    /// e for the n-plus-ed family (m = n + e·d).
    #[arg(long)]
    e: Option<u64>,
    /// Abscissa a for the order-n family.
    #[arg(long)]
    a: Option<String>,
    /// Comma-separated coefficients of v, lowest degree first (order-n family).
    #[arg(long)]
    v: Option<String>,
    /// Number of search candidates for C (or b).
    #[arg(long = "c-range")]
    c_range: Option<usize>,
    /// Read a construction request from a JSON file instead of flags.
    #[arg(long, conflicts_with_all = ["n", "d", "m", "style", "e", "a", "v"])]
    request: Option<PathBuf>,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    path: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// d = 2 and m ∈ {2} ∪ [n, 2n+1].
    HyperellipticLadder,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// n or an inclusive range A..B.
    #[arg(long)]
    n: String,
    /// d or an inclusive range A..B.
    #[arg(long)]
    d: Option<String>,
    /// m or an inclusive range A..B.
    #[arg(long)]
    m: Option<String>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Build and verify a certificate for every reachable row.
    #[arg(long)]
    construct: bool,
    /// Cross-check constructed d = 2 certificates with divisor arithmetic.
    #[arg(long, requires = "construct")]
    oracle: bool,
    /// Directory for certificate files of constructed rows.
    #[arg(long = "cert-dir", requires = "construct")]
    cert_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "c-range")]
    c_range: Option<usize>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Certificate file; its point must be affine and d = 2.
    path: PathBuf,
    /// Largest multiple tried; defaults to 2m.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Args, Debug)]
struct VerdictArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    m: u64,
}

enum Failure {
    Error(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = writeln!(
                err,
                "{}",
                error_json("usage", e.to_string().trim().to_string(), EXIT_USAGE)
            );
            return EXIT_USAGE;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => cmd_construct(a, out),
        Command::Verify(a) => cmd_verify(&a.path, out),
        Command::Scan(a) => cmd_scan(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Verdict(a) => cmd_verdict(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Error(e)) => {
            let code = exit_code(&e);
            let _ = writeln!(err, "{}", error_json(e.kind(), e.to_string(), code));
            code
        }
        Err(Failure::Verify(message)) => {
            let _ = writeln!(
                err,
                "{}",
                error_json("verification", message, EXIT_VERIFY_FAILED)
            );
            EXIT_VERIFY_FAILED
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    writeln!(out, "{text}").map_err(|e| Error::Internal(format!("write failed: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn parse_rational(s: &str) -> Result<Rational, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not a rational number: {s:?}")))
}

fn cmd_construct(a: ConstructArgs, out: &mut dyn Write) -> Outcome {
    let mut req = match &a.request {
        Some(path) => serde_json::from_str::<ConstructionRequest>(&read_file(path)?)
            .map_err(|e| Error::Parse(e.to_string()))?,
        None => {
            let (Some(n), Some(d)) = (a.n, a.d) else {
                return Err(Error::InvalidInput("--n and --d are required".into()).into());
            };
            let v = match &a.v {
                Some(text) => Some(Poly::new(
                    text.split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>, _>>()?,
                )),
                None => None,
            };
            ConstructionRequest {
                n,
                d,
                m: a.m,
                style: a.style.map(Style::from),
                a: a.a.as_deref().map(parse_rational).transpose()?,
                v,
                e: a.e,
                c_limit: None,
            }
        }
    };
    if a.c_range.is_some() {
        req.c_limit = a.c_range;
    }
    let built = construct(&req)?;
    let report = verify_certificate(&built.certificate);
    if !report.valid {
        return Err(Error::Internal(format!(
            "constructed certificate fails verification: {}",
            report.failure_summary()
        ))
        .into());
    }
    let text = built.certificate.to_json();
    match &a.out {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    Ok(())
}

fn cmd_verify(path: &Path, out: &mut dyn Write) -> Outcome {
    let cert = TorsionCertificate::from_json(&read_file(path)?)?;
    let report = verify_certificate(&cert);
    emit(out, &to_json(&report))?;
    if report.valid {
        Ok(())
    } else {
        Err(Failure::Verify(report.failure_summary()))
    }
}

#[derive(Serialize)]
struct OracleReport {
    m: u64,
    oracle_order: Option<u64>,
    bound: u64,
    agrees: bool,
}

/// Order of the certificate's point by repeated Cantor addition.
pub fn oracle_order(cert: &TorsionCertificate, bound: u64) -> Result<Option<u64>, Error> {
    if cert.curve.d() != 2 {
        return Err(Error::UnsupportedDegree(cert.curve.d()));
    }
    let p = cert
        .point
        .affine()
        .ok_or_else(|| Error::UnsupportedField("the point is symbolic".into()))?;
    cert.curve.validate()?;
    point_order(&cert.curve, p, bound)
}

fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> Outcome {
    let cert = TorsionCertificate::from_json(&read_file(&a.path)?)?;
    let bound = a.bound.unwrap_or(2 * cert.m.max(1));
    let order = oracle_order(&cert, bound)?;
    let agrees = order == Some(cert.m);
    emit(
        out,
        &to_json(&OracleReport {
            m: cert.m,
            oracle_order: order,
            bound,
            agrees,
        }),
    )?;
    if agrees {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "oracle order {order:?} differs from claimed m = {}",
            cert.m
        )))
    }
}

fn cmd_verdict(a: VerdictArgs, out: &mut dyn Write) -> Outcome {
    let v = reachability_verdict(a.n, a.d, a.m)?;
    emit(out, &to_json(&v))?;
    Ok(())
}

/// Parses `A`, `A..B` or `A..=B` as an inclusive range. `A..B` with `B < A`
/// is empty.
pub fn parse_range(text: &str) -> Result<(u64, u64), Error> {
    let bad = || Error::InvalidInput(format!("bad range {text:?}; expected A or A..B"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match text.split_once("..") {
        None => {
            let k = num(text)?;
            Ok((k, k))
        }
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((num(lo)?, num(hi)?))
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub status: Status,
    pub deciding_rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct ScanReport {
    pub grid: ScanGrid,
    pub rows: Vec<ScanRow>,
    /// `(n, d)` pairs in the grid that are not coprime or have `n <= d`.
    pub skipped_pairs: Vec<(u64, u64)>,
}

#[derive(Serialize, Debug)]
pub struct ScanGrid {
    pub n: (u64, u64),
    pub d: (u64, u64),
    pub m: Option<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<&'static str>,
}

impl ScanRow {
    fn failed(&self) -> bool {
        self.error.is_some()
            || self.verified == Some(false)
            || self.oracle_order.is_some_and(|k| k != self.m)
    }
}

fn scan_construct(
    row: &mut ScanRow,
    limit: Option<usize>,
    oracle: bool,
    dir: Option<&Path>,
) -> Result<(), Error> {
    let req = ConstructionRequest {
        n: row.n,
        d: row.d,
        m: Some(row.m),
        c_limit: limit,
        ..Default::default()
    };
    let built: Construction = match construct(&req) {
        Ok(b) => b,
        Err(e) => {
            row.error = Some(format!("{}: {e}", e.kind()));
            return Ok(());
        }
    };
    let report = verify_certificate(&built.certificate);
    row.verified = Some(report.valid);
    if oracle && row.d == 2 {
        match oracle_order(&built.certificate, 2 * row.m) {
            Ok(order) => row.oracle_order = Some(order.unwrap_or(0)),
            Err(e) => row.error = Some(format!("oracle: {e}")),
        }
    }
    if let Some(dir) = dir {
        let path = dir.join(format!("n{}_d{}_m{}.json", row.n, row.d, row.m));
        write_file(&path, &built.certificate.to_json())?;
        row.certificate = Some(path.display().to_string());
    }
    Ok(())
}

fn csv_line(row: &ScanRow) -> String {
    let opt = |o: Option<String>| o.unwrap_or_default();
    let quote = |s: String| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s
        }
    };
    [
        row.n.to_string(),
        row.d.to_string(),
        row.m.to_string(),
        row.status.as_str().to_string(),
        row.deciding_rule.as_str().to_string(),
        opt(row.verified.map(|b| b.to_string())),
        opt(row.oracle_order.map(|k| k.to_string())),
        opt(row.certificate.clone()),
        opt(row.error.clone()),
    ]
    .into_iter()
    .map(quote)
    .collect::<Vec<_>>()
    .join(",")
}

/// Builds the verdict table for the given bounds.
fn build_scan(a: &ScanArgs) -> Result<ScanReport, Error> {
    let n_range = parse_range(&a.n)?;
    let (d_range, m_spec, preset) =
        match a.preset {
            Some(Preset::HyperellipticLadder) => {
                if a.d
                    .as_deref()
                    .is_some_and(|d| parse_range(d).ok() != Some((2, 2)))
                {
                    return Err(Error::InvalidInput(
                        "the hyperelliptic ladder has d = 2".into(),
                    ));
                }
                (
                    (2, 2),
                    a.m.as_deref().map(parse_range).transpose()?,
                    Some("hyperelliptic-ladder"),
                )
            }
            None => {
                let d = a.d.as_deref().ok_or_else(|| {
                    Error::InvalidInput("--d is required without a preset".into())
                })?;
                let m = a.m.as_deref().ok_or_else(|| {
                    Error::InvalidInput("--m is required without a preset".into())
                })?;
                (parse_range(d)?, Some(parse_range(m)?), None)
            }
        };
    let cells = |lo: u64, hi: u64| (hi.saturating_sub(lo)).saturating_add(1);
    let total = cells(n_range.0, n_range.1) as u128
        * cells(d_range.0, d_range.1) as u128
        * m_spec.map_or(1, |(lo, hi)| cells(lo, hi) as u128);
    if total > 1_000_000 {
        return Err(Error::InvalidInput(format!(
            "grid of {total} cells is too large"
        )));
    }
    if let Some(dir) = &a.cert_dir {
        fs::create_dir_all(dir)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
    }
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for n in n_range.0..=n_range.1 {
        for d in d_range.0..=d_range.1 {
            if check_nd(n, d).is_err() {
                skipped.push((n, d));
                continue;
            }
            let ms: Vec<u64> = match (preset, m_spec) {
                (Some(_), None) => std::iter::once(2).chain(n..=2 * n + 1).collect(),
                (Some(_), Some((lo, hi))) => std::iter::once(2)
                    .chain(n..=2 * n + 1)
                    .filter(|m| (lo..=hi).contains(m))
                    .collect(),
                (None, Some((lo, hi))) => (lo.max(2)..=hi).collect(),
                (None, None) => Vec::new(),
            };
            for m in ms {
                let v = reachability_verdict(n, d, m)?;
                let mut row = ScanRow {
                    n,
                    d,
                    m,
                    status: v.status,
                    deciding_rule: v.deciding_rule,
                    verified: None,
                    oracle_order: None,
                    certificate: None,
                    error: None,
                };
                let reachable = matches!(
                    v.status,
                    Status::ReachableConstructive | Status::ReachableExistence
                );
                if a.construct && reachable {
                    scan_construct(&mut row, a.c_range, a.oracle, a.cert_dir.as_deref())?;
                }
                rows.push(row);
            }
        }
    }
    Ok(ScanReport {
        grid: ScanGrid {
            n: n_range,
            d: d_range,
            m: m_spec,
            preset,
        },
        rows,
        skipped_pairs: skipped,
    })
}

fn cmd_scan(a: ScanArgs, out: &mut dyn Write) -> Outcome {
    let report = build_scan(&a)?;
    let text = match a.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut lines = vec![
                "n,d,m,status,deciding_rule,verified,oracle_order,certificate,error".to_string(),
            ];
            lines.extend(report.rows.iter().map(csv_line));
            lines.join("\n")
        }
    };
    match &a.out {
        Some(path) => write_file(path, &format!("{text}\n"))?,
        None => emit(out, &text)?,
    }
    let failures: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.failed())
        .map(|r| format!("({}, {}, {})", r.n, r.d, r.m))
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "rows failed: {}",
            failures.join(" ")
        )))
    }
}
