//! Command-line front end shared by the `gabor-obs` binary.
//!
//! Exit statuses:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success, certificate verified, all suites pass |
//! | 1    | certificate or verification suite failed |
//! | 2    | `(a, b)` is not in `H` |
//! | 3    | no feasible witness point |
//! | 4    | degenerate column-group constant |
//! | 64   | usage error, including malformed rationals |
//! | 65   | invalid input data (precondition or malformed record) |
//! | 74   | I/O error |

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bspline::build_bspline;
use crate::certify::{certify_nonframe, CertificateStatus, CertifyOutcome};
use crate::error::Error;
use crate::output::{
    points_svg, segments_in_window, segments_svg, write_points_csv, write_scan_csv, write_segments_csv, ColorBy,
    SvgOptions,
};
use crate::rational::{int, parse_rational, to_f64, Rational};
use crate::sets::{enum_p, segment_h};
use crate::verify::{format_table, run_suites, VerifyConfig};
use crate::zak::{scan, LatticeParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_NOT_IN_H: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(name = "gabor-obs", version, about = "Obstructions to Gabor frames of B-splines")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the point obstruction set.
    EnumP(EnumArgs),
    /// Enumerate the hyperbolic segments for one spline order.
    EnumH(EnumHArgs),
    /// Grid scan of the smallest singular value of the Zibulski-Zeevi matrix.
    Scan(ScanArgs),
    /// Build and check a non-frame certificate.
    Certify(CertifyArgs),
    /// Run the exact property suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Color {
    Ab,
    LogR,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file; with `--format both` the extension is replaced by csv and svg.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Overlay the tie tile boundaries in SVG output.
    #[arg(long)]
    pub tiles: bool,
    #[arg(long, value_enum, default_value = "ab")]
    pub color: Color,
    /// Mark segment centers in SVG output.
    #[arg(long)]
    pub centers: bool,
}

#[derive(Args, Debug)]
pub struct EnumArgs {
    /// Largest b₀ to enumerate.
    #[arg(long, value_parser = parse_rational_arg, default_value = "15")]
    pub b_max: Rational,
    /// Largest r to enumerate.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub r_max: u64,
    /// Keep only points with b₀ at least this value.
    #[arg(long, value_parser = parse_rational_arg)]
    pub b_min: Option<Rational>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct EnumHArgs {
    /// Spline order.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[command(flatten)]
    pub range: EnumArgs,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Spline order.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Time shift, as p/q or an exact decimal.
    #[arg(long, value_parser = parse_rational_arg)]
    pub a: Rational,
    /// Modulation, as p/q or an exact decimal.
    #[arg(long, value_parser = parse_rational_arg)]
    pub b: Rational,
    /// Grid resolution M; the scan covers M × M points.
    #[arg(long = "grid", value_parser = clap::value_parser!(u64).range(2..), default_value = "64")]
    pub grid: u64,
    /// CSV file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    /// Spline order.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Time shift, as p/q or an exact decimal.
    #[arg(long, value_parser = parse_rational_arg)]
    pub a: Rational,
    /// Modulation, as p/q or an exact decimal.
    #[arg(long, value_parser = parse_rational_arg)]
    pub b: Rational,
    /// Certificate record file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest b₀ to enumerate.
    #[arg(long, value_parser = parse_rational_arg, default_value = "15")]
    pub b_max: Rational,
    /// Largest r to enumerate.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), default_value = "50")]
    pub r_max: u64,
    /// Spline orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub n: Vec<usize>,
    /// Check the widened segments instead of the true ones.
    #[arg(long)]
    pub widen: bool,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
    Io { path: Option<PathBuf>, source: io::Error },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn io_err(path: Option<&Path>) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |source| Failure::Io { path: path.map(Path::to_path_buf), source }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Lib(Error::ParseRational { .. }) => EXIT_USAGE,
            Failure::Lib(Error::InfeasibleWitness(_)) => EXIT_INFEASIBLE,
            Failure::Lib(Error::DegenerateConstant { .. }) => EXIT_DEGENERATE,
            Failure::Lib(Error::PreconditionViolated(_) | Error::MalformedRecord(_)) => EXIT_DATA,
            Failure::Io { .. } => EXIT_IO,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
            Failure::Io { path: Some(p), source } => format!("{}: {source}", p.display()),
            Failure::Io { path: None, source } => source.to_string(),
        }
    }
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::EnumP(args) => cmd_enum_p(&args, stdout),
        Command::EnumH(args) => cmd_enum_h(&args, stdout),
        Command::Scan(args) => cmd_scan(&args, stdout, stderr),
        Command::Certify(args) => cmd_certify(&args, stdout, stderr),
        Command::Verify(args) => cmd_verify(&args, stdout),
    }
}

fn write_target(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(io_err(Some(p))),
        None => stdout.write_all(bytes).map_err(io_err(None)),
    }
}

fn emit(
    output: &OutputArgs,
    csv: Vec<u8>,
    svg: impl FnOnce() -> String,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    match output.format {
        Format::Csv => write_target(output.out.as_deref(), &csv, stdout),
        Format::Svg => write_target(output.out.as_deref(), svg().as_bytes(), stdout),
        Format::Both => {
            let out = output
                .out
                .as_deref()
                .ok_or_else(|| Failure::Usage("--format both requires --out".into()))?;
            write_target(Some(&out.with_extension("csv")), &csv, stdout)?;
            write_target(Some(&out.with_extension("svg")), svg().as_bytes(), stdout)
        }
    }
}

fn svg_options(args: &EnumArgs, a_values: impl IntoIterator<Item = f64>) -> SvgOptions {
    let lo = args.b_min.as_ref().map_or(2.0, to_f64);
    let mut opts = SvgOptions::new((0.0, 0.35), (lo, to_f64(&args.b_max)));
    opts.fit_a(a_values);
    opts.tiles = args.output.tiles;
    opts.centers = args.output.centers;
    opts.color = match args.output.color {
        Color::Ab => ColorBy::Density,
        Color::LogR => ColorBy::LogR,
    };
    opts
}

fn cmd_enum_p(args: &EnumArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let b_min = args.b_min.clone().unwrap_or_else(|| int(0));
    let points: Vec<_> = enum_p(&args.b_max, args.r_max).into_iter().filter(|p| p.b0() >= b_min).collect();
    let mut csv = Vec::new();
    write_points_csv(&mut csv, &points).map_err(io_err(None))?;
    emit(&args.output, csv, || {
        points_svg(&points, &svg_options(args, points.iter().map(|p| to_f64(&p.a0()))))
    }, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_enum_h(args: &EnumHArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let range = &args.range;
    let segments: Vec<_> = enum_p(&range.b_max, range.r_max).into_iter().map(|p| segment_h(p, args.n as usize)).collect();
    let b_min = range.b_min.clone().unwrap_or_else(|| int(0));
    let segments = segments_in_window(&segments, &b_min, &range.b_max);
    let mut csv = Vec::new();
    write_segments_csv(&mut csv, &segments).map_err(io_err(None))?;
    emit(&range.output, csv, || {
        let a_values = segments.iter().flat_map(|s| [to_f64(&s.a_at(&s.b_lo)), to_f64(&s.a_at(&s.b_hi))]);
        segments_svg(&segments, &svg_options(range, a_values))
    }, stdout)?;
    Ok(EXIT_OK)
}

fn cmd_scan(args: &ScanArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    let spline = build_bspline(args.n as usize)?;
    let lat = LatticeParams::new(args.a.clone(), args.b.clone())?;
    let result = scan(&spline, &lat, args.grid as usize)?;
    let mut csv = Vec::new();
    write_scan_csv(&mut csv, &result).map_err(io_err(None))?;
    write_target(args.out.as_deref(), &csv, stdout)?;
    let _ = writeln!(stderr, "min sigma = {:e} at (i, j) = {:?}", result.min, result.argmin);
    Ok(EXIT_OK)
}

fn cmd_certify(args: &CertifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match certify_nonframe(args.n as usize, &args.a, &args.b)? {
        CertifyOutcome::NotInH { p, q, examined } => {
            let _ = writeln!(
                stderr,
                "({}, {}) is not in H for n = {}: ab = {p}/{q}, examined (r, mu) = {examined:?}",
                args.a, args.b, args.n
            );
            Ok(EXIT_NOT_IN_H)
        }
        CertifyOutcome::Certified(cert) => {
            write_target(args.out.as_deref(), cert.to_record().as_bytes(), stdout)?;
            match &cert.status {
                CertificateStatus::Verified => Ok(EXIT_OK),
                CertificateStatus::Failed(why) => {
                    let _ = writeln!(stderr, "certificate failed: {why}");
                    Ok(EXIT_FAILED)
                }
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    if args.n.contains(&0) {
        return Err(Failure::Usage("spline orders must be positive".into()));
    }
    let cfg = VerifyConfig {
        b_max: args.b_max.clone(),
        r_max: args.r_max,
        orders: args.n.clone(),
        widen: args.widen,
        ..VerifyConfig::default()
    };
    let results = run_suites(&cfg)?;
    stdout.write_all(format_table(&results).as_bytes()).map_err(io_err(None))?;
    Ok(if results.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAILED })
}
