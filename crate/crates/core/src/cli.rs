//! Command-line front end: radii, verification reports, the property harness,
//! parameter sweeps and series dumps.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{build, verify, CatalogTag, SharpnessReport, Theorem};
use crate::error::{BohrError, Result};
use crate::harness::{run_harness, run_sample, HarnessConfig, HarnessReport, Replay};
use crate::radius::{self, RadiusResult, DEFAULT_TOL};
use crate::series::{TruncatedSeries, DEFAULT_ORDER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "bohr", version, about = "Bohr radii, sharpness checks and randomized inequality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a Bohr radius with its bracket, residual and method.
    Radius(RadiusArgs),
    /// Run sharpness or holds checks for a theorem.
    Verify(VerifyArgs),
    /// Run the randomized property harness.
    Harness(HarnessArgs),
    /// Tabulate a radius over a parameter grid.
    Sweep(SweepArgs),
    /// Dump catalog coefficients as `n re im` lines.
    Series(SeriesArgs),
    /// List theorem labels and radius families.
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RadiusFamily {
    QcUnivalent,
    QcConvex,
    QcBounded,
    LocUnivalent,
    LogS,
    LogInverse,
    LogConvex,
    LogU,
}

#[derive(Args, Debug)]
struct RadiusArgs {
    #[arg(long, value_enum)]
    family: RadiusFamily,
    #[arg(long = "K", default_value_t = 1.0)]
    big_k: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TheoremLabel {
    #[value(name = "2.2")]
    Qc,
    #[value(name = "2.4")]
    QcBounded,
    #[value(name = "2.7")]
    LocUnivalent,
    #[value(name = "3.1")]
    Log,
    #[value(name = "3.3")]
    LogU,
    #[value(name = "remark-convex")]
    LogConvex,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    theorem: TheoremLabel,
    #[arg(long = "K", default_value_t = 1.0)]
    big_k: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct HarnessArgs {
    #[arg(long, default_value_t = HarnessConfig::default().seed)]
    seed: u64,
    /// Samples per check (defaults to each check's own count).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = HarnessConfig::default().order)]
    order: usize,
    /// Replay a single `kind seed order=N [r=x]` line instead of running the suites.
    #[arg(long)]
    replay: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SweepParam {
    #[value(name = "K")]
    K,
    #[value(name = "lambda")]
    Lambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: RadiusFamily,
    #[arg(long, value_enum)]
    param: SweepParam,
    #[arg(long)]
    min: f64,
    #[arg(long)]
    max: f64,
    #[arg(long)]
    steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Part {
    H,
    G,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// One of koebe, koebe-neg, half-plane, u-lambda, harmonic-p, harmonic-q, f-lambda.
    #[arg(long)]
    function: String,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long = "K", default_value_t = 1.0)]
    big_k: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Dump the logarithmic coefficients `gamma_n` instead.
    #[arg(long)]
    log: bool,
    /// Part of a harmonic mapping to dump.
    #[arg(long, value_enum, default_value_t = Part::H)]
    part: Part,
}

/// Formats with 12 significant digits.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        format!("{:.11e}", x)
    }
}

/// Radius of `family` at the given parameters.
pub fn radius_for(family: RadiusFamily, big_k: f64, lambda: f64, tol: f64) -> Result<RadiusResult> {
    match family {
        RadiusFamily::QcUnivalent => radius::radius_qc_univalent(big_k),
        RadiusFamily::QcConvex => radius::radius_qc_convex(big_k),
        RadiusFamily::QcBounded => radius::radius_qc_bounded_with_tol(big_k, tol),
        RadiusFamily::LocUnivalent => radius::radius_locally_univalent_with_tol(lambda, tol),
        RadiusFamily::LogS => Ok(radius::radius_log_s()),
        RadiusFamily::LogInverse => Ok(radius::radius_log_inverse()),
        RadiusFamily::LogConvex => Ok(radius::radius_log_convex()),
        RadiusFamily::LogU => radius::radius_log_u(lambda),
    }
}

fn write_radius(out: &mut dyn Write, family: RadiusFamily, r: &RadiusResult) -> std::io::Result<()> {
    let name = family.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default();
    writeln!(out, "family {name}")?;
    writeln!(out, "value {}", fmt12(r.value))?;
    writeln!(out, "bracket {} {}", fmt12(r.bracket.0), fmt12(r.bracket.1))?;
    writeln!(out, "residual {}", fmt12(r.residual))?;
    if let Some((lo, hi)) = r.endpoint_values {
        writeln!(out, "endpoint_values {} {}", fmt12(lo), fmt12(hi))?;
    }
    writeln!(out, "method {}", r.method)
}

fn theorems(args: &VerifyArgs) -> Vec<Theorem> {
    let (big_k, lambda) = (args.big_k, args.lambda);
    match args.theorem {
        TheoremLabel::Qc => vec![Theorem::QcUnivalent { big_k }, Theorem::QcConvex { big_k }],
        TheoremLabel::QcBounded => vec![Theorem::QcBounded { big_k }],
        TheoremLabel::LocUnivalent => vec![Theorem::LocallyUnivalent { lambda }],
        TheoremLabel::Log => vec![Theorem::LogUnivalent, Theorem::LogInverse],
        TheoremLabel::LogU => vec![Theorem::LogU { lambda }],
        TheoremLabel::LogConvex => vec![Theorem::LogConvex],
    }
}

fn write_report(out: &mut dyn Write, rep: &SharpnessReport) -> std::io::Result<()> {
    writeln!(out, "theorem {}", rep.theorem)?;
    writeln!(out, "  kind {:?}", rep.kind)?;
    writeln!(out, "  order {}", rep.order)?;
    writeln!(out, "  r0 {}", fmt12(rep.r0))?;
    writeln!(out, "  threshold {}", fmt12(rep.threshold))?;
    writeln!(out, "  sum {}", fmt12(rep.at_radius.sum_value))?;
    writeln!(out, "  tail {}", fmt12(rep.tail_bound))?;
    writeln!(out, "  verdict_at_r0 {}", rep.at_radius.verdict)?;
    if let Some(m) = rep.equality_margin {
        writeln!(out, "  equality_margin {}", fmt12(m))?;
    }
    if let Some(b) = rep.beyond {
        writeln!(out, "  r_beyond {}", fmt12(b.r))?;
        writeln!(out, "  sum_beyond {}", fmt12(b.sum_value))?;
    }
    if let Some(m) = rep.violation_margin {
        writeln!(out, "  violation_margin {}", fmt12(m))?;
    }
    writeln!(out, "  result {}", if rep.passed { "pass" } else { "FAIL" })
}

fn write_harness(out: &mut dyn Write, rep: &HarnessReport) -> std::io::Result<()> {
    writeln!(out, "seed {} order {}", rep.seed, rep.order)?;
    for s in &rep.suites {
        writeln!(out, "{} {}/{} min_margin {}", s.kind, s.passed, s.samples, fmt12(s.min_margin))?;
        for line in &s.failures {
            writeln!(out, "failure {line}")?;
        }
    }
    match &rep.hunt.counterexample {
        Some(line) => writeln!(out, "hunt r={} counterexample {line}", fmt12(rep.hunt.radius)),
        None => writeln!(out, "hunt r={} no counterexample in {} draws", fmt12(rep.hunt.radius), rep.hunt.draws),
    }
}

#[derive(Serialize)]
struct SweepRow {
    param: f64,
    r0: f64,
    residual: f64,
}

fn sweep(args: &SweepArgs) -> Result<Vec<SweepRow>> {
    let expected = match args.family {
        RadiusFamily::QcUnivalent | RadiusFamily::QcConvex | RadiusFamily::QcBounded => Some(SweepParam::K),
        RadiusFamily::LocUnivalent | RadiusFamily::LogU => Some(SweepParam::Lambda),
        _ => None,
    };
    if expected != Some(args.param) {
        return Err(BohrError::Domain("family does not depend on the swept parameter".into()));
    }
    if !(args.min < args.max) || args.steps < 2 {
        return Err(BohrError::Domain("sweep needs min < max and steps >= 2".into()));
    }
    (0..args.steps)
        .into_par_iter()
        .map(|i| {
            let t = i as f64 / (args.steps - 1) as f64;
            let p = if i == args.steps - 1 { args.max } else { args.min + t * (args.max - args.min) };
            let r = match args.param {
                SweepParam::K => radius_for(args.family, p, 1.0, DEFAULT_TOL)?,
                SweepParam::Lambda => radius_for(args.family, 1.0, p, DEFAULT_TOL)?,
            };
            Ok(SweepRow { param: p, r0: r.value, residual: r.residual })
        })
        .collect()
}

fn series_for(args: &SeriesArgs) -> Result<TruncatedSeries> {
    let tag = CatalogTag::from_name(&args.function, args.big_k, args.lambda)?;
    let f = build(tag, args.order)?;
    let s = match (args.part, f.pair()) {
        (Part::G, Some(p)) => p.g().clone(),
        (Part::G, None) => return Err(BohrError::Domain(format!("{tag} has no co-analytic part"))),
        _ => f.analytic_part().clone(),
    };
    if args.log {
        TruncatedSeries::new(s.logarithmic_coefficients()?)
    } else {
        Ok(s)
    }
}

const LIST: &[(&str, &str)] = &[
    ("2.2", "K-quasiconformal h + conj(g): univalent h gives (5K+1-sqrt(8K(3K+1)))/(K+1); convex h gives (K+1)/(5K+1)"),
    ("2.4", "K-quasiconformal h + conj(g) with |h| <= 1, g'(0) = 0: root of (1+k) r/(1-r) + k log(1-r) = 1/2"),
    ("2.7", "uniformly locally univalent, ||P_f|| <= 2 lambda: root of r + r sqrt(zeta(2)-1) sqrt(exp(4 lambda^2 r^2/(1-r^2))-1) = -F_lambda(-1)"),
    ("3.1", "logarithmic coefficients: f in S gives 1 - e^{-1/2}; inverse functions give (sqrt(e)-1)/e"),
    ("3.3", "logarithmic coefficients, f in U(lambda): root of (1-r)(1-lambda r) = e^{-1} below (1+lambda^2)/(2(1+lambda))"),
    ("remark-convex", "logarithmic coefficients, f convex: 1 - 1/e"),
];

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| BohrError::Evaluation(format!("output error: {e}"));
    match cli.command {
        Command::Radius(a) => {
            let r = radius_for(a.family, a.big_k, a.lambda, a.tol)?;
            write_radius(out, a.family, &r).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let mut ok = true;
            let mut reports = Vec::new();
            for t in theorems(&a) {
                let rep = verify(t, a.order)?;
                ok &= rep.passed;
                reports.push(rep);
            }
            if a.json {
                let text = serde_json::to_string_pretty(&reports).map_err(|e| BohrError::Evaluation(e.to_string()))?;
                writeln!(out, "{text}").map_err(io)?;
            } else {
                for rep in &reports {
                    write_report(out, rep).map_err(io)?;
                }
            }
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Harness(a) => {
            if let Some(line) = a.replay {
                let replay: Replay = line.parse()?;
                let o = run_sample(&replay)?;
                writeln!(
                    out,
                    "{replay} lhs {} rhs {} allowance {} margin {} {}",
                    fmt12(o.lhs),
                    fmt12(o.rhs),
                    fmt12(o.allowance),
                    fmt12(o.margin),
                    if o.passed { "pass" } else { "FAIL" }
                )
                .map_err(io)?;
                return Ok(if o.passed { EXIT_OK } else { EXIT_FAILED });
            }
            if a.order < 2 {
                return Err(BohrError::Domain("harness order must be at least 2".into()));
            }
            let cfg = HarnessConfig { seed: a.seed, order: a.order, samples: a.samples, ..HarnessConfig::default() };
            let rep = run_harness(&cfg);
            write_harness(out, &rep).map_err(io)?;
            Ok(if rep.all_passed() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Sweep(a) => {
            let rows = sweep(&a)?;
            match a.format {
                Format::Csv => {
                    writeln!(out, "param,r0,residual").map_err(io)?;
                    for row in &rows {
                        writeln!(out, "{},{},{}", fmt12(row.param), fmt12(row.r0), fmt12(row.residual)).map_err(io)?;
                    }
                }
                Format::Json => {
                    let text = serde_json::to_string_pretty(&rows).map_err(|e| BohrError::Evaluation(e.to_string()))?;
                    writeln!(out, "{text}").map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Series(a) => {
            write!(out, "{}", series_for(&a)?.dump()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::List => {
            for (label, text) in LIST {
                writeln!(out, "{label}\t{text}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `argv` (program name first) and returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                BohrError::Domain(_) | BohrError::Parse(_) | BohrError::Unsupported(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("bohr").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt12(0.299823576294567), "0.299823576295");
        assert_eq!(fmt12(12.5), "12.5000000000");
        assert_eq!(fmt12(1e-9), "1.00000000000e-9");
        assert_eq!(fmt12(0.0), "0");
    }

    #[test]
    fn radius_output() {
        let (code, out, _) = run_str(&["radius", "--family", "log-u", "--lambda", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("value 0.393469340287"), "{out}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["radius", "--family", "nope"]).0, 2);
        assert_eq!(run_str(&["radius", "--family", "qc-convex", "--K", "0.5"]).0, 2);
        assert_eq!(run_str(&[]).0, 2);
    }

    #[test]
    fn sweep_csv() {
        let (code, out, _) =
            run_str(&["sweep", "--family", "qc-univalent", "--param", "K", "--min", "1", "--max", "10", "--steps", "10"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "param,r0,residual");
        assert_eq!(lines.len(), 11);
        let r0: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
        assert!(r0.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(run_str(&["sweep", "--family", "log-s", "--param", "K", "--min", "1", "--max", "2", "--steps", "3"]).0, 2);
    }

    #[test]
    fn series_dump_parses_back() {
        let (code, out, _) = run_str(&["series", "--function", "koebe", "--order", "5"]);
        assert_eq!(code, 0);
        let s = TruncatedSeries::parse_dump(&out).unwrap();
        assert_eq!(s.coeffs()[5].re, 5.0);
        assert_eq!(run_str(&["series", "--function", "koebe", "--part", "g"]).0, 2);
    }
}
