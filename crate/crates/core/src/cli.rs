//! `wrightfn` command-line front end.
//!
//! Exit status: 0 when every evaluation converged, 1 on non-convergence or a
//! failed self-test, 2 on usage errors, 3 on domain or range errors.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::dequad::QuadratureConfig;
use crate::error::Error;
use crate::selftest;
use crate::wright::wright;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CONVERGED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "wrightfn", version, about = "Evaluate the Wright function W(a,b|z)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate W(a,b|z) at one point
    Eval(EvalArgs),
    /// Write W(a,b|z) on an equally spaced z grid as CSV
    Grid(GridArgs),
    /// Run the built-in identity suite
    Selftest,
    /// Time the reference evaluations
    Bench,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub z: f64,
    /// Target relative tolerance of each quadrature
    #[arg(long)]
    pub tol: Option<f64>,
    /// Significant digits of the printed value
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub digits: u32,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub zmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub zmax: f64,
    /// Number of samples, endpoints included
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Significant digits; shortest round-trip formatting when absent
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub digits: Option<u32>,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub z: f64,
    pub value: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub label: String,
    pub x: f64,
    pub microseconds: f64,
    pub value: f64,
}

/// Formats `v` with `digits` significant digits, `%g` style: fixed notation for
/// decimal exponents in `[-5, digits)`, scientific otherwise, trailing zeros removed.
pub fn format_significant(v: f64, digits: u32) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1) as usize;
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn config(tol: Option<f64>) -> Result<QuadratureConfig, Error> {
    let cfg = match tol {
        Some(t) => QuadratureConfig::default().with_tolerance(t),
        None => QuadratureConfig::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidConfig(_) | Error::InvalidArgument(_) => EXIT_USAGE,
        Error::NotConverged { .. } => EXIT_NOT_CONVERGED,
        _ => EXIT_DOMAIN,
    }
}

pub fn cmd_eval(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let cfg = match config(args.tol) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    match wright(args.a, args.b, args.z, &cfg) {
        Ok(w) => {
            writeln!(out, "{}", format_significant(w.value, args.digits))?;
            writeln!(out, "error estimate: {}", format_significant(w.error_estimate, 3))?;
            writeln!(out, "branch: {}", w.branch)?;
            writeln!(out, "evaluations: {}", w.n_evals)?;
            writeln!(out, "converged: {}", w.converged)?;
            if w.converged {
                Ok(EXIT_OK)
            } else {
                writeln!(err, "warning: quadrature did not reach the requested tolerance")?;
                Ok(EXIT_NOT_CONVERGED)
            }
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(exit_code(&e))
        }
    }
}

/// Equally spaced grid with both endpoints hit exactly.
pub fn grid_points(zmin: f64, zmax: f64, n: usize) -> Vec<f64> {
    let step = (zmax - zmin) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { zmax } else { zmin + step * i as f64 })
        .collect()
}

/// Evaluates the grid concurrently. Failed points carry NaN values and an
/// infinite error estimate; the second element is the worst exit code seen.
pub fn grid_rows(a: f64, b: f64, zs: &[f64], cfg: &QuadratureConfig) -> (Vec<GridRow>, i32, Vec<String>) {
    let results: Vec<_> = zs.par_iter().map(|&z| (z, wright(a, b, z, cfg))).collect();
    let mut code = EXIT_OK;
    let mut notes = Vec::new();
    let rows = results
        .into_iter()
        .map(|(z, r)| match r {
            Ok(w) => {
                if !w.converged {
                    code = code.max(EXIT_NOT_CONVERGED);
                    notes.push(format!("z = {z}: not converged (err {:e})", w.error_estimate));
                }
                GridRow {
                    z,
                    value: w.value,
                    error_estimate: w.error_estimate,
                }
            }
            Err(e) => {
                code = code.max(exit_code(&e));
                notes.push(format!("z = {z}: {e}"));
                GridRow {
                    z,
                    value: f64::NAN,
                    error_estimate: f64::INFINITY,
                }
            }
        })
        .collect();
    (rows, code, notes)
}

pub fn write_csv(rows: &[GridRow], digits: Option<u32>, w: &mut dyn Write) -> io::Result<()> {
    let fmt = |v: f64| match digits {
        Some(d) => format_significant(v, d),
        None => format!("{v:?}"),
    };
    w.write_all(b"z,value,err\n")?;
    for r in rows {
        writeln!(w, "{},{},{}", fmt(r.z), fmt(r.value), fmt(r.error_estimate))?;
    }
    w.flush()
}

fn write_csv_file(path: &Path, rows: &[GridRow], digits: Option<u32>) -> io::Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    write_csv(rows, digits, &mut f)
}

pub fn cmd_grid(args: &GridArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    if args.n < 2 || !(args.zmax > args.zmin) || !args.zmin.is_finite() || !args.zmax.is_finite() {
        writeln!(
            err,
            "error: grid needs n >= 2 and finite zmax > zmin (got n = {}, zmin = {}, zmax = {})",
            args.n, args.zmin, args.zmax
        )?;
        return Ok(EXIT_USAGE);
    }
    let cfg = match config(args.tol) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let zs = grid_points(args.zmin, args.zmax, args.n);
    let (rows, mut code, notes) = grid_rows(args.a, args.b, &zs, &cfg);
    for n in &notes {
        writeln!(err, "warning: {n}")?;
    }
    match &args.out {
        Some(path) => {
            if let Err(e) = write_csv_file(path, &rows, args.digits) {
                writeln!(err, "error: cannot write {}: {e}", path.display())?;
                code = code.max(EXIT_DOMAIN);
            }
        }
        None => write_csv(&rows, args.digits, out)?,
    }
    Ok(code)
}

pub fn cmd_selftest(out: &mut dyn Write) -> io::Result<i32> {
    let groups = selftest::run();
    let mut all = true;
    for g in &groups {
        all &= g.ok();
        writeln!(
            out,
            "{:<4} {:<22} {:>5}/{:<5} worst {:.3e} (tol {:.0e})",
            if g.ok() { "PASS" } else { "FAIL" },
            g.name,
            g.passed,
            g.total,
            g.worst,
            g.tolerance
        )?;
    }
    writeln!(out, "{}", if all { "all groups passed" } else { "some groups failed" })?;
    Ok(if all { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

/// Label, `a`, `b`, tabulated `x` and the `z` passed to the evaluator.
pub type BenchCase = (&'static str, f64, f64, f64, f64);

/// The six timed rows: label, Wright parameters, the tabulated `x` and the `z`
/// actually passed. The `a = 1` rows only reduce to their trigonometric and Bessel
/// forms at `z = -x`.
pub fn bench_cases() -> Vec<BenchCase> {
    let w1: f64 = 2.404825557695773;
    vec![
        ("W(-1/2,1|x) = erf(x/2)+1", -0.5, 1.0, 2.0, 2.0),
        ("W(-1/2,1/2|x) = M_1/2(-x)", -0.5, 0.5, 0.5, 0.5),
        ("W(-1/2,-1/2|x) = G_2(x)", -0.5, -0.5, 1.5, 1.5),
        ("W(-1/3,2/3|x) = M_1/3(-x)", -1.0 / 3.0, 2.0 / 3.0, 0.5, 0.5),
        ("W(1,3/2|-x) = sin(2√x)/√(πx)", 1.0, 1.5, PI * PI, -PI * PI),
        ("W(1,1|-x) = J0(2√x)", 1.0, 1.0, w1 * w1 / 4.0, -w1 * w1 / 4.0),
    ]
}

pub const BENCH_REPS: usize = 200;

/// Median wall time of [`BENCH_REPS`] evaluations per row.
pub fn bench_records() -> Result<Vec<BenchRecord>, Error> {
    let cfg = QuadratureConfig::default();
    let mut records = Vec::new();
    for (label, a, b, x, z) in bench_cases() {
        let w = wright(a, b, z, &cfg)?;
        if !w.converged {
            return Err(Error::NotConverged {
                value: w.value,
                error_estimate: w.error_estimate,
            });
        }
        let mut times: Vec<f64> = (0..BENCH_REPS)
            .map(|_| {
                let t = Instant::now();
                let r = wright(std::hint::black_box(a), b, std::hint::black_box(z), &cfg);
                std::hint::black_box(r).ok();
                t.elapsed().as_secs_f64() * 1e6
            })
            .collect();
        times.sort_by(f64::total_cmp);
        let median = 0.5 * (times[BENCH_REPS / 2 - 1] + times[BENCH_REPS / 2]);
        records.push(BenchRecord {
            label: label.to_string(),
            x,
            microseconds: median,
            value: w.value,
        });
    }
    Ok(records)
}

pub fn cmd_bench(out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match bench_records() {
        Ok(records) => {
            writeln!(out, "{:<32} {:>10} {:>12} {:>24}", "identity", "x", "median µs", "value")?;
            for r in &records {
                writeln!(
                    out,
                    "{:<32} {:>10} {:>12.1} {:>24}",
                    r.label,
                    format_significant(r.x, 6),
                    r.microseconds,
                    format_significant(r.value, 15)
                )?;
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(exit_code(&e))
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::Grid(a) => cmd_grid(a, out, err),
        Command::Selftest => cmd_selftest(out),
        Command::Bench => cmd_bench(out, err),
    }
}
