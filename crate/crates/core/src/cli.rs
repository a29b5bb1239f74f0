//! The `d4rep` command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification or analysis
//! failure, 3 I/O or parse error. Diagnostics go to stderr as one JSON
//! object `{"error": <code>, "message": <text>}`.

use std::f64::consts::PI;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::analysis::{canonicalize, commutant_dimension, trace_invariants};
use crate::character::Character;
use crate::constructor::{build, build_unrestricted, Branch};
use crate::error::Error;
use crate::file::{compute_residuals, matrix_to_json, verify_file, MatrixJson, Parameters, RepresentationFile};
use crate::graphrep::to_graph_rep;
use crate::oracle::cross_check;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const TOL_ENV: &str = "D4REP_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "d4rep",
    version,
    about = "Regular locally scalar representations of the D̃4 graph"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct the representation with parameters (λ, χ) and write it as JSON.
    Build {
        #[command(flatten)]
        character: CharacterArgs,
        #[arg(long)]
        lambda: f64,
        /// Radians.
        #[arg(long, allow_hyphen_values = true)]
        chi: f64,
        /// Output file, `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Recompute every residual of a representation file.
    Verify {
        /// Input file, `-` for stdin.
        file: String,
        /// Defaults to $D4REP_TOL, then 1e-10.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Recover the canonical parameters (λ, χ) of a representation file.
    Canon { file: String },
    /// Tabulate invariants over a (λ, χ) grid as CSV.
    Sweep {
        #[command(flatten)]
        character: CharacterArgs,
        #[arg(long)]
        lambda_steps: usize,
        #[arg(long)]
        chi_steps: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Cross-check the family against randomly sampled Bloch-sphere linkages.
    Oracle {
        #[command(flatten)]
        character: CharacterArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CharacterArgs {
    /// Normalized weights α1,α2,α3,α4.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha: Option<Vec<f64>>,
    /// Unnormalized weights α0,α1,..,α4; divided through by α0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    alpha_raw: Option<Vec<f64>>,
}

impl CharacterArgs {
    fn character(&self) -> std::result::Result<Character, Failure> {
        let count = |flag: &str, v: &[f64], n: usize| {
            if v.len() == n {
                Ok(())
            } else {
                Err(Failure::new(
                    EXIT_INVALID,
                    "InvalidArgument",
                    format!("{flag} takes {n} comma-separated values, got {}", v.len()),
                ))
            }
        };
        let c = match (&self.alpha, &self.alpha_raw) {
            (Some(a), _) => {
                count("--alpha", a, 4)?;
                Character::new([a[0], a[1], a[2], a[3]])
            }
            (_, Some(r)) => {
                count("--alpha-raw", r, 5)?;
                Character::from_raw([r[0], r[1], r[2], r[3], r[4]])
            }
            _ => unreachable!("clap enforces one of --alpha, --alpha-raw"),
        };
        c.map_err(invalid)
    }
}

struct Failure {
    code: i32,
    error: String,
    message: String,
}

impl Failure {
    fn new(code: i32, error: impl Into<String>, message: impl ToString) -> Self {
        Failure {
            code,
            error: error.into(),
            message: message.to_string(),
        }
    }

    fn from_error(code: i32, e: Error) -> Self {
        Failure::new(code, e.code(), e)
    }

    fn io(e: impl ToString) -> Self {
        Failure::new(EXIT_IO, "Io", e)
    }
}

type CmdResult = std::result::Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> std::result::Result<String, Failure> {
        if path == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(Failure::io)?;
            Ok(s)
        } else {
            fs::read_to_string(PathBuf::from(path)).map_err(|e| Failure::io(format!("{path}: {e}")))
        }
    }

    fn write(&mut self, path: &str, contents: &str) -> std::result::Result<(), Failure> {
        if path == "-" {
            self.stdout.write_all(contents.as_bytes()).map_err(Failure::io)
        } else {
            fs::write(path, contents).map_err(|e| Failure::io(format!("{path}: {e}")))
        }
    }

    fn print_json<T: Serialize>(&mut self, value: &T) -> std::result::Result<(), Failure> {
        let mut s = serde_json::to_string_pretty(value).map_err(Failure::io)?;
        s.push('\n');
        self.write("-", &s)
    }

    fn read_file(&mut self, path: &str) -> std::result::Result<RepresentationFile, Failure> {
        let text = self.read(path)?;
        RepresentationFile::from_json(&text).map_err(|e| Failure::new(EXIT_IO, "Parse", e))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let diag = serde_json::json!({ "error": f.error, "message": f.message });
            let _ = writeln!(stderr, "{diag}");
            f.code
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io) -> CmdResult {
    match cmd {
        Command::Build {
            character,
            lambda,
            chi,
            out,
        } => cmd_build(&character, lambda, chi, &out, io),
        Command::Verify { file, tol } => cmd_verify(&file, tol, io),
        Command::Canon { file } => cmd_canon(&file, io),
        Command::Sweep {
            character,
            lambda_steps,
            chi_steps,
            out,
        } => cmd_sweep(&character, lambda_steps, chi_steps, &out, io),
        Command::Oracle {
            character,
            trials,
            seed,
        } => cmd_oracle(&character, trials, seed, io),
    }
}

fn invalid(e: Error) -> Failure {
    Failure::from_error(EXIT_INVALID, e)
}

fn cmd_build(args: &CharacterArgs, lambda: f64, chi: f64, out: &str, io: &mut Io) -> CmdResult {
    let c = args.character()?;
    let q = build(&c, lambda, chi).map_err(invalid)?;
    let file = RepresentationFile::from_quadruple(&q, Some(Parameters { lambda, chi })).map_err(invalid)?;
    let mut json = file.to_json();
    json.push('\n');
    io.write(out, &json)?;
    Ok(EXIT_OK)
}

fn resolve_tol(flag: Option<f64>) -> std::result::Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| Failure::new(EXIT_INVALID, "InvalidTolerance", format!("{TOL_ENV}={s}: {e}")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::new(
            EXIT_INVALID,
            "InvalidTolerance",
            format!("tolerance {tol} must be positive"),
        ));
    }
    Ok(tol)
}

fn cmd_verify(path: &str, tol: Option<f64>, io: &mut Io) -> CmdResult {
    let tol = resolve_tol(tol)?;
    let file = io.read_file(path)?;
    let report = verify_file(&file, tol).map_err(|e| Failure::from_error(EXIT_FAILED, e))?;
    io.print_json(&report)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct CanonOutput {
    branch: Branch,
    lambda: f64,
    chi: f64,
    gauge: MatrixJson,
    printed_domain: bool,
}

fn cmd_canon(path: &str, io: &mut Io) -> CmdResult {
    let file = io.read_file(path)?;
    let q = file.quadruple().map_err(|e| Failure::from_error(EXIT_FAILED, e))?;
    let form = canonicalize(&q).map_err(|e| Failure::from_error(EXIT_FAILED, e))?;
    io.print_json(&CanonOutput {
        branch: form.branch,
        lambda: form.lambda,
        chi: form.chi,
        gauge: matrix_to_json(&form.gauge),
        printed_domain: form.in_printed_domain(),
    })?;
    Ok(EXIT_OK)
}

pub const SWEEP_HEADER: &str =
    "alpha1,alpha2,alpha3,alpha4,lambda,chi,tr12,tr13,tr14,tr23,tr24,tr34,im_tr123,commutant_dim,max_residual";

/// Grid points of a sweep: λ outer, χ inner.
///
/// Generic characters use `n` points spanning the closed λ range. The equal
/// character uses `λᵢ = i/(2n)`, `i < n`. χ always takes `m` points
/// `−π + 2π(j+1)/m`, ending at π.
pub fn sweep_grid(c: &Character, n: usize, m: usize) -> Vec<(f64, f64)> {
    let lambdas: Vec<f64> = match c.lambda_range() {
        Ok(r) if n == 1 => vec![r.lower],
        Ok(r) => (0..n)
            .map(|i| {
                if i == n - 1 {
                    r.upper
                } else {
                    r.lower + (r.upper - r.lower) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
        Err(_) => (0..n).map(|i| 0.5 * i as f64 / n as f64).collect(),
    };
    let chis: Vec<f64> = (0..m).map(|j| -PI + 2.0 * PI * (j + 1) as f64 / m as f64).collect();
    lambdas
        .iter()
        .flat_map(|&l| chis.iter().map(move |&x| (l, x)))
        .collect()
}

/// One CSV row. Floats use the shortest representation that parses back
/// exactly.
fn sweep_row(c: &Character, lambda: f64, chi: f64) -> Result<String, Error> {
    let q = build_unrestricted(c, lambda, chi)?;
    let g = to_graph_rep(&q)?;
    let max_residual = compute_residuals(&q, &g).max();
    let inv = trace_invariants(&q);
    let num = |x: f64| format!("{x:?}");
    let mut fields: Vec<String> = c.alpha().into_iter().map(num).collect();
    fields.push(num(lambda));
    fields.push(num(chi));
    fields.extend(inv.pairwise.into_iter().map(num));
    fields.push(num(inv.triple_im));
    fields.push(commutant_dimension(&q).to_string());
    fields.push(num(max_residual));
    Ok(fields.join(","))
}

fn cmd_sweep(args: &CharacterArgs, n: usize, m: usize, out: &str, io: &mut Io) -> CmdResult {
    let c = args.character()?;
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for (lambda, chi) in sweep_grid(&c, n, m) {
        csv.push_str(&sweep_row(&c, lambda, chi).map_err(invalid)?);
        csv.push('\n');
    }
    io.write(out, &csv)?;
    Ok(EXIT_OK)
}

fn cmd_oracle(args: &CharacterArgs, trials: usize, seed: u64, io: &mut Io) -> CmdResult {
    let c = args.character()?;
    let report = cross_check(&c, trials, seed);
    io.print_json(&report)?;
    Ok(if report.failures() == 0 { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_grid_includes_endpoints() {
        let c = Character::new([0.3, 0.4, 0.6, 0.7]).unwrap();
        let g = sweep_grid(&c, 3, 4);
        assert_eq!(g.len(), 12);
        assert!((g[0].0 - 0.2).abs() < 1e-15);
        assert!((g[11].0 - 0.5).abs() < 1e-15);
        assert_eq!(g[3].1, PI);
        assert!((g[0].1 + PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn equal_grid_is_right_open() {
        let g = sweep_grid(&Character::EQUAL, 4, 1);
        let l: Vec<f64> = g.iter().map(|p| p.0).collect();
        assert_eq!(l, vec![0.0, 0.125, 0.25, 0.375]);
    }

    #[test]
    fn tolerance_flag_wins() {
        assert_eq!(resolve_tol(Some(1e-6)).ok(), Some(1e-6));
        assert!(resolve_tol(Some(-1.0)).is_err());
    }
}
