//! Command-line front end.
//!
//! Exit codes: `0` every check passed, `1` a verification check failed (the
//! full report is still written), `2` usage or input error. Every flag can
//! also be set through an environment variable with the `GENOSC_` prefix
//! (`GENOSC_M`, `GENOSC_SEED`, ...).

use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use genosc_core::geometry::OscillatorParams;

use crate::dirac::{run_dirac, DEFAULT_PAIR_BUDGET};
use crate::eval::{eval_element, eval_metric, parse_element, parse_point, parse_rational};
use crate::report::to_json;
use crate::spectrum::run_spectrum;
use crate::verify::{run_verify, Tolerances, VerifyConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "genosc",
    version,
    about = "Verification campaigns for the generalized oscillator"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sampled checks of the metric, Hamiltonian fields, brackets and polarization.
    Verify(VerifyArgs),
    /// Eigenvalues and multiplicities of the quantized Hamiltonian.
    Spectrum(SpectrumArgs),
    /// Exact Dirac-condition sweep over all basis pairs.
    Dirac(DiracArgs),
    /// Evaluate the metric or an algebra element at a point read from stdin.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    /// Complex dimension.
    #[arg(long, env = "GENOSC_M", value_parser = clap::value_parser!(u64).range(1..))]
    pub m: u64,
    /// Deformation parameter.
    #[arg(long, env = "GENOSC_A", default_value_t = 0.0)]
    pub a: f64,
    /// Quantum of action as an exact rational, e.g. `1` or `1/2`.
    #[arg(long, env = "GENOSC_HBAR", default_value = "1")]
    pub hbar: String,
    /// Require even m.
    #[arg(long, env = "GENOSC_STRICT")]
    pub strict: bool,
    #[arg(long, env = "GENOSC_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl ParamArgs {
    fn params(&self) -> Result<OscillatorParams, String> {
        let hbar = parse_rational(&self.hbar).map_err(|e| e.to_string())?;
        let p = OscillatorParams::with_hbar(self.m as usize, self.a, hbar)
            .map_err(|e| e.to_string())?;
        if self.strict {
            p.strict().map_err(|e| e.to_string())
        } else {
            Ok(p)
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, env = "GENOSC_SAMPLES", default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, env = "GENOSC_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Sampled points satisfy r^m >= a^m + margin.
    #[arg(long, env = "GENOSC_MARGIN", default_value_t = 0.1)]
    pub margin: f64,
    /// Worker threads (0 = all cores). Does not change the report.
    #[arg(long, env = "GENOSC_WORKERS", default_value_t = 0)]
    pub workers: usize,
    #[arg(long, env = "GENOSC_TOL_DET")]
    pub tol_det: Option<f64>,
    #[arg(long, env = "GENOSC_TOL_INVERSE")]
    pub tol_inverse: Option<f64>,
    #[arg(long, env = "GENOSC_TOL_FIELD")]
    pub tol_field: Option<f64>,
    #[arg(long, env = "GENOSC_TOL_BRACKET")]
    pub tol_bracket: Option<f64>,
    #[arg(long, env = "GENOSC_TOL_RICCI")]
    pub tol_ricci: Option<f64>,
    #[arg(long, env = "GENOSC_TOL_POLARIZATION")]
    pub tol_polarization: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Highest degree l to report.
    #[arg(long, env = "GENOSC_LMAX")]
    pub lmax: u32,
}

#[derive(Debug, Args)]
pub struct DiracArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Polynomial degree of the representation.
    #[arg(long, env = "GENOSC_L")]
    pub l: u32,
    /// Warn when m^4 basis pairs exceed this count.
    #[arg(long, env = "GENOSC_PAIR_BUDGET", default_value_t = DEFAULT_PAIR_BUDGET)]
    pub pair_budget: u64,
    #[arg(long, env = "GENOSC_WORKERS", default_value_t = 0)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalTarget {
    Metric,
    Element,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub target: EvalTarget,
    /// Deformation parameter.
    #[arg(long, env = "GENOSC_A", default_value_t = 0.0)]
    pub a: f64,
    /// Expected dimension; defaults to the length of the input point.
    #[arg(long, env = "GENOSC_M")]
    pub m: Option<usize>,
    /// Element to evaluate: `H`, `N<a>,<b>`, `const:<q>` or a JSON object.
    #[arg(long)]
    pub element: Option<String>,
}

fn tol_or(t: Option<f64>, default: f64) -> f64 {
    t.unwrap_or(default)
}

/// Parses `args`, runs the command and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let usage = |stderr: &mut dyn Write, msg: &str| {
        let _ = writeln!(stderr, "error: {msg}");
        EXIT_USAGE
    };
    match cli.command {
        Command::Verify(args) => {
            let params = match args.params.params() {
                Ok(p) => p,
                Err(msg) => return usage(stderr, &msg),
            };
            let defaults = Tolerances::default();
            let config = VerifyConfig {
                params,
                samples: args.samples as usize,
                seed: args.seed,
                margin: args.margin,
                workers: args.workers,
                tolerances: Tolerances {
                    det: tol_or(args.tol_det, defaults.det),
                    inverse: tol_or(args.tol_inverse, defaults.inverse),
                    field: tol_or(args.tol_field, defaults.field),
                    bracket: tol_or(args.tol_bracket, defaults.bracket),
                    ricci: tol_or(args.tol_ricci, defaults.ricci),
                    polarization: tol_or(args.tol_polarization, defaults.polarization),
                },
            };
            match run_verify(&config) {
                Ok(report) => {
                    let text = match args.params.format {
                        Format::Json => report.to_json(),
                        Format::Table => report.to_table(),
                    };
                    let _ = stdout.write_all(text.as_bytes());
                    if report.pass {
                        EXIT_PASS
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(e) => usage(stderr, &e.to_string()),
            }
        }
        Command::Spectrum(args) => {
            let params = match args.params.params() {
                Ok(p) => p,
                Err(msg) => return usage(stderr, &msg),
            };
            match run_spectrum(&params, args.lmax) {
                Ok(report) => {
                    let text = match args.params.format {
                        Format::Json => to_json(&report),
                        Format::Table => report.to_table(),
                    };
                    let _ = stdout.write_all(text.as_bytes());
                    if report.pass {
                        EXIT_PASS
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(e) => usage(stderr, &e.to_string()),
            }
        }
        Command::Dirac(args) => {
            let params = match args.params.params() {
                Ok(p) => p,
                Err(msg) => return usage(stderr, &msg),
            };
            let pairs = (params.m() as u64).pow(4);
            if pairs > args.pair_budget {
                let _ = writeln!(
                    stderr,
                    "warning: {pairs} basis pairs exceed the budget of {}",
                    args.pair_budget
                );
            }
            match run_dirac(&params, args.l, args.pair_budget, args.workers) {
                Ok(outcome) => {
                    let text = match args.params.format {
                        Format::Json => outcome.report.to_json(),
                        Format::Table => outcome.report.to_table(),
                    };
                    let _ = stdout.write_all(text.as_bytes());
                    if outcome.report.pass {
                        EXIT_PASS
                    } else {
                        EXIT_FAIL
                    }
                }
                Err(e) => usage(stderr, &e.to_string()),
            }
        }
        Command::Eval(args) => {
            let mut input = String::new();
            if let Err(e) = stdin.read_to_string(&mut input) {
                return usage(stderr, &format!("cannot read stdin: {e}"));
            }
            let point = match parse_point(&input) {
                Ok(p) => p,
                Err(e) => return usage(stderr, &e.to_string()),
            };
            let m = point.dim();
            if let Some(expected) = args.m {
                if expected != m {
                    return usage(
                        stderr,
                        &format!("point has {m} coordinates, --m is {expected}"),
                    );
                }
            }
            let params = match OscillatorParams::new(m, args.a) {
                Ok(p) => p,
                Err(e) => return usage(stderr, &e.to_string()),
            };
            let text = match args.target {
                EvalTarget::Metric => eval_metric(&params, &point).map(|r| to_json(&r)),
                EvalTarget::Element => {
                    let Some(spec) = args.element.as_deref() else {
                        return usage(stderr, "eval element requires --element");
                    };
                    let element = match parse_element(spec, m) {
                        Ok(e) => e,
                        Err(e) => return usage(stderr, &e.to_string()),
                    };
                    eval_element(&params, &point, spec, &element).map(|r| to_json(&r))
                }
            };
            match text {
                Ok(text) => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_PASS
                }
                Err(e) => usage(stderr, &e.to_string()),
            }
        }
    }
}
