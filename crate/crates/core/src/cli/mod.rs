//! Command-line front end: `verify`, `eval`, `kernel` and `basis`.

pub mod expr;
mod suite;

pub use suite::{run_check, SuiteError, SuiteParams, CHECK_NAMES};

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::Signature;
use crate::kernels::{nu_bosonic, nu_super_dirac, nu_super_laplace};
use crate::operators::{monogenic_basis, Side};

#[derive(Debug, Parser)]
#[command(name = "supercauchy", version, about = "Exact and numeric verification of Clifford analysis in superspace")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification checks and emit one JSON line per check.
    Verify {
        /// Check names, or `all`.
        #[arg(required = true)]
        checks: Vec<String>,
        #[command(flatten)]
        params: SuiteArgs,
    },
    /// Evaluate an expression and print its canonical form.
    Eval {
        expression: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Print a fundamental solution: `nu1`, `nu2` (super) or `nuK` with a
    /// trailing `b` for the bosonic `ν_K^{m|0}`, e.g. `nu4b`.
    Kernel {
        which: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Expand `x̀ - ỳ` into the parameters.
        #[arg(long)]
        expand: bool,
    },
    /// Print a basis of spherical monogenics of degree `k` as JSON.
    Basis {
        k: u32,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Maximal Weyl degree of the coefficients.
        #[arg(long, default_value_t = 2)]
        cap: u32,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub radius: Option<f64>,
    /// Comma-separated coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub center: Option<Vec<f64>>,
    #[arg(long)]
    pub resolution: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
}

impl From<SuiteArgs> for SuiteParams {
    fn from(a: SuiteArgs) -> Self {
        SuiteParams {
            m: a.m,
            n: a.n,
            trials: a.trials,
            seed: a.seed,
            radius: a.radius,
            center: a.center,
            resolution: a.resolution,
            tol: a.tol,
        }
    }
}

pub fn usage() -> String {
    format!(
        "usage: supercauchy verify <CHECK>... [--m M] [--n N] [--trials T] [--seed S] \
         [--radius R] [--center C1,C2,..] [--resolution N] [--tol TOL] [--out PATH]\n\
         checks: {}, all",
        CHECK_NAMES.join(", ")
    )
}

/// Runs a parsed command. Returns the process exit code: 0 when every check
/// passes or is vacuous, 1 on a failed check, 2 on invalid input.
pub fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let mut file;
    let out: &mut dyn Write = match &cli.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    let code = match cli.command {
        Command::Verify { checks, params } => {
            let names: Vec<String> = if checks.iter().any(|c| c == "all") {
                CHECK_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                checks
            };
            if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
                writeln!(stderr, "unknown check {bad:?}\n{}", usage())?;
                return Ok(2);
            }
            let params = SuiteParams::from(params);
            let mut code = 0;
            for name in &names {
                match run_check(name, &params) {
                    Ok(report) => {
                        writeln!(out, "{}", report.to_json_line())?;
                        if !report.ok() {
                            code = code.max(1);
                        }
                    }
                    Err(e) => {
                        writeln!(stderr, "{name}: {e}")?;
                        code = 2;
                    }
                }
            }
            code
        }
        Command::Eval { expression, m, n } => {
            let ast = match expr::parse(&expression) {
                Ok(a) => a,
                Err(e) => {
                    writeln!(stderr, "{e}")?;
                    return Ok(2);
                }
            };
            let sig = if ast.mentions_parameters() {
                Signature::with_params(m, n)
            } else {
                Signature::new(m, n)
            };
            match ast.evaluate(sig) {
                Ok(v) => {
                    writeln!(out, "{v}")?;
                    0
                }
                Err(e) => {
                    writeln!(stderr, "{e}")?;
                    2
                }
            }
        }
        Command::Kernel { which, m, n, expand } => {
            let kernel = match which.as_str() {
                "nu1" => nu_super_dirac(m, n),
                "nu2" => nu_super_laplace(m, n),
                other => match other
                    .strip_prefix("nu")
                    .and_then(|s| s.strip_suffix('b'))
                    .and_then(|s| s.parse::<usize>().ok())
                {
                    Some(k) => nu_bosonic(Signature::new(m, n), k),
                    None => {
                        writeln!(stderr, "unknown kernel {other:?}; expected nu1, nu2 or nuKb")?;
                        return Ok(2);
                    }
                },
            };
            match kernel {
                Ok(k) => {
                    let k = if expand { k.expand_parameters() } else { k };
                    writeln!(out, "{k}")?;
                    0
                }
                Err(e) => {
                    writeln!(stderr, "{e}")?;
                    2
                }
            }
        }
        Command::Basis { k, m, n, cap, side } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            match monogenic_basis(Signature::new(m, n), k, cap, side) {
                Ok(b) => {
                    writeln!(out, "{}", serde_json::to_string(&b).expect("basis serializes"))?;
                    0
                }
                Err(e) => {
                    writeln!(stderr, "{e}")?;
                    2
                }
            }
        }
    };
    out.flush()?;
    Ok(code)
}
