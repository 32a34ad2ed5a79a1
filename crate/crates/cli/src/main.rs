//! `rotsurf`: invariants, sweeps, classification and theorem checks for
//! rotational surfaces in `E⁴₂`.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{ClassifyOptions, OracleOptions, Outcome, Status};
use input::{load_spec, load_surface, load_surface_spec, InputError};
use rotsurf::TheoremId;

const AFTER_HELP: &str = "\
Spec files are JSON. A surface spec is {\"kind\", \"curve\", \"t_domain\"}; a curve spec is
{\"family\", \"params\", \"s_domain\", \"samples\"}. Floats in every report are written with 17
significant digits, so identical inputs give identical bytes.

CSV columns (--format csv):
  check-curve     s, unit_speed_residual[, positivity, nondegenerate_normal]
  invariants      s, a, b, c, d, epsilon, H3, H4, K, L, M, N
  sweep           t, s, L, M, N, K, H2, dG12, dG13, dG14, dG23, dG24, dG34
                  (H2 = <H, H>, dGij = ambient bivector coordinates of the Laplacian of G)
  classify        s, f
  verify          theorem, line, pass, measured, threshold
  oracle-compare  t, s, rel_error
See docs/sweep-schema.json for the sweep layout.

Exit codes: 0 success, 2 a verification line failed, 1 input error.
ROTSURF_THREADS caps the number of worker threads.";

#[derive(Parser)]
#[command(name = "rotsurf", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = rotsurf::classify::DEFAULT_S_COUNT)]
    s_count: usize,
    /// Fraction of each domain excluded at both ends.
    #[arg(long, default_value_t = rotsurf::classify::DEFAULT_MARGIN)]
    margin: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Unit-speed residuals and admissibility of a profile curve.
    CheckCurve {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 65)]
        s_count: usize,
        /// Largest accepted unit-speed residual.
        #[arg(long, default_value_t = 1e-6, value_parser = positive)]
        tol: f64,
    },
    /// Scalar invariants a, b, c, d, K, H and L, M, N along the profile.
    Invariants {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Invariants and the ambient Laplacian of G on a (t, s) grid.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 9)]
        t_count: usize,
    },
    /// Recover f and C in Laplacian(G) = f (G + C) and report the verdict.
    Classify {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Use the finite-difference Laplacian with this step instead of the closed form.
        #[arg(long, value_parser = positive)]
        h: Option<f64>,
        /// Residual tolerance for accepting the 1-type fit.
        #[arg(long, value_parser = positive)]
        tol: Option<f64>,
    },
    /// Run the theorem checks (all of them when --theorem is omitted).
    Verify {
        /// T1..T8, C1 or C2.
        #[arg(long)]
        theorem: Option<TheoremId>,
        /// Surface to check instead of the built-in default.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Closed-form Laplacian of G against the finite-difference oracle.
    OracleCompare {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 9)]
        s_count: usize,
        #[arg(long, default_value_t = 5)]
        t_count: usize,
        #[arg(long, default_value_t = rotsurf::classify::DEFAULT_MARGIN)]
        margin: f64,
        #[arg(long, default_value_t = rotsurf::gauss::oracle::DEFAULT_STEP, value_parser = positive)]
        h: f64,
        /// Largest accepted relative error.
        #[arg(long, default_value_t = 1e-4, value_parser = positive)]
        tol: f64,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("expected a positive finite number, got {x}")),
        Err(e) => Err(e.to_string()),
    }
}

fn configure_threads() -> Result<(), InputError> {
    let Ok(raw) = std::env::var("ROTSURF_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| InputError::new(format!("ROTSURF_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| InputError::new(format!("cannot configure {n} threads: {e}")))
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    configure_threads()?;
    let f = cli.format;
    match &cli.command {
        Command::CheckCurve { spec, s_count, tol } => commands::check_curve(&load_spec(spec)?, *s_count, *tol, f),
        Command::Invariants { spec, grid } => commands::invariants(&load_surface(spec)?, grid.s_count, grid.margin, f),
        Command::Sweep { spec, grid, t_count } => {
            commands::sweep(&load_surface(spec)?, grid.s_count, *t_count, grid.margin, f)
        }
        Command::Classify { spec, grid, h, tol } => {
            let opts = ClassifyOptions { s_count: grid.s_count, margin: grid.margin, h: *h, tol: *tol };
            commands::classify(&load_surface(spec)?, &opts, f)
        }
        Command::Verify { theorem, spec } => {
            let spec = spec.as_deref().map(load_surface_spec).transpose()?;
            let ids = match theorem {
                Some(id) => vec![*id],
                None if spec.is_some() => return Err(InputError::new("--spec needs --theorem")),
                None => TheoremId::ALL.to_vec(),
            };
            commands::verify(&ids, spec.as_ref(), f)
        }
        Command::OracleCompare { spec, s_count, t_count, margin, h, tol } => {
            let opts = OracleOptions { s_count: *s_count, t_count: *t_count, margin: *margin, h: *h, tol: *tol };
            commands::oracle_compare(&load_surface(spec)?, &opts, f)
        }
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(cli.out.as_deref(), &outcome.bytes) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(1);
            }
            match outcome.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Failed => {
                    eprintln!("verification failed");
                    ExitCode::from(2)
                }
                Status::Rejected => {
                    eprintln!("error: input rejected, see report");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
