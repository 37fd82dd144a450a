//! `unruh`: batch front end for the unruh-core toolkit.
//!
//! Exit status: 0 success, 1 I/O failure, 2 invalid input or usage,
//! 3 a numerical tolerance or graded check failed.

mod commands;
mod config;
mod output;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use unruh_core::audit::PhysicalConstants;
use unruh_core::rates::QuadratureConfig;
use unruh_core::Error;

use crate::config::FileValues;
use crate::output::Format;

/// Default output directory when `--output` is absent.
pub const OUT_DIR_ENV: &str = "UNRUH_OUT_DIR";

const DEFAULT_KPERP: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const DEFAULT_FOCK_OMEGA: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Usage(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Usage(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Wedge(_) | Error::Constants(_) => CliError::Usage(e.to_string()),
            Error::Tolerance { .. } | Error::Extrapolation { .. } | Error::Truncation(_) | Error::Integrability(_) => {
                CliError::Numerical(e.to_string())
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "unruh",
    version,
    about = "Unruh-effect rate, thermal and two-wedge tables",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Accelerated and inertial rate spectra over a k⊥ grid
    Rates(SweepArgs),
    /// Frame-equivalence residual table with a PASS/FAIL verdict
    Residual(SweepArgs),
    /// Two-wedge invariant suite, four-term coefficients and probe tables
    Fock(FockArgs),
    /// Thermal occupation tables of the Unruh bath
    Thermal(ThermalArgs),
    /// Laser, Thomson, measure, frequency-map and dispersion reports
    Audit(AuditArgs),
    /// Modified Bessel function tables
    Bessel(BesselArgs),
}

#[derive(Args)]
struct Common {
    /// Flat key = value file; keys are the long flag names
    #[arg(long)]
    config: Option<PathBuf>,
    /// csv or json [default: csv]
    #[arg(long)]
    format: Option<Format>,
    /// Output file, `-` for stdout [default: $UNRUH_OUT_DIR/<command>.<ext>, else stdout]
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Charge [default: 1]
    #[arg(long)]
    q: Option<f64>,
    /// Proper acceleration [default: 1]
    #[arg(long)]
    a: Option<f64>,
    /// Comma-separated, sorted transverse momenta [default: 0.25,0.5,1,2,4]
    #[arg(long, value_delimiter = ',')]
    kperp: Option<Vec<f64>>,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct QuadArgs {
    /// Relative tolerance of each adaptive integral [default: 1e-9]
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Proper-time window |aτ| [default: 30]
    #[arg(long)]
    window: Option<f64>,
    /// Photon rapidity covered by quadrature [default: 40]
    #[arg(long)]
    rapidity_cutoff: Option<f64>,
    /// Decreasing switching rates for the extrapolation [default: 0.2,0.1,0.05,0.025]
    #[arg(long, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    /// Subinterval budget per integral [default: 2000]
    #[arg(long)]
    max_intervals: Option<usize>,
}

#[derive(Args)]
struct FockArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated Rindler energies [default: 0.25,0.5,1,2]
    #[arg(long, value_delimiter = ',')]
    omega: Option<Vec<f64>>,
    /// Occupation cutoff N per wedge [default: 16]
    #[arg(long)]
    cutoff: Option<usize>,
    /// Mass of the Minkowski particle [default: 0.8]
    #[arg(long)]
    mass: Option<f64>,
    /// Longitudinal momentum of the Minkowski particle [default: 0.6]
    #[arg(long, allow_negative_numbers = true)]
    kz: Option<f64>,
}

#[derive(Args)]
struct ThermalArgs {
    #[command(flatten)]
    common: Common,
    /// Proper acceleration [default: 1]
    #[arg(long)]
    a: Option<f64>,
    /// Comma-separated Rindler energies [default: 1]
    #[arg(long, value_delimiter = ',')]
    omega: Option<Vec<f64>>,
    /// Largest occupation number tabulated [default: 20]
    #[arg(long)]
    nmax: Option<u64>,
    /// Fermion mass; adds the suppression diagnostic
    #[arg(long)]
    mass: Option<f64>,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    common: Common,
    /// Acceleration in units of standard gravity [default: 2e25]
    #[arg(long)]
    a_g: Option<f64>,
    /// Constants file [default: bundled CODATA 2018]
    #[arg(long)]
    constants: Option<PathBuf>,
}

#[derive(Args)]
struct BesselArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated real orders [default: 0,0.5,1,2]
    #[arg(long, value_delimiter = ',')]
    nu: Option<Vec<f64>>,
    /// Comma-separated imaginary-order magnitudes [default: none]
    #[arg(long, value_delimiter = ',')]
    mu: Option<Vec<f64>>,
    /// Comma-separated arguments [default: 0.5,1,2,5,10]
    #[arg(long, value_delimiter = ',')]
    x: Option<Vec<f64>>,
}

struct Destination {
    format: Format,
    path: Option<PathBuf>,
}

fn open_config(common: &Common) -> Result<FileValues, CliError> {
    match &common.config {
        Some(p) => FileValues::load(p),
        None => Ok(FileValues::empty()),
    }
}

fn destination(common: Common, file: &mut FileValues, command: &str) -> Result<Destination, CliError> {
    let format = file.value(common.format, "format", Format::Csv)?;
    let path = match file.optional(common.output, "output")? {
        Some(p) if p.as_os_str() == "-" => None,
        Some(p) => Some(p),
        None => match std::env::var_os(OUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => {
                let dir = PathBuf::from(dir);
                std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
                Some(dir.join(format!("{command}.{}", format.extension())))
            }
            _ => None,
        },
    };
    Ok(Destination { format, path })
}

fn quadrature(q: QuadArgs, file: &mut FileValues) -> Result<QuadratureConfig<f64>, CliError> {
    let d = QuadratureConfig::<f64>::default();
    let cfg = QuadratureConfig {
        proper_time_window: file.value(q.window, "window", d.proper_time_window)?,
        eps_ladder: file.list(q.eps, "eps", &d.eps_ladder)?,
        rapidity_cutoff: file.value(q.rapidity_cutoff, "rapidity-cutoff", d.rapidity_cutoff)?,
        rel_tol: file.value(q.rel_tol, "rel-tol", d.rel_tol)?,
        max_intervals: file.value(q.max_intervals, "max-intervals", d.max_intervals)?,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn load_constants(path: Option<PathBuf>) -> Result<PhysicalConstants, CliError> {
    match path {
        None => Ok(PhysicalConstants::codata2018()),
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(PhysicalConstants::parse(&text)?)
        }
    }
}

struct Sweep {
    q: f64,
    a: f64,
    kperp: Vec<f64>,
    cfg: QuadratureConfig<f64>,
}

fn sweep_inputs(args: SweepArgs, command: &str) -> Result<(Sweep, Destination), CliError> {
    let mut f = open_config(&args.common)?;
    let sweep = Sweep {
        q: f.value(args.q, "q", 1.0)?,
        a: f.value(args.a, "a", 1.0)?,
        kperp: f.list(args.kperp, "kperp", &DEFAULT_KPERP)?,
        cfg: quadrature(args.quad, &mut f)?,
    };
    let dest = destination(args.common, &mut f, command)?;
    f.finish()?;
    Ok((sweep, dest))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (outcome, dest) = match cli.command {
        Command::Rates(args) => {
            let (sweep, dest) = sweep_inputs(args, "rates")?;
            (commands::rates(sweep.q, sweep.a, &sweep.kperp, &sweep.cfg)?, dest)
        }
        Command::Residual(args) => {
            let (sweep, dest) = sweep_inputs(args, "residual")?;
            (commands::residual(sweep.q, sweep.a, &sweep.kperp, &sweep.cfg)?, dest)
        }
        Command::Fock(args) => {
            let mut f = open_config(&args.common)?;
            let omega = f.list(args.omega, "omega", &DEFAULT_FOCK_OMEGA)?;
            let cutoff = f.value(args.cutoff, "cutoff", 16)?;
            let mass = f.value(args.mass, "mass", 0.8)?;
            let kz = f.value(args.kz, "kz", 0.6)?;
            let dest = destination(args.common, &mut f, "fock")?;
            f.finish()?;
            (commands::fock(&omega, cutoff, mass, kz)?, dest)
        }
        Command::Thermal(args) => {
            let mut f = open_config(&args.common)?;
            let a = f.value(args.a, "a", 1.0)?;
            let omega = f.list(args.omega, "omega", &[1.0])?;
            let nmax = f.value(args.nmax, "nmax", 20)?;
            let mass = f.optional(args.mass, "mass")?;
            let dest = destination(args.common, &mut f, "thermal")?;
            f.finish()?;
            (commands::thermal(a, &omega, nmax, mass)?, dest)
        }
        Command::Audit(args) => {
            let mut f = open_config(&args.common)?;
            let a_g = f.value(args.a_g, "a-g", 2e25)?;
            let consts = load_constants(f.optional(args.constants, "constants")?)?;
            let dest = destination(args.common, &mut f, "audit")?;
            f.finish()?;
            (commands::audit(a_g, &consts)?, dest)
        }
        Command::Bessel(args) => {
            let mut f = open_config(&args.common)?;
            let nu = f.list(args.nu, "nu", &[0.0, 0.5, 1.0, 2.0])?;
            let mu = f.list(args.mu, "mu", &[])?;
            let x = f.list(args.x, "x", &[0.5, 1.0, 2.0, 5.0, 10.0])?;
            let dest = destination(args.common, &mut f, "bessel")?;
            f.finish()?;
            (commands::bessel(&nu, &mu, &x)?, dest)
        }
    };

    let text = outcome.document.render(dest.format);
    match &dest.path {
        Some(p) => write_file(p, &text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
        }
    }
    for line in &outcome.document.verdicts {
        eprintln!("{line}");
    }
    Ok(outcome.passed)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("unruh: {e}");
            ExitCode::from(e.code())
        }
    }
}
