//! The `pwlfix` command line.
//!
//! Exit codes: 0 success, 1 internal or analysis failure, 2 invalid input
//! or flags. `PWLFIX_EPSILON` sets the float tolerance when `--epsilon` is
//! absent.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::{classify, fixed_points};
use crate::bcb::{self, BcbFamily};
use crate::dynamics::{find_cycles, simulate_with, SimulateOptions};
use crate::error::Error;
use crate::io::{self, AnyMap, ReadError};
use crate::linalg::Vector;
use crate::pwlmap::{from_two_pieces, PwlMap};
use crate::report::{self, to_json};
use crate::scalar::{parse_list, parse_rational, Scalar, DEFAULT_EPSILON};
use crate::verify::{oracle_validate, random_map, GenConfig, ValidateConfig};

#[derive(Debug, Parser)]
#[command(name = "pwlfix", version, about = "Fixed points and divergence of two-piece piecewise-linear maps")]
pub struct Cli {
    /// Emit machine-readable JSON instead of the human report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Relative tolerance for the float backend [env: PWLFIX_EPSILON].
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide fixed-point existence or certify divergence.
    Classify { map: PathBuf },
    /// List every admissible fixed point.
    FixedPoints { map: PathBuf },
    /// Iterate the map from a starting point.
    Simulate(SimulateArgs),
    /// Search for periodic orbits by symbolic itinerary.
    Cycles {
        map: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Scan the family f(x) + mu c along a grid of mu.
    Bcb(BcbArgs),
    /// Print a seeded random map.
    Random(RandomArgs),
    /// Re-check the classifier on one map with brute force.
    Verify(VerifyArgs),
    /// Build the normal form from two affine pieces.
    Convert {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub map: PathBuf,
    /// Comma separated coordinates, e.g. "-2/15,-7/5,0".
    #[arg(long, allow_hyphen_values = true)]
    pub x0: String,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value = "1e8")]
    pub radius: String,
}

#[derive(Debug, Args)]
pub struct BcbArgs {
    pub map: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub mu_from: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu_to: String,
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub numerator_bound: u32,
    #[arg(long, default_value_t = 10)]
    pub denominator_bound: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub map: PathBuf,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 8)]
    pub max_period: usize,
    /// Seed for the random starting points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// A failed command and its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Dimension(_)
            | Error::NotContinuous(_)
            | Error::DimensionTooSmall(_)
            | Error::Parse { .. }
            | Error::PeriodTooLarge { .. }
            | Error::InvalidConfig(_) => 2,
            Error::Singular | Error::NoNullspace | Error::NullityTooLarge { .. } | Error::Contract(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ReadError> for Failure {
    fn from(e: ReadError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

pub const EPSILON_ENV: &str = "PWLFIX_EPSILON";

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let eps = match (cli.epsilon, std::env::var(EPSILON_ENV)) {
        (Some(e), _) => e,
        (None, Ok(text)) => text
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{EPSILON_ENV}: not a number: {text:?}")))?,
        (None, Err(_)) => DEFAULT_EPSILON,
    };
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(Failure::input(format!("epsilon must be a non-negative number, got {eps}")));
    }
    match &cli.command {
        Command::Classify { map } => {
            let c = classify(&read_exact(map)?);
            emit(out, cli.json, &report::ClassifyReport::from(&c), || report::classify_human(&c))
        }
        Command::FixedPoints { map } => {
            let f = fixed_points(&read_exact(map)?);
            emit(out, cli.json, &report::FixedPointsReport::from(&f), || report::fixed_points_human(&f))
        }
        Command::Simulate(args) => match io::read_map(&args.map)? {
            AnyMap::Exact(m) => simulate_cmd(cli, out, &m, args, eps),
            AnyMap::Float(m) => simulate_cmd(cli, out, &m, args, eps),
        },
        Command::Cycles { map, max_period } => {
            let cycles = find_cycles(&read_exact(map)?, *max_period)?;
            emit(out, cli.json, &report::CyclesReport::new(*max_period, &cycles), || {
                report::cycles_human(*max_period, &cycles)
            })
        }
        Command::Bcb(args) => bcb_cmd(cli, out, args),
        Command::Random(args) => {
            let config = GenConfig {
                numerator_bound: args.numerator_bound,
                denominator_bound: args.denominator_bound,
                ..GenConfig::new(args.n, args.seed)
            };
            writeln!(out, "{}", io::map_to_json_pretty(&random_map(&config)?))?;
            Ok(0)
        }
        Command::Verify(args) => {
            let map = read_exact(&args.map)?;
            let config = ValidateConfig::new(args.trials, args.steps, args.max_period, args.seed);
            let r = oracle_validate(&map, &config)?;
            emit(out, cli.json, &report::VerifyReportDto::from(&r), || format!("{r}\n"))?;
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Convert { left, right } => {
            let l = io::read_piece(left)?;
            let r = io::read_piece(right)?;
            let map = from_two_pieces(&l.a, &r.a, &l.c, &r.c)?;
            writeln!(out, "{}", io::map_to_json_pretty(&map))?;
            Ok(0)
        }
    }
}

fn read_exact(path: &Path) -> Result<PwlMap<crate::scalar::Rational>, Failure> {
    Ok(io::read_map(path)?.to_exact()?)
}

fn emit<T: serde::Serialize>(out: &mut dyn Write, json: bool, dto: &T, human: impl FnOnce() -> String) -> CmdResult {
    if json {
        out.write_all(to_json(dto).as_bytes())?;
    } else {
        out.write_all(human().as_bytes())?;
    }
    Ok(0)
}

fn simulate_cmd<T: Scalar>(cli: &Cli, out: &mut dyn Write, map: &PwlMap<T>, args: &SimulateArgs, eps: f64) -> CmdResult {
    let x0 = Vector::new(parse_list::<T>(&args.x0).map_err(|e| Failure::input(format!("--x0: {e}")))?);
    if x0.dim() != map.dim() {
        return Err(Failure::input(format!(
            "--x0 has {} coordinates, the map has dimension {}",
            x0.dim(),
            map.dim()
        )));
    }
    let radius = crate::scalar::parse_scalar::<T>(&args.radius).map_err(|e| Failure::input(format!("--radius: {e}")))?;
    let mut opts = SimulateOptions::new(args.steps, radius);
    opts.eps = eps;
    opts.certificate = classify(&map.to_exact()?)
        .certificate
        .map(|c| c.functional.map(|q| T::from_rational(q)));
    let orbit = simulate_with(map, &x0, &opts)?;
    emit(out, cli.json, &report::SimulateReport::from(&orbit), || report::simulate_human(&orbit))
}

fn bcb_cmd(cli: &Cli, out: &mut dyn Write, args: &BcbArgs) -> CmdResult {
    let family = BcbFamily::from_map(&read_exact(&args.map)?);
    let mu_from = parse_rational(&args.mu_from).map_err(|e| Failure::input(format!("--mu-from: {e}")))?;
    let mu_to = parse_rational(&args.mu_to).map_err(|e| Failure::input(format!("--mu-to: {e}")))?;
    let r = bcb::scan(&family, &mu_from, &mu_to, args.grid)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::input(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            r.write_csv(&mut w)?;
            w.flush()?;
            emit(out, cli.json, &report::BcbReportDto::from(&r), || report::bcb_human(&r))?;
        }
        None if cli.json => {
            emit(out, true, &report::BcbReportDto::from(&r), String::new)?;
        }
        None => r.write_csv(&mut *out)?,
    }
    Ok(if r.all_consistent() { 0 } else { 1 })
}
