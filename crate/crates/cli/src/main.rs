mod commands;
mod model;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use shearlab::kinematics::LinearizedFamily;

/// Shear deformations, stresses and constitutive audits for isotropic finite elasticity.
#[derive(Parser, Debug)]
#[command(name = "shearlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate stress along a shear family.
    Sweep(SweepArgs),
    /// Run every shear check on one model; exit 1 if the model fails.
    Audit(AuditArgs),
    /// Solve for the commuting stretch giving a prescribed pure shear stress.
    Invert(InvertArgs),
    /// Tabulate the simple shear stress and the convexity identity.
    Monotonicity(MonotonicityArgs),
    /// Order of the first-order remainder of the shear families.
    Linearize(LinearizeArgs),
    /// List the model catalogue.
    Models(ModelsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Model JSON file or catalogue name.
    #[arg(value_name = "MODEL")]
    model_pos: Option<String>,
    /// Model JSON file or catalogue name.
    #[arg(long = "model", value_name = "FILE|NAME")]
    model_flag: Option<String>,
    /// Parameter override `name=value`, repeatable.
    #[arg(long = "param", value_name = "K=V")]
    params: Vec<String>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct RangeArgs {
    #[arg(long, allow_hyphen_values = true)]
    min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    SimpleShear,
    LeftFiniteShear,
    RightFiniteShear,
    PureShearStretch,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value = "pure-shear-stretch")]
    family: Family,
    #[command(flatten)]
    range: RangeArgs,
    /// Absolute tolerance for the purity and effect flags.
    #[arg(long, default_value_t = shearlab::analysis::DEFAULT_EFFECT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InvertArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Target shear stress.
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    max_iterations: usize,
    /// Solve from several starting forms and report every converged root.
    #[arg(long)]
    multistart: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MonotonicityArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LinearizeArgs {
    /// Family name; all four when omitted.
    #[arg(value_name = "FAMILY")]
    family_pos: Option<String>,
    #[arg(long = "family")]
    family_flag: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4")]
    alphas: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ModelsArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Model(shearlab::Error),
    Io(String),
}

impl From<shearlab::Error> for CliError {
    fn from(e: shearlab::Error) -> Self {
        CliError::Model(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Model(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Model(e) => write!(f, "model error: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

/// `Ok(true)` maps to exit 0, `Ok(false)` to exit 1.
pub type Outcome = Result<bool, CliError>;

fn parse_family(name: &str) -> Result<LinearizedFamily, CliError> {
    LinearizedFamily::parse(name).ok_or_else(|| {
        let names: Vec<&str> = LinearizedFamily::ALL.iter().map(|f| f.name()).collect();
        CliError::Usage(format!("unknown family `{name}`, expected one of {}", names.join(", ")))
    })
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Sweep(a) => sweep::cmd_sweep(&a),
        Command::Audit(a) => commands::cmd_audit(&a),
        Command::Invert(a) => commands::cmd_invert(&a),
        Command::Monotonicity(a) => commands::cmd_monotonicity(&a),
        Command::Linearize(a) => {
            let families = match (&a.family_pos, &a.family_flag) {
                (Some(_), Some(_)) => return Err(CliError::Usage("give the family once".into())),
                (Some(f), None) | (None, Some(f)) => vec![parse_family(f)?],
                (None, None) => LinearizedFamily::ALL.to_vec(),
            };
            commands::cmd_linearize(&families, &a.alphas, a.out.as_deref())
        }
        Command::Models(a) => commands::cmd_models(a.format, a.out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("shearlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
