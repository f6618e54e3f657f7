//! Command-line front end: configuration, input loading and dispatch.
//!
//! Every command produces a [`Report`]. The exit code is 0 when every
//! checked section passes, 1 when some section fails and 2 on input errors.

mod commands;
mod inputs;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use inputs::{fixtures_dir, load_algebra, load_category, load_ring, resolve, FIXTURES_ENV};
pub use report::{Report, Section, Status, Summary};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid input: {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Debug, Args)]
pub struct CapsArgs {
    /// Complexes live in degrees `-window..=window`.
    #[arg(long, global = true, default_value_t = 1)]
    pub window: usize,
    /// Total number of indecomposable projective summands per object.
    #[arg(long, global = true, default_value_t = 2)]
    pub dim_cap: usize,
    /// Largest module order enumerated by `modloc`.
    #[arg(long, global = true, default_value_t = 8)]
    pub module_order_cap: usize,
    /// Path length bound of the path-category localization.
    #[arg(long, global = true, default_value_t = 8)]
    pub path_len_cap: usize,
    /// Sampled composable pairs for the octahedral axiom, and sampled maps
    /// for `abelianize`.
    #[arg(long, global = true, default_value_t = 50)]
    pub tr4_budget: usize,
}

impl Default for CapsArgs {
    fn default() -> Self {
        Self { window: 1, dim_cap: 2, module_order_cap: 8, path_len_cap: 8, tr4_budget: 50 }
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "catloc", version, about = "Localization of finite and triangulated categories, checked by enumeration")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Characteristic of the ground field for built-in algebras.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: u32,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub caps: CapsArgs,
}

#[derive(Clone, Debug, Args)]
pub struct CategoryInput {
    /// Category file (JSON).
    pub file: PathBuf,
    /// A set named in the file, or a comma-separated list of morphisms.
    #[arg(long, default_value = "sigma")]
    pub sigma: String,
}

#[derive(Clone, Debug, Args)]
pub struct ModelInput {
    /// `field`, `dual`, `product`, `product<k>`, `truncated<n>` or an
    /// algebra file.
    #[arg(long, default_value = "field")]
    pub algebra: String,
    /// Corrupt the cone construction.
    #[arg(long)]
    pub corrupt: bool,
}

#[derive(Clone, Debug, Args)]
pub struct SubcategoryInput {
    #[command(flatten)]
    pub model: ModelInput,
    /// Generators of the thick subcategory, by object name.
    #[arg(long, value_delimiter = ',')]
    pub objects: Vec<String>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Validate the category axioms of a category file.
    CheckCategory {
        file: PathBuf,
    },
    /// Check the left and right fraction calculi for a designated set.
    CheckLf(CategoryInput),
    /// Build the category of left fractions and compare with path localization.
    Localize(CategoryInput),
    /// Local objects and the localization functor onto them.
    LocalObjects(CategoryInput),
    /// Morphisms inverted by the localization.
    Saturate(CategoryInput),
    /// Build the bounded homotopy model of an algebra.
    KbBuild(ModelInput),
    /// Verify the triangulated axioms on a model.
    VerifyTr(ModelInput),
    /// Thick closure of a set of objects.
    Thick(SubcategoryInput),
    /// Verdier quotient by a thick closure.
    Verdier(SubcategoryInput),
    /// Left and right orthogonals of a thick closure.
    Perp(SubcategoryInput),
    /// Equivalent conditions for a Bousfield localization.
    Bousfield(SubcategoryInput),
    /// The triangle `ΓX → X → LX → ΓX[1]` of a Bousfield localization.
    Gamma {
        #[command(flatten)]
        input: SubcategoryInput,
        /// Objects to check; all objects when empty.
        #[arg(long, value_delimiter = ',')]
        at: Vec<String>,
    },
    /// Recollement induced by an idempotent of the algebra.
    RecollementIdem {
        #[command(flatten)]
        model: ModelInput,
        /// Coordinates of the idempotent in the algebra basis.
        #[arg(long, value_delimiter = ',', required = true)]
        idempotent: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        tor_depth: usize,
    },
    /// Finitely presented functors on the model.
    Abelianize(ModelInput),
    /// Localization of modules over a finite commutative ring.
    Modloc {
        /// `z<n>`, `z<m>xz<n>`, `dual<p>` or a ring file.
        #[arg(long, default_value = "z6")]
        ring: String,
        /// Generators of the multiplicative set.
        #[arg(long, value_delimiter = ',')]
        mult: Vec<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckCategory { .. } => "check-category",
            Command::CheckLf(_) => "check-lf",
            Command::Localize(_) => "localize",
            Command::LocalObjects(_) => "local-objects",
            Command::Saturate(_) => "saturate",
            Command::KbBuild(_) => "kb-build",
            Command::VerifyTr(_) => "verify-tr",
            Command::Thick(_) => "thick",
            Command::Verdier(_) => "verdier",
            Command::Perp(_) => "perp",
            Command::Bousfield(_) => "bousfield",
            Command::Gamma { .. } => "gamma",
            Command::RecollementIdem { .. } => "recollement-idem",
            Command::Abelianize(_) => "abelianize",
            Command::Modloc { .. } => "modloc",
        }
    }
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    crate::linalg::check_prime(cfg.p).map_err(|e| CliError::Input(e.to_string()))?;
    let c = &cfg.caps;
    for (name, v) in [
        ("window", c.window),
        ("dim-cap", c.dim_cap),
        ("module-order-cap", c.module_order_cap),
        ("path-len-cap", c.path_len_cap),
        ("tr4-budget", c.tr4_budget),
    ] {
        if v == 0 {
            return Err(CliError::Input(format!("--{name} must be positive")));
        }
    }
    Ok(())
}

/// Runs a command and returns its report.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    validate(cfg)?;
    let mut report = Report::new(cfg.command.name(), cfg.seed);
    commands::dispatch(cfg, &mut report)?;
    Ok(report)
}

/// Runs a command, writes the report and returns the rendered text with the
/// exit code.
pub fn execute(cfg: &RunConfig) -> (String, i32) {
    match run(cfg) {
        Ok(report) => {
            let text = report.render();
            if let Some(path) = &cfg.output {
                if let Err(e) = std::fs::write(path, &text) {
                    return (format!("error: {}: {e}\n", path.display()), 2);
                }
            }
            let code = if report.passes() { 0 } else { 1 };
            (text, code)
        }
        Err(e) => (format!("error: {e}\n"), e.exit_code()),
    }
}
