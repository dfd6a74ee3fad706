//! Command-line and config-file options.
//!
//! Every option can also be given in a flat TOML config file (`--config`)
//! under the same name with dashes replaced by underscores (`L`, `n0`,
//! `ns_table`, `rel_tol`, ...). Command-line values win.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "casimir", version, about = "Casimir energy and force with a dispersive dielectric between ideal plates")]
pub struct Cli {
    /// Flat TOML file providing defaults for any option
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy and force at a single separation
    Compute {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Energy and force over a grid of separations or Cauchy coefficients
    Sweep {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check the analytic and Lifshitz routes; exit 1 on any failure
    Validate {
        #[command(flatten)]
        validate: ValidateArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Analytic,
    Lifshitz,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    /// E₀ plus the correction linear in n1
    Split,
    /// Full κ₁ = n(iξ)ξ lower limit
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    #[value(alias = "L")]
    Separation,
    N1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
pub struct ScenarioArgs {
    /// Plate separation (natural length unit)
    #[arg(long = "L", value_name = "LENGTH")]
    #[serde(rename = "L")]
    pub separation: Option<f64>,

    /// Static refractive index n0
    #[arg(long)]
    pub n0: Option<f64>,

    /// Cauchy coefficient n1 (length²); defaults to 0
    #[arg(long)]
    pub n1: Option<f64>,

    /// CSV table of n(iξ) samples (columns xi, n) instead of n0/n1
    #[arg(long, value_name = "PATH")]
    pub ns_table: Option<PathBuf>,

    /// Surface-term coefficient c_s in E_s = c_s/L⁴
    #[arg(long)]
    pub cs: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
pub struct MethodArgs {
    /// Which route to evaluate
    #[arg(long, value_enum)]
    pub method: Option<MethodChoice>,

    /// Lifshitz treatment of the lower limit κ₁
    #[arg(long, value_enum)]
    pub mode: Option<ModeChoice>,

    /// Relative tolerance of the frequency quadrature
    #[arg(long)]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
pub struct OutputArgs {
    /// Report energies in J/m² and forces in Pa
    #[arg(long)]
    #[serde(default)]
    pub si: bool,

    /// Size of the natural length unit in metres (with --si)
    #[arg(long, value_name = "METRES")]
    pub length_unit: Option<f64>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
pub struct SweepArgs {
    /// Quantity swept over the grid
    #[arg(long, value_enum)]
    pub variable: Option<Variable>,

    #[arg(long)]
    pub min: Option<f64>,

    #[arg(long)]
    pub max: Option<f64>,

    /// Number of grid points (>= 2)
    #[arg(long)]
    pub points: Option<usize>,

    #[arg(long, value_enum)]
    pub scale: Option<Scale>,
}

#[derive(Debug, Clone, Default, Args, Deserialize)]
pub struct ValidateArgs {
    /// Relative tolerance every check must meet
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Field-wise fallback to config-file values.
pub trait Merge {
    fn merge(self, file: Self) -> Self;
}

macro_rules! merge_options {
    ($ty:ty { $($field:ident),* } $(bools { $($flag:ident),* })?) => {
        impl Merge for $ty {
            fn merge(self, file: Self) -> Self {
                Self {
                    $($field: self.$field.or(file.$field),)*
                    $($($flag: self.$flag || file.$flag,)*)?
                }
            }
        }
    };
}

merge_options!(ScenarioArgs { separation, n0, n1, ns_table, cs });
merge_options!(MethodArgs { method, mode, rel_tol });
merge_options!(OutputArgs { length_unit, format, out } bools { si });
merge_options!(SweepArgs { variable, min, max, points, scale });
merge_options!(ValidateArgs { tol });

pub const CONFIG_KEYS: &[&str] = &[
    "L", "n0", "n1", "ns_table", "cs", "method", "mode", "rel_tol", "si", "length_unit", "format", "out",
    "variable", "min", "max", "points", "scale", "tol",
];
