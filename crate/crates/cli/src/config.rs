use std::fmt;
use std::path::PathBuf;

use apaver_core::{Error, Invariants, PrimeField};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "apaver", version, about = "Cells of the PGL(3) affine Grassmannian and its equivalued affine Springer fibers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Vertex type table for Δ_N at level a.
    Classify,
    /// Cell windows for every vertex of Δ_N at level a.
    Cells,
    /// Fixed-cell dimension table for γ with invariants (m, n).
    Dims,
    /// Poincaré polynomial coefficients over Δ_N.
    Poincare,
    /// Filtration order on Δ_N.
    Order,
    /// Run the brute-force verifiers over Δ_N.
    Verify,
    /// Apartment diagram as SVG.
    Figure {
        #[arg(long, value_enum, default_value_t = FigureKind::Types)]
        kind: FigureKind,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Radius of the triangle Δ_N.
    #[arg(long = "N", global = true)]
    pub big_n: Option<i32>,
    /// Level of the Iwahori subgroup; derived as n - m when both are given.
    #[arg(long, global = true)]
    pub a: Option<i32>,
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u32,
    /// Override the series working precision.
    #[arg(long, global = true)]
    pub prec: Option<i32>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// Vertex types at level a.
    Types,
    /// Concentric triangles Δ_i.
    Triangles,
    /// Retraction arrows of the S and T regions.
    Movement,
    /// Filtration ranks.
    Order,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
    Core(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Failed(msg) => write!(f, "verification failed\n{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedField(_) | Error::InvalidCombination(_) | Error::ValuationMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Core(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl Params {
    pub fn big_n(&self) -> Result<i32, CliError> {
        match self.big_n {
            Some(n) if n >= 0 => Ok(n),
            Some(n) => Err(CliError::Usage(format!("--N must be nonnegative, got {n}"))),
            None => Err(CliError::Usage("--N is required".into())),
        }
    }

    pub fn invariants(&self) -> Result<Option<Invariants>, CliError> {
        match (self.m, self.n) {
            (Some(m), Some(n)) => Ok(Some(Invariants::new(m, n)?)),
            (None, None) => Ok(None),
            _ => Err(CliError::Usage("--m and --n go together".into())),
        }
    }

    pub fn required_invariants(&self) -> Result<Invariants, CliError> {
        self.invariants()?
            .ok_or_else(|| CliError::Usage("--m and --n are required".into()))
    }

    /// `a`, checked against `n - m` when the invariants are given.
    pub fn level(&self) -> Result<i32, CliError> {
        let derived = self.invariants()?.map(Invariants::level);
        match (self.a, derived) {
            (Some(a), Some(d)) if a != d => Err(CliError::Usage(format!("--a {a} conflicts with n - m = {d}"))),
            (Some(a), _) if a < 0 => Err(CliError::Usage(format!("--a must be nonnegative, got {a}"))),
            (Some(a), _) => Ok(a),
            (None, Some(d)) => Ok(d),
            (None, None) => Ok(0),
        }
    }

    pub fn field(&self) -> Result<PrimeField, CliError> {
        Ok(PrimeField::new(self.q)?)
    }

    pub fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(format!("format {f:?} is not available for this command")))
        }
    }
}
