//! Argument parsing and command execution.

use clap::{Args, Parser, Subcommand, ValueEnum};
use riordan::morphisms::{self, MorphismId};
use riordan::{KRiordanArray, RiordanArray, Series};
use thiserror::Error;

use crate::expr::{parse_expression, ParseError};
use crate::output::{Document, ErrorDocument, Format};

pub const DEFAULT_TRUNC: usize = 24;
pub const DEFAULT_VERIFY_TRUNC: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "riordan", version, about = "Exact Riordan, Double Riordan and k-Riordan array calculator")]
pub struct Cli {
    /// Highest retained exponent (default 24; 16 for `verify`)
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Output format (default pretty; json for `verify`)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a generating-function expression
    Eval { expr: String },
    /// Leading block of the array's matrix
    Matrix(ArrayArgs),
    /// Apply an array to a column vector given by its generating function
    Apply {
        #[command(flatten)]
        array: ArrayArgs,
        #[arg(long = "a")]
        vector: String,
    },
    /// Product of two arrays of the same arity
    Rmul {
        #[command(flatten)]
        left: ArrayArgs,
        #[arg(long = "g2")]
        g2: String,
        #[arg(long = "f2", conflicts_with = "m2")]
        f2: Option<String>,
        #[arg(long = "m2")]
        m2: Vec<String>,
    },
    /// Group inverse of an array
    Rinv(ArrayArgs),
    /// Image of an array under one of the embeddings
    Map {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        array: ArrayArgs,
    },
    /// Check the homomorphism laws of an embedding on random inputs
    Verify {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

/// An array given as `--g` plus either `--f` or repeated `--m`.
#[derive(Debug, Args)]
pub struct ArrayArgs {
    #[arg(long)]
    pub g: String,
    #[arg(long, conflicts_with = "m")]
    pub f: Option<String>,
    /// Multiplier, repeated in order; the arity is the number of `--m` flags
    #[arg(long)]
    pub m: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapName {
    /// (g, f) -> (g, f, f) on checkerboard arrays
    Psi,
    Phi,
    Psi2,
    Phik,
    Chi,
    Chii,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long = "map", value_enum)]
    pub name: MapName,
    /// Arity for `phik` (target) and `chii` (source)
    #[arg(long)]
    pub k: Option<usize>,
    /// Position of the non-`z` multiplier for `phik`, of the inserted `z` for `chii`
    #[arg(long)]
    pub position: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("in `{text}`: {source}")]
    Parse { text: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] riordan::Error),
    #[error("verification failed")]
    Unverified(Box<Document>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Unverified(_) => 1,
        }
    }
}

/// Outcome of one invocation: exit status and the bytes for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format.unwrap_or(match cli.command {
        Command::Verify { .. } => Format::Json,
        _ => Format::Pretty,
    });
    match execute(&cli) {
        Ok(doc) => Outcome { code: 0, stdout: doc.render(format), stderr: String::new() },
        Err(CliError::Unverified(doc)) => Outcome {
            code: 1,
            stdout: doc.render(format),
            stderr: "error: verification failed\n".into(),
        },
        Err(err) => {
            let code = err.exit_code();
            let message = err.to_string();
            let stderr = if format == Format::Json {
                let doc = ErrorDocument { kind: "error", code, message: &message };
                serde_json::to_string(&doc).expect("error document serializes") + "\n"
            } else {
                format!("error: {message}\n")
            };
            Outcome { code, stdout: String::new(), stderr }
        }
    }
}

fn series(text: &str, n: usize) -> Result<Series, CliError> {
    let e = parse_expression(text).map_err(|source| CliError::Parse { text: text.to_string(), source })?;
    Ok(e.eval(n)?)
}

/// Builds an array of arity 1 (from `--f`) or `k` (from `k` copies of `--m`).
fn array(g: &str, f: Option<&str>, m: &[String], n: usize) -> Result<KRiordanArray, CliError> {
    let g = series(g, n)?;
    match (f, m.is_empty()) {
        (Some(f), true) => Ok(KRiordanArray::from_riordan(&RiordanArray::new(g, series(f, n)?)?)),
        (None, false) => {
            let ms = m.iter().map(|t| series(t, n)).collect::<Result<Vec<_>, _>>()?;
            Ok(KRiordanArray::new(g, ms)?)
        }
        _ => Err(CliError::Usage("give either --f or at least one --m".into())),
    }
}

fn array_args(a: &ArrayArgs, n: usize) -> Result<KRiordanArray, CliError> {
    array(&a.g, a.f.as_deref(), &a.m, n)
}

fn riordan_of(d: KRiordanArray) -> Result<RiordanArray, CliError> {
    if d.arity() != 1 {
        return Err(CliError::Usage("this map takes a Riordan array (--g and --f)".into()));
    }
    Ok(d.to_riordan()?)
}

/// Resolves the map flags; `source_arity` is known for `map` but not `verify`.
fn morphism(args: &MapArgs, source_arity: Option<usize>) -> Result<MorphismId, CliError> {
    let position_unused = || -> Result<(), CliError> {
        if args.k.is_some() || args.position.is_some() {
            return Err(CliError::Usage(format!("--k/--position do not apply to {:?}", args.name)));
        }
        Ok(())
    };
    Ok(match args.name {
        MapName::Psi => {
            position_unused()?;
            MorphismId::PsiCheckerboard
        }
        MapName::Phi => {
            position_unused()?;
            MorphismId::Phi
        }
        MapName::Psi2 => {
            position_unused()?;
            MorphismId::PsiType2
        }
        MapName::Chi => {
            position_unused()?;
            MorphismId::Chi
        }
        MapName::Phik => {
            let k = args.k.unwrap_or(2);
            MorphismId::phi_k(k, args.position.unwrap_or(k))?
        }
        MapName::Chii => {
            let k = match (args.k, source_arity) {
                (Some(k), Some(a)) if k != a => {
                    return Err(CliError::Usage(format!("--k {k} does not match input arity {a}")))
                }
                (Some(k), _) => k,
                (None, Some(a)) => a,
                (None, None) => return Err(CliError::Usage("chii needs --k".into())),
            };
            MorphismId::chi_i(k, args.position.unwrap_or(1))?
        }
    })
}

fn apply_map(id: MorphismId, d: KRiordanArray) -> Result<KRiordanArray, CliError> {
    Ok(match id {
        MorphismId::PsiCheckerboard => morphisms::psi_checkerboard(&riordan_of(d)?)?,
        MorphismId::Phi => morphisms::phi(&riordan_of(d)?)?,
        MorphismId::PsiType2 => morphisms::psi_type2(&riordan_of(d)?)?,
        MorphismId::PhiK { k, position } => morphisms::phi_k(&riordan_of(d)?, k, position)?,
        MorphismId::Chi => morphisms::chi(&d)?,
        MorphismId::ChiI { i, .. } => morphisms::chi_i(&d, i)?,
    })
}

pub fn execute(cli: &Cli) -> Result<Document, CliError> {
    let n = cli.trunc.unwrap_or(DEFAULT_TRUNC);
    match &cli.command {
        Command::Eval { expr } => Ok(Document::series(&series(expr, n)?)),
        Command::Matrix(a) => {
            let d = array_args(a, n)?;
            Ok(Document::matrix(&d.to_matrix(n)?, n))
        }
        Command::Apply { array: a, vector } => {
            let d = array_args(a, n)?;
            let v = series(vector, n)?;
            let out = if d.arity() == 1 { d.to_riordan()?.apply(&v)? } else { d.apply(&v)? };
            Ok(Document::series(&out))
        }
        Command::Rmul { left, g2, f2, m2 } => {
            let a = array_args(left, n)?;
            let b = array(g2, f2.as_deref(), m2, n)?;
            let prod = if a.arity() == 1 && b.arity() == 1 {
                KRiordanArray::from_riordan(&a.to_riordan()?.multiply(&b.to_riordan()?)?)
            } else {
                a.multiply(&b)?
            };
            Ok(Document::array(&prod))
        }
        Command::Rinv(a) => {
            let d = array_args(a, n)?;
            let inv = if d.arity() == 1 {
                KRiordanArray::from_riordan(&d.to_riordan()?.inverse()?)
            } else {
                d.inverse()?
            };
            Ok(Document::array(&inv))
        }
        Command::Map { map, array: a } => {
            let d = array_args(a, n)?;
            let id = morphism(map, Some(d.arity()))?;
            Ok(Document::array(&apply_map(id, d)?))
        }
        Command::Verify { map, trials } => {
            let id = morphism(map, None)?;
            let n = cli.trunc.unwrap_or(DEFAULT_VERIFY_TRUNC);
            if n < 2 {
                return Err(CliError::Usage("verify needs --trunc of at least 2".into()));
            }
            let report = morphisms::verify_homomorphism(id, *trials, n, cli.seed);
            let verified = report.verified();
            let doc = Document::report(report);
            if verified {
                Ok(doc)
            } else {
                Err(CliError::Unverified(Box::new(doc)))
            }
        }
    }
}
