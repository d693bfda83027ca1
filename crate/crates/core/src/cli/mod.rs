//! Command-line front end. Exit codes: 0 when every check passes, 1 on a
//! verification failure, 2 on bad input.

mod commands;
mod record;
mod verify;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::index::MultiIndex;
use crate::io::Basis;
use crate::poly::{Step, DEFAULT_DEGREE_CAP};
use crate::rational::parse_rational;

pub use record::{ResultRecord, Verdict};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "multi-appell",
    version,
    about = "Exact multiple Charlier and discrete Appell polynomial toolkit"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest total degree |n| to sweep or build (default 5).
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,

    /// Difference step for random Appell seeds.
    #[arg(long, global = true, default_value = "1")]
    pub omega: String,

    /// RNG seed for --random runs; echoed in every record.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Treat warnings, rank deficiency and unmet constraints as failures.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Refuse degrees above this.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    pub degree_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one multiple Charlier polynomial.
    Charlier {
        /// Multi-index, e.g. 1,0.
        #[arg(long)]
        n: String,
        /// Weight parameters, e.g. 1,2 or 1/2,-3.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_enum, default_value_t = BasisArg::Ff)]
        basis: BasisArg,
    },
    /// Run identity suites over all |n| <= max-degree.
    Verify(VerifyArgs),
    /// Build, check or recover an Appell family from a seed or family file.
    Appell {
        file: std::path::PathBuf,
        #[arg(long, value_enum)]
        action: AppellAction,
    },
    /// Extract nearest-neighbour recurrence coefficients.
    Recurrence(RecurrenceArgs),
    /// Tabulate exact values C_n(x).
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Ff,
    Monomial,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Ff => Basis::Ff,
            BasisArg::Monomial => Basis::Monomial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Difference,
    Inversion,
    Connection,
    Addition,
    Recurrences,
    Genfunc,
    Orthogonality,
    Classical,
    Appell,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Weight parameters.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "random")]
    pub a: Option<String>,
    /// Number of random parameter vectors instead of --a.
    #[arg(long, conflicts_with = "a")]
    pub random: Option<usize>,
    /// Arity of random parameter vectors.
    #[arg(long, default_value_t = 2)]
    pub arity: usize,
    /// Target parameters for the connection suite (default a_i + 1).
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Split for the addition suite (default a_i / 2).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AppellAction {
    Build,
    Check,
    Recover,
}

#[derive(Args, Debug)]
pub struct RecurrenceArgs {
    /// Use the Charlier family with these parameters.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "family")]
    pub a: Option<String>,
    /// Use a family file (JSON as printed by `appell --action build --format json`),
    /// or a seed file.
    #[arg(long, conflicts_with = "a")]
    pub family: Option<std::path::PathBuf>,
    /// Window |n| <= W (default: max-degree, or 3).
    #[arg(long, conflicts_with = "indices")]
    pub window: Option<usize>,
    /// Explicit window, e.g. "0,0;1,1".
    #[arg(long)]
    pub indices: Option<String>,
    /// Direction k of the raised index, 1-based.
    #[arg(long, default_value_t = 1)]
    pub direction: usize,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Multi-indices, e.g. "1,0;0,1" (default: all |n| <= max-degree).
    #[arg(long)]
    pub n: Option<String>,
    /// Evaluation points, e.g. "0,1/2,2".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "x_range")]
    pub x: Option<String>,
    /// Integer evaluation range, inclusive, e.g. 0..4.
    #[arg(long, allow_hyphen_values = true)]
    pub x_range: Option<String>,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit 2.
    Input(String),
    /// A check failed; records were already written. Exit 1.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(format!("i/o error: {e}"))
    }
}

pub(crate) type Outcome = std::result::Result<(), Failure>;

/// Settings shared by all subcommands.
pub(crate) struct Context<'a> {
    pub format: Format,
    pub max_degree: Option<usize>,
    pub step: Step,
    pub seed: u64,
    pub strict: bool,
    pub degree_cap: usize,
    pub command: String,
    pub out: &'a mut dyn Write,
}

impl Context<'_> {
    pub fn max_degree_or(&self, default: usize) -> std::result::Result<usize, Failure> {
        let d = self.max_degree.unwrap_or(default);
        self.check_cap(d)?;
        Ok(d)
    }

    pub fn check_cap(&self, degree: usize) -> std::result::Result<(), Failure> {
        if degree > self.degree_cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.degree_cap,
            }
            .into());
        }
        Ok(())
    }
}

pub(crate) fn parse_index_list(text: &str) -> crate::error::Result<Vec<MultiIndex>> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(MultiIndex::parse)
        .collect()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let command = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let step = match parse_rational(&cli.omega).and_then(Step::new) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: --omega: {e}");
            return EXIT_INPUT;
        }
    };
    let mut ctx = Context {
        format: cli.format,
        max_degree: cli.max_degree,
        step,
        seed: cli.seed,
        strict: cli.strict,
        degree_cap: cli.degree_cap,
        command,
        out,
    };
    let result = match &cli.command {
        Command::Charlier { n, a, basis } => commands::charlier(&mut ctx, n, a, (*basis).into()),
        Command::Verify(v) => verify::run(&mut ctx, v),
        Command::Appell { file, action } => commands::appell(&mut ctx, file, *action),
        Command::Recurrence(r) => commands::recurrence(&mut ctx, r),
        Command::Table(t) => commands::table(&mut ctx, t),
    };
    let _ = ctx.out.flush();
    match result {
        Ok(()) => EXIT_PASS,
        Err(Failure::Verification) => EXIT_FAIL,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
