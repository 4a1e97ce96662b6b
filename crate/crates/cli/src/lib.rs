//! Command-line front end for `vgit-core`.
//!
//! Every subcommand reads one problem file (see [`problem`]) and prints a
//! canonical JSON report, or a short text table with `--plain`.
//!
//! | exit | meaning |
//! |------|---------|
//! | 0 | success, or `true` for `equiv` |
//! | 1 | `false` for `equiv` |
//! | 2 | usage, parse or input error |
//! | 3 | `verify` found a failing test character |
//! | 4 | enumeration cap exceeded |

pub mod commands;
pub mod problem;
pub mod report;
pub mod svg;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::Outcome;
pub use problem::ProblemFile;
pub use svg::render_fan_svg;

pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;
pub const EXIT_SIZE_CAP: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", match line { Some(l) => format!("parse error at line {l}: {message}"), None => format!("parse error: {message}") })]
    Parse {
        line: Option<usize>,
        message: String,
    },
    #[error("unsupported format_version {found} (expected {expected})", found = .0, expected = problem::FORMAT_VERSION)]
    Version(i64),
    #[error("no character named `{0}` in the problem file")]
    UnknownCharacter(String),
    #[error("SVG rendering needs a rank-2 character lattice, got rank {0}")]
    UnsupportedRank(usize),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] vgit_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(vgit_core::Error::SizeCap { .. }) => EXIT_SIZE_CAP,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "vgit",
    version,
    about = "Variation of GIT for torus actions on affine space"
)]
pub struct Cli {
    /// Problem file; reads stdin when omitted or `-`.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub file: Option<PathBuf>,
    /// Text tables instead of JSON.
    #[arg(long, global = true)]
    pub plain: bool,
    /// Largest number of coordinates for subset enumeration.
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// Seed for the random supplement of `verify`.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Chambers, walls and semistable loci of the GIT fan.
    Fan {
        /// Also write an SVG picture (rank 2 only).
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// Character to mark in the picture.
        #[arg(long, value_name = "NAME", requires = "svg")]
        highlight: Option<String>,
    },
    /// Minimal semistable supports.
    Ss { name: String },
    /// The cone C_V(θ) whose relative interior is the class of θ.
    Chamber { name: String },
    /// Whether two characters have the same semistable locus (exit 0/1).
    Equiv { a: String, b: String },
    /// Generic stabilizers of the semistable strata.
    Stack { name: String },
    /// The degree cone NE(θ) and its dual.
    Ne { name: String },
    /// A quasimap for θ of negative κ-degree, if any.
    Witness { theta: String, kappa: String },
    /// Check that relint(NE(θ)^∨) is the GIT class of θ. Without a name,
    /// every cone of the fan is checked.
    Verify {
        name: Option<String>,
        /// Number of random characters added when a seed is set.
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
    /// The problem for T x Gm acting on the same space, with every
    /// character extended by the degree.
    Lift {
        #[arg(long, default_value_t = 1)]
        degree: i64,
        /// Write the lifted problem file here.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn read_input(file: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    match file {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read(p).map_err(|e| CliError::Io(format!("cannot read {}: {e}", p.display())))
        }
        _ => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

/// Parses arguments, reads the problem and runs the subcommand.
pub fn execute<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::stdout(text, 0)
            } else {
                Outcome::stderr(text, code)
            };
        }
    };
    let input = match read_input(cli.file.as_ref(), stdin) {
        Ok(bytes) => bytes,
        Err(e) => return Outcome::error(&e),
    };
    let text = match String::from_utf8(input) {
        Ok(t) => t,
        Err(_) => {
            return Outcome::error(&CliError::Parse {
                line: None,
                message: "input is not UTF-8".into(),
            })
        }
    };
    match ProblemFile::parse(&text) {
        Ok(problem) => commands::run(&cli, &problem, text.as_bytes()),
        Err(e) => Outcome::error(&e),
    }
}
