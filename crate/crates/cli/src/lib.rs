//! `ucf`: bound reports, decompositions, audits and Θ tables for union-closed
//! families.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails on the input,
//! 2 for usage, input and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

mod render;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "ucf", version, about = "Exact bounds and audits for union-closed set families")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write output to this file instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report union-closedness, length and every size bound for a .ucf family.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Write the union closure of a .ucf family.
    Closure {
        path: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Build and verify the maximum-chain decomposition of a union-closed family.
    Decompose {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Write the family of all subsets of [n] with at least n - ell elements.
    Extremal {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        ell: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Audit every bound over union-closed families with universe [n].
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Visit every union-closed family (n <= 4).
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        exhaustive: bool,
        /// Number of random families to audit.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0, requires = "samples")]
        seed: u64,
        /// Worker threads; the report does not depend on this.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// CSV of prefix binomial sums against Θ at its optimal depth.
    ThetaTable {
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        /// `all`, a single k, or an inclusive range `a..b`.
        #[arg(long, default_value = "all")]
        k: KPolicy,
        #[command(flatten)]
        output: Output,
    },
}

/// Which `k` values a Θ table row covers for each `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KPolicy {
    All,
    Range(u32, u32),
}

impl std::str::FromStr for KPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(KPolicy::All);
        }
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("invalid k policy {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(s)?, num(s)?),
        };
        if lo == 0 || lo > hi {
            return Err(format!("k range {s:?} must satisfy 1 <= a <= b"));
        }
        Ok(KPolicy::Range(lo, hi))
    }
}

/// Failure of a command: the message goes to stderr with the given exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

/// What a command produced: its rendered output and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub checks_passed: bool,
    pub notes: Vec<String>,
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let out_path = output_path(&cli.command).cloned();
    match execute(&cli.command) {
        Ok(outcome) => {
            for note in &outcome.notes {
                let _ = writeln!(stderr, "{note}");
            }
            if let Err(f) = emit(&outcome.text, out_path.as_deref(), stdout) {
                let _ = writeln!(stderr, "error: {}", f.message);
                return f.code;
            }
            if outcome.checks_passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Check { output, .. }
        | Command::Closure { output, .. }
        | Command::Decompose { output, .. }
        | Command::Extremal { output, .. }
        | Command::Enumerate { output, .. }
        | Command::ThetaTable { output, .. } => output.out.as_ref(),
    }
}

fn emit(text: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("cannot write output: {e}"))),
    }
}

pub fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Check { path, format, .. } => render::check(&read_family(path)?, *format),
        Command::Closure { path, .. } => Ok(render::closure(&read_family(path)?)),
        Command::Decompose { path, format, .. } => {
            render::decompose(&read_family(path)?, *format)
        }
        Command::Extremal { n, ell, .. } => render::extremal(*n, *ell),
        Command::Enumerate { n, exhaustive, samples, seed, threads, format, .. } => {
            let mode = match (exhaustive, samples) {
                (true, _) => ucf_core::AuditMode::Exhaustive,
                (false, Some(count)) => ucf_core::AuditMode::Sampled { count: *count, seed: *seed },
                (false, None) => return Err(Failure::usage("pass --exhaustive or --samples")),
            };
            render::enumerate(*n, mode, *threads, *format)
        }
        Command::ThetaTable { n_max, n_min, k, .. } => render::theta_table(*n_min, *n_max, *k),
    }
}

fn read_family(path: &Path) -> Result<ucf_core::SetFamily, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    ucf_core::ucf::parse(&text).map_err(|e| match e {
        ucf_core::Error::Parse { line, message } => {
            Failure::usage(format!("{}:{line}: {message}", path.display()))
        }
        other => Failure::usage(format!("{}: {other}", path.display())),
    })
}
