use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qmatch_cli::commands::{self, limits_with_guard, CliError, VerifyOptions, EXIT_INPUT};
use qmatch_core::Variant;

#[derive(Parser)]
#[command(
    name = "qmatch",
    version,
    about = "Exact tools for one-quadratic-term bipartite matching polytopes"
)]
struct Cli {
    /// Refuse enumeration on instances with more edges than this
    /// (overrides QMATCH_ENUM_GUARD).
    #[arg(long, global = true)]
    enum_guard: Option<usize>,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Exact,
    Down,
    Up,
    PerfectExact,
    PerfectDown,
    PerfectUp,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Exact => Variant::Exact,
            VariantArg::Down => Variant::Down,
            VariantArg::Up => Variant::Up,
            VariantArg::PerfectExact => Variant::PerfectExact,
            VariantArg::PerfectDown => Variant::PerfectDown,
            VariantArg::PerfectUp => Variant::PerfectUp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    Down,
    Up,
}

#[derive(Subcommand)]
enum Command {
    /// Find a violated inequality or report "inside".
    Separate {
        problem: PathBuf,
        point: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        variant: VariantArg,
    },
    /// Write a tight point as a convex combination of vertices.
    Decompose {
        problem: PathBuf,
        point: PathBuf,
        #[arg(long, value_enum)]
        lemma: LemmaArg,
    },
    /// Check the inequality description against enumerated vertices.
    /// Without check flags runs validity and completeness.
    Verify {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        variant: VariantArg,
        #[arg(long)]
        validity: bool,
        #[arg(long)]
        facets: bool,
        #[arg(long)]
        completeness: bool,
        #[arg(long)]
        monotonization: bool,
        /// Check the b-matching description using the file's b and cap lines.
        #[arg(long)]
        bmatching: bool,
        /// Largest |F| in the capacitated families.
        #[arg(long, default_value_t = 3)]
        max_f: usize,
        /// Enumerate every F.
        #[arg(long)]
        all_f: bool,
        /// Negative control: lower the rhs of this system row by one.
        #[arg(long)]
        corrupt_row: Option<usize>,
    },
    /// List the vertices of a variant.
    Vertices {
        problem: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        variant: VariantArg,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    let guard = match cli.enum_guard {
        Some(g) => Some(g),
        None => match std::env::var("QMATCH_ENUM_GUARD") {
            Ok(v) => Some(v.trim().parse().map_err(|_| {
                CliError::Input(format!("QMATCH_ENUM_GUARD is not a number: `{v}`"))
            })?),
            Err(_) => None,
        },
    };
    let limits = limits_with_guard(guard);
    match cli.cmd {
        Command::Separate {
            problem,
            point,
            variant,
        } => commands::separate(&read(&problem)?, &read(&point)?, variant.into()),
        Command::Decompose {
            problem,
            point,
            lemma,
        } => commands::decompose(
            &read(&problem)?,
            &read(&point)?,
            matches!(lemma, LemmaArg::Up),
            &limits,
        ),
        Command::Verify {
            problem,
            variant,
            validity,
            facets,
            completeness,
            monotonization,
            bmatching,
            max_f,
            all_f,
            corrupt_row,
        } => {
            let opts = VerifyOptions {
                validity,
                facets,
                completeness,
                monotonization,
                bmatching,
                max_f: if all_f { usize::MAX } else { max_f },
                corrupt_row,
            };
            commands::verify(&read(&problem)?, variant.into(), &opts, &limits)
        }
        Command::Vertices { problem, variant } => {
            commands::vertices(&read(&problem)?, variant.into(), &limits)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(o) => {
            print!("{}", o.output);
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
