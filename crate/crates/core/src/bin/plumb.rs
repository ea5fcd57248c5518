use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use plumbing::cli::{self, Format, LauferArgs, Output};
use plumbing::enumerate::DEFAULT_MAX_VERTICES;
use plumbing::laufer::TieBreak;

#[derive(Parser)]
#[command(name = "plumb", version, about = "Plumbing tree analysis")]
struct Args {
    /// Output format: text or machine (JSON).
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a graph file and report minimality and definiteness.
    Validate { file: PathBuf },
    /// Run Laufer's algorithm. Exit code 0 for an L-space, 1 otherwise.
    Laufer {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
        /// first, last, max-pairing or random:<seed>
        #[arg(long, default_value = "first")]
        tie_break: TieBreak,
        #[arg(long)]
        no_early_exit: bool,
        /// Blow down -1/+1 vertices before running.
        #[arg(long)]
        minimalize: bool,
    },
    /// Structural classification and prediction.
    Classify { file: PathBuf },
    /// Rooted diagonalisation entry and de-rationaliser at a vertex.
    Derationalize {
        file: PathBuf,
        #[arg(long)]
        root: String,
    },
    /// Rational surgery on a vertex, written out as a graph file.
    Surger {
        file: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long, allow_hyphen_values = true)]
        coef: String,
    },
    /// Mumford presentation of the fundamental group.
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        abelianization: bool,
    },
    /// Hirzebruch-Jung expansion of a rational number.
    Hjcf {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Classify every minimal negative-definite tree up to a size.
    Enumerate {
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
        #[arg(long, default_value = "-5..-2", allow_hyphen_values = true, value_parser = cli::parse_weight_range)]
        weights: (i64, i64),
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let f = args.format;
    let out: Output = match args.command {
        Command::Validate { file } => cli::validate(&file, f),
        Command::Laufer {
            file,
            trace,
            tie_break,
            no_early_exit,
            minimalize,
        } => cli::laufer(
            &file,
            LauferArgs {
                trace,
                tie_break,
                no_early_exit,
                minimalize,
            },
            f,
        ),
        Command::Classify { file } => cli::classify_cmd(&file, f),
        Command::Derationalize { file, root } => cli::derationalize(&file, &root, f),
        Command::Surger { file, root, coef } => cli::surger_cmd(&file, &root, &coef, f),
        Command::Pi1 { file, abelianization } => cli::pi1(&file, abelianization, f),
        Command::Hjcf { value } => cli::hjcf(&value, f),
        Command::Enumerate {
            max_vertices,
            weights,
            out,
        } => cli::enumerate(max_vertices, weights, out.as_deref(), f),
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
