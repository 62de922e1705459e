use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Format;

/// Exact computations with arrows of finitely presented modules over Z and Z/m.
#[derive(Parser, Debug)]
#[command(name = "twocat", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// The instance file plus an optional entry name.
#[derive(Args, Debug)]
struct One {
    /// Instance file (UTF-8 JSON).
    file: PathBuf,
    /// Entry to use; may be omitted when the section has a single entry.
    #[arg(long)]
    name: Option<String>,
}

/// The instance file plus source and target entry names.
#[derive(Args, Debug)]
struct Two {
    file: PathBuf,
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    target: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal form of a matrix.
    Snf(One),
    /// Hom(M, N) of two modules.
    Hom(Two),
    /// Ext^n(M, N) for n = 1 or 2.
    Ext {
        #[command(flatten)]
        modules: Two,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// The triple (Coker a, Ker a, ch(a)).
    Ch(One),
    /// π0 and π1 of the hom-groupoid between two arrows.
    Pi(Two),
    /// Replacement of an arrow by one with free target.
    Replace(One),
    #[command(name = "two-kernel")]
    /// 2-kernel of a morphism between arrows with free target.
    TwoKernel(One),
    #[command(name = "two-cokernel")]
    /// 2-cokernel of a morphism between arrows with free target.
    TwoCokernel(One),
    /// Suspension Coker a → 0, with free cover.
    Sigma(One),
    /// Loop object of an arrow.
    Omega(One),
    /// Pip of a morphism.
    Pip(One),
    /// Copip of a morphism.
    Copip(One),
    /// Faithfulness flags of a morphism.
    Classify(One),
    /// Discrete object of a module, or the module of a discrete arrow.
    Dis {
        file: PathBuf,
        #[arg(long, conflicts_with = "arrow")]
        module: Option<String>,
        #[arg(long)]
        arrow: Option<String>,
    },
    #[command(name = "scg-check")]
    /// Check the six bracket identities on given data.
    ScgCheck(One),
    #[command(name = "scg-search")]
    /// Enumerate all bracket data on two finite groups.
    ScgSearch {
        file: PathBuf,
        #[arg(long)]
        ce: String,
        #[arg(long)]
        cee: String,
        /// Maximum number of candidates to enumerate.
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
    },
    /// Run seeded verification suites.
    Verify(VerifyArgs),
    /// Write a random instance file.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    /// `Z` or `Zmod:<m>`.
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_generators: usize,
    #[arg(long, default_value_t = 3)]
    max_relations: usize,
    #[arg(long, default_value_t = 5)]
    entry_bound: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Module,
    Arrow,
    ArrowC,
    Morphism,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, default_value = "Z")]
    ring: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Kind::Morphism)]
    kind: Kind,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    max_generators: usize,
    #[arg(long, default_value_t = 3)]
    max_relations: usize,
    #[arg(long, default_value_t = 5)]
    entry_bound: i64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{}", out.render(cli.format));
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
