use std::process::ExitCode;

use clap::{Parser, Subcommand};
use reeb_cli::{CliError, GraphFormat, Input, Output};
use reeb_core::realize::Case;

/// Poincaré–Reeb graphs of plane algebraic domains.
///
/// INPUT is a JSON domain spec or, where a graph suffices, a graph JSON file; `-` reads stdin.
#[derive(Parser)]
#[command(name = "reeb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genericity and finite-type report.
    Analyze { input: String },
    /// Sweep the domain and print its graph.
    Graph {
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Graph of the complementary domain.
    Dual {
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Canonical code of the graph.
    Code { input: String },
    /// Whether two inputs have vertically equivalent graphs.
    Equiv { a: String, b: String },
    /// Boundary permutation of a disk domain.
    Permutation { input: String },
    /// Boundary ovals and lines, from the graph and from the curves.
    Census { input: String },
    /// Add unbounded branches to a compact base domain.
    Realize {
        input: String,
        #[arg(long, value_parser = parse_case)]
        case: Case,
    },
    /// Print a pseudo-random domain spec.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        complexity: usize,
    },
    /// SVG picture of the domain and its graph.
    Render {
        input: String,
        /// `xmin,xmax,ymin,ymax`, rationals allowed.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
}

fn parse_case(s: &str) -> Result<Case, String> {
    Case::parse(s).ok_or_else(|| format!("unknown case `{s}`; expected A, B or C"))
}

fn run(cmd: Command) -> Result<Output, CliError> {
    let out = match cmd {
        Command::Analyze { input } => return reeb_cli::analyze(Input::load(&input)?.spec()?),
        Command::Graph { input, format } => reeb_cli::emit_graph(&Input::load(&input)?.graph()?, format)?,
        Command::Dual { input, format } => reeb_cli::dual(&Input::load(&input)?, format)?,
        Command::Code { input } => reeb_cli::code(&Input::load(&input)?)?,
        Command::Equiv { a, b } => reeb_cli::equiv(&Input::load(&a)?, &Input::load(&b)?)?,
        Command::Permutation { input } => reeb_cli::permutation(&Input::load(&input)?)?,
        Command::Census { input } => reeb_cli::census(&Input::load(&input)?)?,
        Command::Realize { input, case } => reeb_cli::realize(Input::load(&input)?.spec()?, case)?,
        Command::Random { seed, complexity } => reeb_cli::random(seed, complexity)?,
        Command::Render { input, window } => reeb_cli::render(Input::load(&input)?.spec()?, window.as_deref())?,
    };
    Ok(out.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
