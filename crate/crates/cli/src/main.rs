use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use secant_core::Degree;

mod commands;
mod config;
mod render;

use commands::{FormulaChoice, LevelChoice, Space, TupleInput};
use render::Format;

/// Exact counts and divisor classes for secant loci on a very general curve.
#[derive(Parser, Debug)]
#[command(name = "secant", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,

    /// key=value file with enumeration ceilings (r_max, d_max).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct TupleArgs {
    #[arg(long = "g", allow_hyphen_values = true)]
    g: i64,
    #[arg(long = "r", allow_hyphen_values = true)]
    r: i64,
    /// Degree, or `auto` to solve the codimension condition.
    #[arg(long = "d", value_parser = parse_degree, allow_hyphen_values = true)]
    d: Degree,
    #[arg(long = "t", allow_hyphen_values = true)]
    t: i64,
    #[arg(long = "n", allow_hyphen_values = true)]
    n: i64,
}

impl TupleArgs {
    fn input(&self) -> TupleInput {
        TupleInput {
            g: self.g,
            r: self.r,
            d: self.d,
            t: self.t,
            n: self.n,
        }
    }
}

fn parse_degree(s: &str) -> Result<Degree, String> {
    if s == "auto" {
        return Ok(Degree::Auto);
    }
    s.parse().map(Degree::Given).map_err(|_| format!("expected an integer or `auto`, got {s:?}"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of pairs (point, linear series) with secant vanishing.
    Count {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, value_enum, default_value = "product")]
        formula: FormulaChoice,
    },
    /// The count T(delta) with delta points moving and n - delta fixed.
    Tcount {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
        /// Recompute through the Fulton-Pragacz determinant and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Divisor class on M_{g,1}, M_{g,n} or C_n.
    Class {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, value_enum)]
        space: Space,
    },
    /// New slope bound g/n against floor(g/n), one row per n.
    SlopeTable {
        #[arg(long = "g")]
        g: i64,
        #[arg(long = "n-min")]
        n_min: i64,
        #[arg(long = "n-max")]
        n_max: i64,
    },
    /// All (r, t, d) giving a secant divisor on C_n.
    Enumerate {
        #[arg(long = "g")]
        g: i64,
        #[arg(long = "n")]
        n: i64,
    },
    /// Counts on both sides of the t = r residuation.
    Residual {
        #[command(flatten)]
        tuple: TupleArgs,
    },
    /// Run the cross-validation suites.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: &Cli) -> commands::Outcome {
    let bounds = || {
        config::load(cli.config.as_deref()).map_err(|message| commands::Failure {
            code: 2,
            message,
            doc: None,
        })
    };
    match &cli.command {
        Command::Count { tuple, formula } => commands::count(tuple.input(), *formula),
        Command::Tcount { tuple, delta, oracle } => commands::tcount(tuple.input(), *delta, *oracle),
        Command::Class { tuple, space } => commands::class(tuple.input(), *space),
        Command::SlopeTable { g, n_min, n_max } => commands::slope_table_cmd(*g, *n_min, *n_max, &bounds()?),
        Command::Enumerate { g, n } => commands::enumerate(*g, *n, &bounds()?),
        Command::Residual { tuple } => commands::residual(tuple.input()),
        Command::Verify { level, seed } => commands::verify(*level, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli) {
        Ok(doc) => {
            let _ = stdout.write_all(render::render(&doc, cli.format).as_bytes());
            ExitCode::SUCCESS
        }
        Err(failure) => {
            if let Some(doc) = &failure.doc {
                let _ = stdout.write_all(render::render(doc, cli.format).as_bytes());
            }
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
