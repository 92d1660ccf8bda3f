//! `galcoh`: command-line access to the cohomology engine.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

mod commands;
mod config;
mod literal;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CheckKind;
use config::{Model, ModelConfig};
use report::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] galcoh::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "galcoh",
    version,
    about = "Exact Galois cohomology of finite Galois-module models"
)]
struct Cli {
    /// JSON model file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    /// Reservoir depth, overriding the model file.
    #[arg(long, global = true)]
    reservoir: Option<usize>,
    /// RNG seed for `sample`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local or global first cohomology.
    H1 {
        #[arg(long, required_unless_present = "global", conflicts_with = "global")]
        local: Option<String>,
        #[arg(long)]
        global: bool,
        /// List every class of the global fiber product.
        #[arg(long, requires = "global")]
        enumerate: bool,
    },
    /// The power operation.
    Power {
        #[arg(long = "d", allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        class: String,
        /// Work in H¹ at this place instead of globally.
        #[arg(long)]
        local: Option<String>,
    },
    Period {
        #[arg(long)]
        class: String,
        #[arg(long)]
        local: Option<String>,
    },
    /// Index bounds and the splitting degrees found up to a degree bound.
    Index {
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_degree: u64,
        #[arg(long)]
        strict_quadratic: bool,
        #[arg(long)]
        local: Option<String>,
    },
    /// Splitting-degree guarantee for a class of period n.
    SplitBound {
        #[arg(long)]
        n: u64,
        #[arg(long, required_unless_present = "global", conflicts_with = "global")]
        local: Option<String>,
        #[arg(long)]
        global: bool,
    },
    Check {
        #[arg(value_enum)]
        what: CheckKind,
    },
    /// Glue local classes (`--at v=(1)`) into a global one.
    Glue {
        #[arg(long = "at", required = true)]
        at: Vec<String>,
    },
    /// appendix-a, gille, pgl [--n k], pu3, period2-list, or any catalog entry.
    Verify {
        target: String,
        #[arg(long)]
        n: Option<u64>,
    },
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Print the loaded model as a model file.
    Dump,
    /// Seeded random checks of the power operation on the model.
    Sample {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    /// Print an entry as a model file.
    Build {
        name: String,
        #[arg(long)]
        param: Option<u64>,
    },
}

enum Output {
    Report(Report),
    Text(String),
}

fn load(cli: &Cli) -> Result<Model, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Input("this command needs --config <path>".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    ModelConfig::parse(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .build(cli.reservoir)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    if cli.seed.is_some() && !matches!(cli.command, Command::Sample { .. }) {
        return Err(CliError::Input("--seed applies only to `sample`".into()));
    }
    let report = match &cli.command {
        Command::H1 {
            local, enumerate, ..
        } => commands::h1(&load(cli)?, local.as_deref(), *enumerate)?,
        Command::Power { d, class, local } => {
            commands::power(&load(cli)?, *d, class, local.as_deref())?
        }
        Command::Period { class, local } => commands::period(&load(cli)?, class, local.as_deref())?,
        Command::Index {
            class,
            max_degree,
            strict_quadratic,
            local,
        } => commands::index(
            &load(cli)?,
            class,
            *max_degree,
            *strict_quadratic,
            local.as_deref(),
        )?,
        Command::SplitBound { n, local, .. } => {
            commands::split_bound(&load(cli)?, *n, local.as_deref())?
        }
        Command::Check { what } => commands::check(&load(cli)?, *what)?,
        Command::Glue { at } => commands::glue(&load(cli)?, at)?,
        Command::Verify { target, n } => commands::verify(target, *n)?,
        Command::Catalog { action } => match action {
            CatalogCommand::List => commands::catalog_list()?,
            CatalogCommand::Build { name, param } => {
                let mut m = commands::catalog_model(name, *param)?;
                if let Some(r) = cli.reservoir {
                    m.places.reservoir_depth = r;
                }
                return Ok(Output::Text(commands::dump(&m)));
            }
        },
        Command::Dump => return Ok(Output::Text(commands::dump(&load(cli)?))),
        Command::Sample { cases } => commands::sample(&load(cli)?, *cases, cli.seed.unwrap_or(0))?,
    };
    Ok(Output::Report(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(r)) => {
            print!("{}", r.render(cli.format));
            if r.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
