mod error;
mod graph;
mod model_file;
mod report;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use genus2_pencils::catalog::{self, Tag};
use genus2_pencils::fibration::FibrationModel;
use genus2_pencils::fibres::dual_graph;
use genus2_pencils::numeric::ksq_upper_bound;
use indexmap::IndexMap;

use crate::error::CliError;
use crate::model_file::ModelFile;

#[derive(Parser)]
#[command(
    name = "pencils",
    version,
    about = "Genus-two pencils on rational surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class, plane model and invariants of a canonical fibre class.
    Canonical {
        /// A, B1, B2 or C
        #[arg(value_parser = canonical_tag)]
        tag: Tag,
    },
    /// Run every check on a catalog entry; exit 1 names the first failure.
    VerifyExample {
        /// e.g. 4.3, Ex4_5, B1
        #[arg(value_parser = any_tag)]
        tag: Tag,
        /// Print a line-per-fact summary instead of one line.
        #[arg(long)]
        report: bool,
    },
    /// List numeric types of #-minimal models.
    SearchTypes {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(2..=12))]
        genus: i64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(i64).range(1..))]
        ksq_min: i64,
        /// Defaults to 4g - 5, the largest value any type can have.
        #[arg(long)]
        ksq_max: Option<i64>,
        /// Drop the genus-two triple-point row and print why.
        #[arg(long)]
        apply_exclusion: bool,
    },
    /// Intersection graph of one fibre's components.
    DualGraph {
        /// A model file, or a catalog tag
        source: String,
        #[arg(long)]
        fibre: String,
        /// Emit Graphviz DOT instead of text.
        #[arg(long)]
        dot: bool,
    },
}

fn any_tag(s: &str) -> Result<Tag, String> {
    s.parse().map_err(|e: genus2_pencils::Error| e.to_string())
}

fn canonical_tag(s: &str) -> Result<Tag, String> {
    let tag = any_tag(s)?;
    if tag.is_canonical() {
        Ok(tag)
    } else {
        Err(format!("{tag} is an example; expected one of A, B1, B2, C"))
    }
}

fn load_fibration(source: &str) -> Result<(String, FibrationModel), CliError> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: source.to_string(),
            source: e,
        })?;
        let file: ModelFile = text.parse()?;
        let fib = file.data.fibration(&[], &IndexMap::new())?;
        return Ok((source.to_string(), fib));
    }
    let tag: Tag = source
        .parse()
        .map_err(|_| CliError::UnknownSource(source.to_string()))?;
    Ok((tag.to_string(), catalog::get(tag)?.fibration))
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Canonical { tag } => Ok(report::canonical(tag)?),
        Command::VerifyExample { tag, report } => {
            let r = catalog::verify(tag)?;
            Ok(if report {
                report::verify_report(&r)
            } else {
                report::verify_summary(&r)
            })
        }
        Command::SearchTypes {
            genus,
            ksq_min,
            ksq_max,
            apply_exclusion,
        } => {
            let hi = ksq_max.unwrap_or_else(|| ksq_upper_bound(genus));
            Ok(report::search_table(genus, ksq_min, hi, apply_exclusion)?)
        }
        Command::DualGraph { source, fibre, dot } => {
            let (title, fib) = load_fibration(&source)?;
            let dec = fib.fibre(&fibre).ok_or_else(|| CliError::UnknownFibre {
                name: fibre.clone(),
                available: fib
                    .fibres()
                    .iter()
                    .map(|f| f.name().to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            })?;
            let graph = dual_graph(&fib, dec)?;
            let title = format!("{title} {fibre}");
            Ok(if dot {
                graph::render_dot(&title, &graph)
            } else {
                graph::render_text(&title, &graph)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
