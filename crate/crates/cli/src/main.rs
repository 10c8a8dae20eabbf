//! `graphmetric` command-line tool.
//!
//! Reports go to standard output as JSON and short summaries to standard
//! error. Exit status is 0 on success, 1 for a negative mathematical result
//! (the report carries the witness) and 2 for usage or input errors.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use graphmetric::graph::{GraphFormat, ENUMERATION_HARD_CAP};
use graphmetric::quadruples::ConjectureId;

use commands::{CheckKind, Construction, ConstructionOptions, Outcome};

#[derive(Parser)]
#[command(name = "graphmetric", version, about = "Finite metric spaces as graph geodesic metrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for GraphFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => GraphFormat::Json,
            Format::Text => GraphFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Conjecture {
    #[value(name = "4.2")]
    PathOrFourCycle,
    #[value(name = "4.4")]
    InducedFourCycle,
}

#[derive(clap::Args)]
struct ConstructArgs {
    /// Metric file (JSON or matrix text), `-` for standard input.
    file: String,
    /// Write the graph here instead of into the report.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the point-to-vertex map here instead of into the report.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Format of the graph written with `--out`.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also require every graph vertex to be the image of a point.
    #[arg(long)]
    require_onto: bool,
}

impl ConstructArgs {
    fn options(&self, fallback_embed: bool) -> ConstructionOptions {
        ConstructionOptions {
            out: self.out.clone(),
            map: self.map.clone(),
            format: self.format.into(),
            fallback_embed,
            require_onto: self.require_onto,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the metric axioms, integrality and the midpoint condition.
    Validate {
        file: String,
    },
    /// Build the graph whose geodesic metric is exactly the input.
    Realize {
        #[command(flatten)]
        args: ConstructArgs,
        /// Embed instead when the input is not a graph metric.
        #[arg(long)]
        fallback_embed: bool,
    },
    /// Isometrically embed an integer metric into a graph.
    Embed {
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// Embed the ceiling of a rational metric.
    CeilEmbed {
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// Print the geodesic distances of a connected graph as a metric file.
    Distances {
        /// Graph file (JSON or edge-list text), `-` for standard input.
        file: String,
        /// `json` for a metric JSON file, `text` for matrix text.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Betweenness, line, quadruple and four-point checks.
    #[command(group(ArgGroup::new("kind").required(true).args(["mb", "line", "plq", "quad_ineq"])))]
    Check {
        /// Every triangle is degenerate.
        #[arg(long)]
        mb: bool,
        /// Exact embedding in the real line.
        #[arg(long)]
        line: bool,
        /// Pseudo-linear quadruple classification of four points.
        #[arg(long)]
        plq: bool,
        /// Four-point inequality for an ordered quadruple.
        #[arg(long)]
        quad_ineq: bool,
        /// Metric or graph file, `-` for standard input.
        file: String,
        /// Points to restrict to (exactly four for --plq and --quad-ineq).
        labels: Vec<String>,
    },
    /// Check a conjecture over every connected graph up to a size.
    Search {
        #[arg(long, value_enum)]
        conjecture: Conjecture,
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u64).range(3..=ENUMERATION_HARD_CAP as u64))]
        max_n: u64,
        /// Violations listed in the report; all are counted.
        #[arg(long, default_value_t = 10)]
        max_violations: usize,
        /// Worker threads. Output does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate { file } => commands::validate(&file),
        Command::Realize { args, fallback_embed } => {
            commands::construct(Construction::Realize, &args.file, &args.options(fallback_embed))
        }
        Command::Embed { args } => commands::construct(Construction::Embed, &args.file, &args.options(false)),
        Command::CeilEmbed { args } => commands::construct(Construction::CeilEmbed, &args.file, &args.options(false)),
        Command::Distances { file, format } => commands::distances(&file, format.into()),
        Command::Check { mb, line, plq, quad_ineq: _, file, labels } => {
            let kind = if mb {
                CheckKind::Mb
            } else if line {
                CheckKind::Line
            } else if plq {
                CheckKind::Plq
            } else {
                CheckKind::QuadIneq
            };
            commands::check(kind, &file, &labels)
        }
        Command::Search { conjecture, max_n, max_violations, jobs } => {
            let id = match conjecture {
                Conjecture::PathOrFourCycle => ConjectureId::C42,
                Conjecture::InducedFourCycle => ConjectureId::C44,
            };
            commands::run_search(id, max_n as usize, max_violations, jobs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            eprintln!("{}", outcome.summary);
            ExitCode::from(if outcome.negative { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
