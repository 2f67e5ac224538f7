use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use osculant::cli::document::parse_parametrization;
use osculant::cli::report::{run_report, run_report_cross_checked};
use osculant::{catalog_get, catalog_names, defects, Error, Mode, Options, Parametrization, Theorem};

const USAGE: u8 = 1;
const ENGINE: u8 = 2;
const THEOREM_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "osculant", version, about = "Osculating invariants of parametrized projective varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-order invariants and theorem verdicts for one variety.
    Analyze {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        max_order: u32,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Recompute every integer in symbolic mode and list disagreements.
        #[arg(long)]
        cross_check: bool,
    },
    /// Judge one theorem at one order.
    Check {
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        order: u32,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Built-in varieties.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

#[derive(Args)]
struct Source {
    /// JSON input document.
    #[arg(required_unless_present = "catalog", conflicts_with = "catalog")]
    file: Option<PathBuf>,
    /// Catalog name such as `rnc(4)` or `cone_veronese`.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, value_enum, default_value_t = ModeArg::Sampled)]
    mode: ModeArg,
    #[arg(long, env = "OSCULANT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "OSCULANT_SAMPLES", default_value_t = 5)]
    samples: usize,
    #[arg(long, env = "OSCULANT_COORD_BOUND", default_value_t = 100)]
    coord_bound: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Sampled,
    Symbolic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Sampling {
    fn options(&self) -> Options {
        let mode = match self.mode {
            ModeArg::Sampled => Mode::Sampled,
            ModeArg::Symbolic => Mode::Symbolic,
        };
        Options { mode, seed: self.seed, samples: self.samples.max(1), coord_bound: self.coord_bound.max(1) }
    }
}

enum Failure {
    Usage(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownVariety(_) | Error::Parse(_) | Error::InvalidOrder(_) => Failure::Usage(e.to_string()),
            e => Failure::Engine(e),
        }
    }
}

fn load(source: &Source) -> Result<Parametrization, Failure> {
    if let Some(name) = &source.catalog {
        return Ok(catalog_get(name)?.parametrization);
    }
    let path = source.file.as_ref().expect("clap enforces a source");
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_parametrization(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { source, max_order, sampling, format, cross_check } => {
            let p = load(&source)?;
            let opts = sampling.options();
            let report =
                if cross_check { run_report_cross_checked(&p, max_order, &opts)? } else { run_report(&p, max_order, &opts)? };
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            let mismatch = report.oracle_mismatches.as_ref().is_some_and(|m| !m.is_empty());
            Ok(if report.any_theorem_failed() || mismatch { THEOREM_FAILED } else { 0 })
        }
        Command::Check { theorem, order, source, sampling, format } => {
            let p = load(&source)?;
            let verdict = defects::check(&p, theorem, order, &sampling.options())?;
            match format {
                Format::Json => {
                    let doc = serde_json::json!({ "schema": "osculant.verdict.v1", "variety": p.name(), "verdict": verdict });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("verdict serializes"));
                }
                Format::Text => {
                    println!("{}: {verdict}", p.name());
                    for (key, value) in &verdict.inputs {
                        println!("    {key} = {value}");
                    }
                    for note in &verdict.notes {
                        println!("    note: {note}");
                    }
                }
            }
            Ok(if verdict.failed() { THEOREM_FAILED } else { 0 })
        }
        Command::Catalog { action: CatalogAction::List } => {
            for name in catalog_names() {
                let p = catalog_get(&name)?.parametrization;
                println!("{name:<18} k = {}  N = {}", p.k(), p.ambient_dim());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(ENGINE)
        }
    }
}
