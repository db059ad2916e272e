use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use isa2dl::pipeline::{evaluate_against, load_taxonomy, run_pipeline, InputMode, RunConfig, LEXICON_DIR_ENV};
use isa2dl::reason::Budget;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Raw,
    Tagged,
}

/// Compile IS-A sentences into a description logic knowledge base.
#[derive(Debug, Parser)]
#[command(name = "isa2dl", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Input documents, processed in order.
    #[arg(long = "input", short, num_args = 1..)]
    inputs: Vec<PathBuf>,

    #[arg(long, value_enum, default_value = "tagged")]
    mode: Mode,

    /// Marker variation table (surface, category, tense, inverse).
    #[arg(long)]
    markers: Option<PathBuf>,

    /// Quantifier variation table (surface, kind, degree).
    #[arg(long)]
    quantifiers: Option<PathBuf>,

    /// Hypernym lexicon files.
    #[arg(long, num_args = 1..)]
    hypernyms: Vec<PathBuf>,

    /// Directory searched for lexicon files not given explicitly.
    #[arg(long, env = LEXICON_DIR_ENV)]
    lexicon_dir: Option<PathBuf>,

    #[arg(long, default_value = "out")]
    out_dir: PathBuf,

    /// Add rule outputs without conflict repair.
    #[arg(long)]
    no_revision: bool,

    /// Also write trace.tsv and revision.tsv.
    #[arg(long)]
    trace: bool,

    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_nodes: u64,

    #[arg(long, default_value_t = 5_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_ms: u64,

    /// Gold taxonomies to evaluate the result against; writes eval.tsv.
    #[arg(long = "evaluate", num_args = 1..)]
    gold: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a learned taxonomy file against gold taxonomy files.
    Evaluate {
        learned: PathBuf,
        #[arg(required = true)]
        gold: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(Command::Evaluate { learned, gold }) = &cli.command {
        let result = load_taxonomy(learned).and_then(|t| evaluate_against(&t, gold));
        return match result {
            Ok(tsv) => {
                print!("{tsv}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }
    if cli.inputs.is_empty() {
        eprintln!("error: no --input given");
        return ExitCode::from(1);
    }
    for p in cli.inputs.iter().chain(&cli.hypernyms).chain(&cli.gold).chain(&cli.markers).chain(&cli.quantifiers) {
        if !p.is_file() {
            eprintln!("error: {} does not exist", p.display());
            return ExitCode::from(1);
        }
    }
    let config = RunConfig {
        inputs: cli.inputs.clone(),
        mode: match cli.mode {
            Mode::Raw => InputMode::Raw,
            Mode::Tagged => InputMode::Tagged,
        },
        markers: cli.markers.clone(),
        quantifiers: cli.quantifiers.clone(),
        hypernyms: cli.hypernyms.clone(),
        lexicon_dir: cli.lexicon_dir.clone(),
        revision: !cli.no_revision,
        budget: Budget { max_nodes: cli.budget_nodes as usize, max_time: Duration::from_millis(cli.budget_ms) },
    };
    let started = Instant::now();
    let result = match run_pipeline(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = result.write(&cli.out_dir, cli.trace) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if !cli.gold.is_empty() {
        match evaluate_against(&result.taxonomy, &cli.gold) {
            Ok(tsv) => {
                let p = cli.out_dir.join("eval.tsv");
                if let Err(e) = std::fs::write(&p, tsv) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    }
    let r = &result.report;
    eprintln!(
        "{} sentences, {} accepted, {} quarantined, kb {} ({} ms)",
        r.n_sentences(),
        r.n_accept(),
        r.n_quarantined(),
        if result.consistency.kb_consistent { "consistent" } else { "inconsistent" },
        started.elapsed().as_millis()
    );
    if result.resource_limited {
        eprintln!("warning: reasoning budget exhausted");
    }
    ExitCode::from(result.exit_code() as u8)
}
