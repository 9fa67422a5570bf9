use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use textometry::pipeline::{run_subcommand, RunConfig, Subcommand};

/// Textual statistics pipeline: ingest a corpus, then compute statistics,
/// correspondence analysis, characteristic words, permutation tests and
/// SVG figures into an output directory.
#[derive(Parser, Debug)]
#[command(name = "textometry", version)]
struct Cli {
    /// ingest | stats | glossary | ca | metasets | charwords | chrono |
    /// permtest | wordcloud | plane | trajectory | all
    subcommand: String,
    /// Corpus file (csv, tsv or jsonl).
    #[arg(long)]
    input: Option<String>,
    #[arg(long, value_parser = ["csv", "tsv", "jsonl"])]
    format: Option<String>,
    /// One stopword per line.
    #[arg(long)]
    stoplist: Option<String>,
    /// `surface<TAB>root` lines.
    #[arg(long)]
    stems: Option<String>,
    /// Sparsity parameter S in (0, 1).
    #[arg(long)]
    sparse: Option<String>,
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    max_window: Option<String>,
    #[arg(long)]
    replicates: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    /// `key = value` configuration file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn run(cli: Cli) -> textometry::Result<()> {
    let sub: Subcommand = cli.subcommand.parse()?;
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        config.apply_file(path)?;
    }
    let flags = [
        ("input", &cli.input),
        ("format", &cli.format),
        ("stoplist", &cli.stoplist),
        ("stems", &cli.stems),
        ("sparse", &cli.sparse),
        ("dims", &cli.dims),
        ("alpha", &cli.alpha),
        ("max_window", &cli.max_window),
        ("replicates", &cli.replicates),
        ("seed", &cli.seed),
        ("out", &cli.out),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            config.set(key, v, None)?;
        }
    }
    let report = run_subcommand(sub, &config)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for p in &report.outputs {
        println!("{}", p.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
