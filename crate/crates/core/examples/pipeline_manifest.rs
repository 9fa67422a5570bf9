//! The whole pipeline through the file-based runner, twice, showing that
//! every output digest in the manifest is reproduced.
//!
//! ```text
//! cargo run --release --example pipeline_manifest
//! ```

use std::path::Path;

use textometry::pipeline::{run_subcommand, Manifest, RunConfig, Subcommand};

fn main() -> textometry::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let root = std::env::temp_dir().join("textometry-pipeline");

    let mut manifests = Vec::new();
    for run in ["a", "b"] {
        let mut config = RunConfig::default();
        config.set(
            "input",
            &data.join("demo_corpus.csv").display().to_string(),
            None,
        )?;
        config.set(
            "stoplist",
            &data.join("stoplist.txt").display().to_string(),
            None,
        )?;
        config.set("stems", &data.join("stems.tsv").display().to_string(), None)?;
        config.set("replicates", "499", None)?;
        config.set("seed", "11", None)?;
        config.out = root.join(run);
        let _ = std::fs::remove_dir_all(&config.out);

        let report = run_subcommand(Subcommand::All, &config)?;
        for w in &report.warnings {
            println!("warning: {w}");
        }
        manifests.push(Manifest::load(&config.out)?.expect("manifest written"));
    }

    println!("{} {}", manifests[0].tool, manifests[0].version);
    for (name, digest) in &manifests[0].outputs {
        let same = manifests[1].outputs.get(name) == Some(digest);
        println!(
            "{:<26} {}  {}",
            name,
            &digest[..16],
            if same { "reproduced" } else { "DIFFERS" }
        );
    }
    Ok(())
}
