//! Is the first eigenvalue of the words × years table larger than chance?
//! Year labels are shuffled across documents and the analysis refitted.
//!
//! ```text
//! cargo run --release --example permutation_test [REPLICATES]
//! ```

use std::path::Path;

use textometry::corpus::{
    ingest_corpus, CorpusFormat, MetadataKey, StemDictionary, StopwordList, TextNormalizer,
};
use textometry::lexical_table::{build_lexical_table, remove_sparse_terms, SparsityThreshold};
use textometry::permtest::first_eigenvalue_test;

fn main() -> textometry::Result<()> {
    let replicates: usize = std::env::args()
        .nth(1)
        .and_then(|r| r.parse().ok())
        .unwrap_or(999);
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let normalizer = TextNormalizer::new(
        StopwordList::load(&data.join("stoplist.txt"))?,
        StemDictionary::load(&data.join("stems.tsv"))?,
    );
    let corpus = ingest_corpus(
        &data.join("demo_corpus.csv"),
        CorpusFormat::Csv,
        &normalizer,
    )?;
    let (table, _) = remove_sparse_terms(
        &build_lexical_table(&corpus),
        SparsityThreshold::parse_decimal("0.9631")?,
    )?;

    let result = first_eigenvalue_test(
        &corpus,
        &table.without_zero_rows(),
        MetadataKey::Year,
        replicates,
        2024,
    )?;
    println!("observed first eigenvalue: {:.5}", result.observed_lambda1);
    println!(
        "p = {:.4} with {} replicates (seed {})",
        result.p_value, result.n_replicates, result.seed
    );

    let hist = result.histogram(12);
    let peak = *hist.counts.iter().max().unwrap_or(&1);
    for (k, n) in hist.counts.iter().enumerate() {
        println!("{:.4} {}", hist.edges[k], "*".repeat(n * 50 / peak.max(1)));
    }
    println!("observed sits at {:.4}", result.observed_lambda1);
    Ok(())
}
