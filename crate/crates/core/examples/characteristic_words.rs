//! Words over- or under-represented in each year, by exact hypergeometric
//! tail probabilities.
//!
//! ```text
//! cargo run --example characteristic_words
//! ```

use std::path::Path;

use textometry::charwords::{
    characteristic_words, hypergeom_tail, PartitionCounts, Representation, Tail,
};
use textometry::corpus::{
    ingest_corpus, CorpusFormat, MetadataKey, StemDictionary, StopwordList, TextNormalizer,
};
use textometry::lexical_table::{aggregate_by_category, build_lexical_table};

fn main() -> textometry::Result<()> {
    // A word seen 4 times among 10 occurrences, all 4 inside a part holding
    // 5 of them: P(X >= 4) = 6/252.
    let p = hypergeom_tail(&PartitionCounts::new(10, 5, 4, 4)?, Tail::Over)?;
    println!("P(X >= 4) = {p:.6}  (6/252 = {:.6})\n", 6.0 / 252.0);

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
    let table = build_lexical_table(&corpus);
    let years = aggregate_by_category(&table, &corpus, MetadataKey::Year)?;

    let report = characteristic_words(&years, 0.05)?;
    println!("{} tests at alpha = {}", report.n_tests, report.alpha);
    for part in &report.parts {
        let show = |dir: Representation| {
            part.words
                .iter()
                .filter(|w| w.direction == dir)
                .take(4)
                .map(|w| format!("{} ({:.1e})", w.term, w.p_value))
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("{}  + {}", part.part, show(Representation::Over));
        println!("      - {}", show(Representation::Under));
    }
    Ok(())
}
