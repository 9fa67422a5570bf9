//! Tokenize, remove stopwords, map stems and print descriptive statistics.
//!
//! ```text
//! cargo run --example preprocess_stats
//! ```

use std::path::Path;

use textometry::corpus::{
    descriptive_stats, ingest_corpus, CorpusFormat, MetadataKey, StemDictionary, StopwordList,
    TextNormalizer,
};

fn main() -> textometry::Result<()> {
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

    let (raw, doc) = corpus.iter().next().expect("demo corpus is not empty");
    println!("{}: {}", raw.id, raw.text.split('.').next().unwrap_or(""));
    println!("  words: {:?}", &doc.words[..8]);
    println!("  terms: {:?}", &doc.terms[..6]);

    let s = descriptive_stats(&corpus);
    let one = |v: Option<f64>| v.map_or("-".into(), |v| format!("{v:.1}"));
    println!();
    println!("{:<28}{:>10}{:>10}", "", "total", "mean");
    println!("{:<28}{:>10}{:>10}", "documents", s.n_documents, "");
    println!(
        "{:<28}{:>10}{:>10}",
        "terms",
        s.n_terms_total,
        one(s.n_terms_mean)
    );
    println!(
        "{:<28}{:>10}{:>10}",
        "unique terms",
        s.n_unique_terms_total,
        one(s.n_unique_terms_mean)
    );
    println!(
        "{:<28}{:>10}{:>10}",
        "% unique",
        one(s.pct_unique_total),
        one(s.pct_unique_mean)
    );
    println!(
        "{:<28}{:>10}{:>10}",
        "words",
        s.n_words_total,
        one(s.n_words_mean)
    );
    println!(
        "{:<28}{:>10}",
        "average word length",
        one(s.avg_word_length)
    );

    println!("\ndocuments per year:");
    for (year, n) in &s.category_counts[&MetadataKey::Year] {
        println!("  {year}  {}", "#".repeat(*n));
    }
    Ok(())
}
