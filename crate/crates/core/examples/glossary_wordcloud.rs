//! Most frequent terms as a table and as a wordcloud.
//!
//! ```text
//! cargo run --example glossary_wordcloud [OUTPUT_DIR]
//! ```

use std::path::{Path, PathBuf};

use textometry::corpus::{
    ingest_corpus, CorpusFormat, StemDictionary, StopwordList, TextNormalizer,
};
use textometry::lexical_table::{build_lexical_table, top_terms};
use textometry::viz::{render_wordcloud, PlotSpec};

fn main() -> textometry::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let out: PathBuf = std::env::args().nth(1).map_or_else(
        || std::env::temp_dir().join("textometry-examples"),
        PathBuf::from,
    );
    std::fs::create_dir_all(&out).expect("create output directory");

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
    println!(
        "{} documents, {} terms, {} occurrences",
        table.n_docs(),
        table.n_terms(),
        table.grand_total()
    );

    for e in top_terms(&table, 15) {
        println!("{:>3}  {:<16}{:>5}", e.rank, e.term, e.frequency);
    }

    let cloud = render_wordcloud(&top_terms(&table, 120), &PlotSpec::default())?;
    let path = out.join("wordcloud.svg");
    std::fs::write(&path, &cloud.svg).expect("write svg");
    println!(
        "\n{} words placed, {} dropped -> {}",
        cloud.placed.len(),
        cloud.dropped.len(),
        path.display()
    );
    Ok(())
}
