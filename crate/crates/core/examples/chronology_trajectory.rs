//! How the vocabulary moves through time: chronological words over windows
//! of up to three years, a words × years correspondence analysis, year
//! profiles projected into the documents' space, and the year trajectory.
//!
//! ```text
//! cargo run --example chronology_trajectory [OUTPUT_DIR]
//! ```

use std::path::{Path, PathBuf};

use textometry::charwords::chronological_words;
use textometry::corpus::{
    ingest_corpus, CorpusFormat, MetadataKey, StemDictionary, StopwordList, TextNormalizer,
};
use textometry::correspondence::{
    fit_ca, project_supplementary, ContingencyTable, SupplementaryKind,
};
use textometry::lexical_table::{
    aggregate_by_category, build_lexical_table, remove_sparse_terms, SparsityThreshold,
};
use textometry::viz::{render_trajectory, PlaneAxes, PlotSpec, YearPoint};

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
    let (table, _) = remove_sparse_terms(
        &build_lexical_table(&corpus),
        SparsityThreshold::parse_decimal("0.9631")?,
    )?;
    let table = table.without_zero_rows();
    let years = aggregate_by_category(&table, &corpus, MetadataKey::Year)?;

    let chrono = chronological_words(&years, 3, 0.05)?;
    println!("{} chronological words; the strongest:", chrono.words.len());
    for w in chrono.words.iter().take(12) {
        println!(
            "  {:<14} {:<10} p = {:.2e}",
            w.term,
            w.window_label(),
            w.p_value
        );
    }

    let model = fit_ca(&ContingencyTable::from_aggregated(&years), 4)?;
    println!(
        "\nwords x years: first axes carry {:.1}% and {:.1}% of inertia",
        model.inertia_pct(0),
        model.inertia_pct(1)
    );

    // The same years placed as supplementary rows of the documents x terms
    // analysis: each lands at the mass-weighted centre of its documents.
    let docs = fit_ca(&ContingencyTable::from_lexical(&table), 2)?;
    let profiles: Vec<Vec<f64>> = (0..years.n_categories())
        .map(|j| years.counts.iter().map(|row| row[j] as f64).collect())
        .collect();
    let projected = project_supplementary(&docs, SupplementaryKind::Row, &profiles)?;
    for (year, c) in years.categories.iter().zip(&projected).step_by(3) {
        println!("  {year} in document space: ({:+.3}, {:+.3})", c[0], c[1]);
    }

    let points: Vec<YearPoint> = model
        .col_labels
        .iter()
        .zip(&model.col_coords)
        .map(|(y, c)| YearPoint {
            year: y.parse().expect("year label"),
            x: c[0],
            y: c[1],
        })
        .collect();
    let svg = render_trajectory(
        &points,
        &PlaneAxes::from_model(&model, 0, 1)?,
        &PlotSpec::default(),
    )?;
    let path = out.join("trajectory.svg");
    std::fs::write(&path, svg).expect("write svg");
    println!("-> {}", path.display());
    Ok(())
}
