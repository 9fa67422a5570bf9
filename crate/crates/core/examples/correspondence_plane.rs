//! Correspondence analysis of the documents × terms table after sparse-term
//! removal, with the high-contribution documents and words of the first
//! two axes drawn on the factorial plane.
//!
//! ```text
//! cargo run --example correspondence_plane [OUTPUT_DIR]
//! ```

use std::path::{Path, PathBuf};

use textometry::corpus::{
    ingest_corpus, CorpusFormat, StemDictionary, StopwordList, TextNormalizer,
};
use textometry::correspondence::{extract_metaset, fit_ca, ContingencyTable, MetaKind, Sign};
use textometry::lexical_table::{build_lexical_table, remove_sparse_terms, SparsityThreshold};
use textometry::viz::{render_plane, PlaneAxes, PlanePoint, PlotSpec};

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
    let full = build_lexical_table(&corpus);

    // Keep terms absent from at most 96.31% of documents.
    let (table, report) = remove_sparse_terms(&full, SparsityThreshold::parse_decimal("0.9631")?)?;
    let table = table.without_zero_rows();
    println!(
        "sparse filter: {} -> {} terms ({} removed)",
        full.n_terms(),
        table.n_terms(),
        report.removed_terms.len()
    );

    let model = fit_ca(&ContingencyTable::from_lexical(&table), 5)?;
    println!("total inertia {:.4}", model.total_inertia);
    for k in 0..model.n_dims_kept {
        println!(
            "  axis {}: eigenvalue {:.4} ({:.2}%)",
            k + 1,
            model.eigenvalues[k],
            model.inertia_pct(k)
        );
    }

    let mut points: Vec<PlanePoint> = Vec::new();
    let mut docs = Vec::new();
    let mut words = Vec::new();
    for axis in 0..2 {
        for sign in [Sign::Positive, Sign::Negative] {
            let metadocs = extract_metaset(&model, axis, MetaKind::Metadoc, sign, 8.0)?;
            let metakeys = extract_metaset(&model, axis, MetaKind::Metakey, sign, 5.0)?;
            let ids: Vec<&str> = metakeys.members.iter().map(|m| m.id.as_str()).collect();
            println!("{:<16} {:?}", metakeys.label(), ids);
            docs.extend(metadocs.members.into_iter().map(|m| m.id));
            words.extend(metakeys.members.into_iter().map(|m| m.id));
        }
    }
    for (label, c) in model.row_labels.iter().zip(&model.row_coords) {
        if !docs.contains(label) {
            points.push(PlanePoint::new("", "documents", c[0], c[1]));
        }
    }
    for (label, c) in model.row_labels.iter().zip(&model.row_coords) {
        if docs.contains(label) {
            points.push(PlanePoint::new(label.clone(), "metadocs", c[0], c[1]));
        }
    }
    for (label, c) in model.col_labels.iter().zip(&model.col_coords) {
        if words.contains(label) {
            points.push(PlanePoint::new(label.clone(), "metakeys", c[0], c[1]));
        }
    }

    let svg = render_plane(
        &points,
        &PlaneAxes::from_model(&model, 0, 1)?,
        &PlotSpec::default(),
    )?;
    let path = out.join("plane.svg");
    std::fs::write(&path, svg).expect("write svg");
    println!("-> {}", path.display());
    Ok(())
}
