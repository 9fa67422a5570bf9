//! End-to-end checks on the drawn figures and the year projection.

mod common;

use std::collections::BTreeSet;
use std::path::Path;

use common::data_dir;
use textometry::corpus::{
    ingest_corpus, CorpusFormat, MetadataKey, StemDictionary, StopwordList, TextNormalizer,
};
use textometry::correspondence::{
    fit_ca, project_supplementary, ContingencyTable, SupplementaryKind,
};
use textometry::lexical_table::{
    aggregate_by_category, build_lexical_table, remove_sparse_terms, SparsityThreshold,
};
use textometry::pipeline::{run_subcommand, RunConfig, Subcommand};

fn config(corpus: &str, out: &Path) -> RunConfig {
    let data = data_dir();
    let mut c = RunConfig::default();
    for (key, value) in [
        ("input", data.join(corpus)),
        ("stoplist", data.join("stoplist.txt")),
        ("stems", data.join("stems.tsv")),
        ("out", out.to_path_buf()),
    ] {
        c.set(key, value.to_str().unwrap(), None).unwrap();
    }
    c
}

fn run(c: &RunConfig, stages: &[Subcommand]) {
    for &s in stages {
        run_subcommand(s, c).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

fn svg(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

fn attr_values<'a>(doc: &'a roxmltree::Document, class: &str, attr: &str) -> Vec<&'a str> {
    doc.descendants()
        .filter(|n| n.attribute("class") == Some(class))
        .filter_map(|n| n.attribute(attr))
        .collect()
}

#[test]
fn plane_colours_each_group_from_the_palette() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("demo_corpus.csv", dir.path());
    run(&c, &[Subcommand::Ingest, Subcommand::Ca, Subcommand::Plane]);
    let text = svg(&dir.path().join("plane.svg"));
    let doc = roxmltree::Document::parse(&text).unwrap();
    let fills: BTreeSet<&str> = attr_values(&doc, "point", "fill").into_iter().collect();
    assert_eq!(fills, BTreeSet::from(["#7f7f7f", "#2ca02c", "#1f77b4"]));
    assert_eq!(
        attr_values(&doc, "legend-marker", "fill"),
        ["#7f7f7f", "#2ca02c", "#1f77b4"]
    );
    // Ordinary documents stay unlabelled; every label sits inside the canvas.
    let labels: Vec<_> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("point-label"))
        .collect();
    assert!(!labels.is_empty());
    for l in labels {
        let x: f64 = l.attribute("x").unwrap().parse().unwrap();
        let y: f64 = l.attribute("y").unwrap().parse().unwrap();
        assert!((0.0..=900.0).contains(&x) && (0.0..=700.0).contains(&y));
    }
}

#[test]
fn toy_trajectory_has_two_segments() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("toy_corpus.csv", dir.path());
    run(
        &c,
        &[Subcommand::Ingest, Subcommand::Ca, Subcommand::Trajectory],
    );
    let text = svg(&dir.path().join("trajectory.svg"));
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(attr_values(&doc, "arrowhead", "points").len(), 2);
    let line = attr_values(&doc, "trajectory", "points");
    assert_eq!(line.len(), 1);
    assert_eq!(line[0].split(' ').count(), 3);
    let years: Vec<&str> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("year-label"))
        .filter_map(|n| n.text())
        .collect();
    assert_eq!(years, ["2005", "2010", "2015"]);
}

#[test]
fn wordcloud_places_the_most_frequent_term_first() {
    let dir = tempfile::tempdir().unwrap();
    let c = config("demo_corpus.csv", dir.path());
    run(
        &c,
        &[
            Subcommand::Ingest,
            Subcommand::Glossary,
            Subcommand::Wordcloud,
        ],
    );
    let glossary = std::fs::read_to_string(dir.path().join("glossary.csv")).unwrap();
    let top = glossary
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .to_string();
    let text = svg(&dir.path().join("wordcloud.svg"));
    let doc = roxmltree::Document::parse(&text).unwrap();
    let first = doc
        .descendants()
        .find(|n| n.tag_name().name() == "text")
        .unwrap();
    assert_eq!(first.text(), Some(top.as_str()));
    assert_eq!(first.attribute("x"), Some("450.00"));
    assert_eq!(
        first
            .attribute("y")
            .map(|y| y.parse::<f64>().unwrap() < 370.0),
        Some(true)
    );
}

#[test]
fn year_projection_is_the_weighted_mean_of_its_documents() {
    let data = data_dir();
    let normalizer = TextNormalizer::new(
        StopwordList::load(&data.join("stoplist.txt")).unwrap(),
        StemDictionary::load(&data.join("stems.tsv")).unwrap(),
    );
    let corpus = ingest_corpus(
        &data.join("demo_corpus.csv"),
        CorpusFormat::Csv,
        &normalizer,
    )
    .unwrap();
    let full = build_lexical_table(&corpus);
    let (table, _) =
        remove_sparse_terms(&full, SparsityThreshold::parse_decimal("0.9631").unwrap()).unwrap();
    let table = table.without_zero_rows();
    let model = fit_ca(&ContingencyTable::from_lexical(&table), 4).unwrap();
    let years = aggregate_by_category(&table, &corpus, MetadataKey::Year).unwrap();
    let profiles: Vec<Vec<f64>> = (0..years.n_categories())
        .map(|j| years.counts.iter().map(|row| row[j] as f64).collect())
        .collect();
    let projected = project_supplementary(&model, SupplementaryKind::Row, &profiles).unwrap();

    let row_sums = table.row_sums();
    for (j, year) in years.categories.iter().enumerate() {
        let members: Vec<usize> = (0..table.n_docs())
            .filter(|&d| {
                corpus
                    .document(&table.doc_ids()[d])
                    .unwrap()
                    .year
                    .to_string()
                    == *year
            })
            .collect();
        let weight: u64 = members.iter().map(|&d| row_sums[d]).sum();
        for k in 0..model.n_dims_kept {
            let mean: f64 = members
                .iter()
                .map(|&d| row_sums[d] as f64 * model.row_coords[d][k])
                .sum::<f64>()
                / weight as f64;
            assert!(
                (projected[j][k] - mean).abs() < 1e-10,
                "{year} dim {}: {} vs {mean}",
                k + 1,
                projected[j][k]
            );
        }
    }
}
