//! File-based orchestration of the full analysis.
//!
//! `ingest` turns a corpus file into `corpus.json` plus the lexical table
//! (`table.csv`, `table.json`) in the output directory; every other stage
//! reads those artifacts (and `ca` results where needed) and writes its own
//! files next to them. Each run updates `manifest.json` with the effective
//! configuration and the SHA-256 of every input and output.

mod config;
mod manifest;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::charwords::{
    characteristic_words, chronological_words, write_characteristic_csv, write_chronological_csv,
};
use crate::corpus::{
    descriptive_stats, ingest_corpus, Corpus, MetadataKey, StemDictionary, StopwordList,
    TextNormalizer,
};
use crate::correspondence::{
    extract_metaset, fit_ca, project_supplementary, write_coordinates, write_model_json, CaModel,
    ContingencyTable, MetaKind, MetaSet, Sign, SupplementaryKind,
};
use crate::error::{Error, Result};
use crate::lexical_table::{
    aggregate_by_category, build_lexical_table, read_table, remove_sparse_terms, top_terms,
    write_glossary, write_table, AggregatedTable, LexicalTable,
};
use crate::permtest::{first_eigenvalue_test, Histogram, PermTestResult};
use crate::viz::{
    render_plane, render_trajectory, render_wordcloud, PlaneAxes, PlanePoint, PlotSpec, YearPoint,
};

pub use config::{RunConfig, KEYS as CONFIG_KEYS};
pub use manifest::{sha256_file, sha256_hex, Manifest, MANIFEST_FILE};

pub const CORPUS_FILE: &str = "corpus.json";
pub const TABLE_FILE: &str = "table.csv";
pub const TABLE_SIDECAR: &str = "table.json";
pub const CA_MODEL_FILE: &str = "ca_model.json";
pub const CA_YEARS_MODEL_FILE: &str = "ca_years_model.json";

const HISTOGRAM_BINS: usize = 30;

/// A pipeline stage, or `all` for every stage in dependency order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Ingest,
    Stats,
    Glossary,
    Ca,
    Metasets,
    Charwords,
    Chrono,
    Permtest,
    Wordcloud,
    Plane,
    Trajectory,
    All,
}

impl Subcommand {
    /// Every stage in the order `all` runs them.
    pub const STAGES: [Subcommand; 11] = [
        Subcommand::Ingest,
        Subcommand::Stats,
        Subcommand::Glossary,
        Subcommand::Ca,
        Subcommand::Metasets,
        Subcommand::Charwords,
        Subcommand::Chrono,
        Subcommand::Permtest,
        Subcommand::Wordcloud,
        Subcommand::Plane,
        Subcommand::Trajectory,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Subcommand::Ingest => "ingest",
            Subcommand::Stats => "stats",
            Subcommand::Glossary => "glossary",
            Subcommand::Ca => "ca",
            Subcommand::Metasets => "metasets",
            Subcommand::Charwords => "charwords",
            Subcommand::Chrono => "chrono",
            Subcommand::Permtest => "permtest",
            Subcommand::Wordcloud => "wordcloud",
            Subcommand::Plane => "plane",
            Subcommand::Trajectory => "trajectory",
            Subcommand::All => "all",
        }
    }

    fn stages(self) -> Vec<Subcommand> {
        match self {
            Subcommand::All => Self::STAGES.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Subcommand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::STAGES
            .iter()
            .chain([&Subcommand::All])
            .find(|c| c.as_str() == s)
            .copied()
            .ok_or_else(|| Error::Usage(format!("unknown subcommand `{s}`")))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunReport {
    /// Files written, in order.
    pub outputs: Vec<PathBuf>,
    /// Non-fatal problems: dropped wordcloud terms, changed digests.
    pub warnings: Vec<String>,
}

struct Stage<'a> {
    config: &'a RunConfig,
    out: &'a Path,
    written: Vec<String>,
    warnings: Vec<String>,
    inputs: Option<Vec<(String, PathBuf)>>,
}

fn missing(file: &str, out: &Path, producer: &str) -> Error {
    Error::Precondition(format!(
        "`{file}` not found in {}; run `{producer}` first",
        out.display()
    ))
}

impl Stage<'_> {
    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.path(name);
        std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        self.written.push(name.to_string());
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::Render(format!("{name}: {e}")))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    fn read_json<T: serde::de::DeserializeOwned>(&self, name: &str, producer: &str) -> Result<T> {
        let path = self.path(name);
        if !path.exists() {
            return Err(missing(name, self.out, producer));
        }
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Format {
            path,
            record: e.line(),
            message: e.to_string(),
        })
    }

    fn corpus(&self) -> Result<Corpus> {
        self.read_json(CORPUS_FILE, "ingest")
    }

    fn table(&self) -> Result<LexicalTable> {
        for name in [TABLE_FILE, TABLE_SIDECAR] {
            if !self.path(name).exists() {
                return Err(missing(name, self.out, "ingest"));
            }
        }
        read_table(&self.path(TABLE_FILE), &self.path(TABLE_SIDECAR))
    }

    /// Sparse-filtered table with emptied documents removed.
    fn filtered(&self) -> Result<LexicalTable> {
        let (table, _) = remove_sparse_terms(&self.table()?, self.config.sparsity())?;
        Ok(table.without_zero_rows())
    }

    fn years(&self, corpus: &Corpus, table: &LexicalTable) -> Result<AggregatedTable> {
        aggregate_by_category(table, corpus, MetadataKey::Year)
    }

    fn run(&mut self, sub: Subcommand) -> Result<()> {
        match sub {
            Subcommand::Ingest => self.ingest(),
            Subcommand::Stats => {
                let stats = descriptive_stats(&self.corpus()?);
                self.write_json("stats.json", &stats)
            }
            Subcommand::Glossary => {
                let entries = top_terms(&self.table()?, self.config.glossary_size);
                let mut buf = Vec::new();
                write_glossary(&entries, &mut buf)?;
                self.write("glossary.csv", &buf)
            }
            Subcommand::Ca => self.ca(),
            Subcommand::Metasets => {
                let model: CaModel = self.read_json(CA_MODEL_FILE, "ca")?;
                let sets = metasets(&model, 0..model.n_dims_kept, self.config)?;
                self.write_json("metasets.json", &sets)
            }
            Subcommand::Charwords => {
                let corpus = self.corpus()?;
                let agg = self.years(&corpus, &self.filtered()?)?;
                let report = characteristic_words(&agg, self.config.alpha)?;
                let mut buf = Vec::new();
                write_characteristic_csv(&report, &mut buf)?;
                self.write("charwords.csv", &buf)?;
                self.write_json("charwords.json", &report)
            }
            Subcommand::Chrono => {
                let corpus = self.corpus()?;
                let agg = self.years(&corpus, &self.filtered()?)?;
                let report = chronological_words(&agg, self.config.max_window, self.config.alpha)?;
                let mut buf = Vec::new();
                write_chronological_csv(&report, &mut buf)?;
                self.write("chrono.csv", &buf)?;
                self.write_json("chrono.json", &report)
            }
            Subcommand::Permtest => self.permtest(),
            Subcommand::Wordcloud => {
                let entries = top_terms(&self.table()?, self.config.wordcloud_size);
                let cloud = render_wordcloud(&entries, &PlotSpec::default())?;
                if !cloud.dropped.is_empty() {
                    self.warnings.push(format!(
                        "wordcloud: {} term(s) did not fit and were dropped: {}",
                        cloud.dropped.len(),
                        cloud.dropped.join(", ")
                    ));
                }
                self.write("wordcloud.svg", cloud.svg.as_bytes())
            }
            Subcommand::Plane => self.plane(),
            Subcommand::Trajectory => {
                let model: CaModel = self.read_json(CA_YEARS_MODEL_FILE, "ca")?;
                let axes = PlaneAxes::from_model(&model, 0, 1)?;
                let points = model
                    .col_labels
                    .iter()
                    .zip(&model.col_coords)
                    .map(|(label, c)| {
                        let year = label.parse().map_err(|_| {
                            Error::Precondition(format!("period label `{label}` is not a year"))
                        })?;
                        Ok(YearPoint {
                            year,
                            x: c[0],
                            y: c[1],
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let svg = render_trajectory(&points, &axes, &PlotSpec::default())?;
                self.write("trajectory.svg", svg.as_bytes())
            }
            Subcommand::All => unreachable!("expanded by run_subcommand"),
        }
    }

    fn ingest(&mut self) -> Result<()> {
        let input = self
            .config
            .input
            .clone()
            .ok_or_else(|| Error::Usage("`ingest` needs an input corpus (--input)".into()))?;
        let stoplist = match &self.config.stoplist {
            Some(p) => StopwordList::load(p)?,
            None => StopwordList::empty(),
        };
        let stems = match &self.config.stems {
            Some(p) => StemDictionary::load(p)?,
            None => StemDictionary::identity(),
        };
        let normalizer = TextNormalizer::new(stoplist, stems);
        let corpus = ingest_corpus(&input, self.config.corpus_format(), &normalizer)?;
        if corpus.is_empty() {
            return Err(Error::Precondition(format!(
                "{} holds no documents",
                input.display()
            )));
        }
        let table = build_lexical_table(&corpus);
        self.write_json(CORPUS_FILE, &corpus)?;
        write_table(&table, &self.path(TABLE_FILE), &self.path(TABLE_SIDECAR))?;
        self.written.push(TABLE_FILE.into());
        self.written.push(TABLE_SIDECAR.into());

        let mut inputs = vec![("input".to_string(), input)];
        if let Some(p) = &self.config.stoplist {
            inputs.push(("stoplist".into(), p.clone()));
        }
        if let Some(p) = &self.config.stems {
            inputs.push(("stems".into(), p.clone()));
        }
        self.inputs = Some(inputs);
        Ok(())
    }

    fn ca(&mut self) -> Result<()> {
        let corpus = self.corpus()?;
        let full = self.table()?;
        let (filtered, report) = remove_sparse_terms(&full, self.config.sparsity())?;
        let filtered = filtered.without_zero_rows();
        if filtered.n_docs() < 2 || filtered.n_terms() < 2 {
            return Err(Error::Precondition(format!(
                "after sparse filtering {} document(s) and {} term(s) remain; need at least 2 of each",
                filtered.n_docs(),
                filtered.n_terms()
            )));
        }
        self.write_json(
            "sparse_filter.json",
            &serde_json::json!({
                "sparse": self.config.sparse,
                "n_terms_before": full.n_terms(),
                "n_terms_after": filtered.n_terms(),
                "n_documents_after": filtered.n_docs(),
                "removed_terms": report.removed_terms,
                "emptied_documents": report.emptied_documents,
            }),
        )?;

        let docs = fit_ca(&ContingencyTable::from_lexical(&filtered), self.config.dims)?;
        let mut buf = Vec::new();
        write_model_json(&docs, &mut buf)?;
        self.write(CA_MODEL_FILE, &buf)?;
        let mut buf = Vec::new();
        write_coordinates(&docs, &mut buf)?;
        self.write("ca_coordinates.csv", &buf)?;

        let agg = self.years(&corpus, &filtered)?;
        let years = fit_ca(&ContingencyTable::from_aggregated(&agg), self.config.dims)?;
        let mut buf = Vec::new();
        write_model_json(&years, &mut buf)?;
        self.write(CA_YEARS_MODEL_FILE, &buf)?;
        let mut buf = Vec::new();
        write_coordinates(&years, &mut buf)?;
        self.write("ca_years_coordinates.csv", &buf)?;

        // Year profiles as supplementary rows of the documents × terms model.
        let profiles: Vec<Vec<f64>> = (0..agg.n_categories())
            .map(|j| agg.counts.iter().map(|row| row[j] as f64).collect())
            .collect();
        let coords = project_supplementary(&docs, SupplementaryKind::Row, &profiles)?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let to_err = |e: csv::Error| Error::Render(format!("years_supplementary.csv: {e}"));
        let mut header = vec!["year".to_string()];
        header.extend((1..=docs.n_dims_kept).map(|k| format!("dim{k}")));
        w.write_record(&header).map_err(to_err)?;
        for (year, c) in agg.categories.iter().zip(&coords) {
            let mut rec = vec![year.clone()];
            rec.extend(c.iter().map(|v| format!("{v:.12}")));
            w.write_record(&rec).map_err(to_err)?;
        }
        let buf = w.into_inner().map_err(|e| Error::Render(e.to_string()))?;
        self.write("years_supplementary.csv", &buf)
    }

    fn permtest(&mut self) -> Result<()> {
        #[derive(Serialize)]
        struct Report<'a> {
            #[serde(flatten)]
            result: &'a PermTestResult,
            histogram: Histogram,
        }
        let corpus = self.corpus()?;
        let table = self.filtered()?;
        let result = first_eigenvalue_test(
            &corpus,
            &table,
            MetadataKey::Year,
            self.config.replicates,
            self.config.seed,
        )?;
        let histogram = result.histogram(HISTOGRAM_BINS);
        self.write_json(
            "permtest.json",
            &Report {
                result: &result,
                histogram,
            },
        )
    }

    fn plane(&mut self) -> Result<()> {
        let spec = PlotSpec::default();
        let docs: CaModel = self.read_json(CA_MODEL_FILE, "ca")?;
        let axes = PlaneAxes::from_model(&docs, 0, 1)?;
        let metadocs = plane_members(&docs, MetaKind::Metadoc, self.config.metadoc_multiplier)?;
        let metakeys = plane_members(&docs, MetaKind::Metakey, self.config.metakey_multiplier)?;
        let points = plane_points(
            &docs,
            &metadocs,
            ("documents", "metadocs"),
            Some(&metakeys),
            "metakeys",
        );
        let svg = render_plane(&points, &axes, &spec)?;
        self.write("plane.svg", svg.as_bytes())?;

        let years: CaModel = self.read_json(CA_YEARS_MODEL_FILE, "ca")?;
        let axes = PlaneAxes::from_model(&years, 0, 1)?;
        // Rows of this model are terms, so they take the word multiplier.
        let metakeys = plane_members(&years, MetaKind::Metadoc, self.config.metakey_multiplier)?;
        let points = plane_points(&years, &metakeys, ("terms", "metakeys"), None, "years");
        let svg = render_plane(&points, &axes, &spec)?;
        self.write("plane_years.svg", svg.as_bytes())
    }
}

/// Metakeys and metadocs of both signs on each axis in `axes`.
fn metasets(
    model: &CaModel,
    axes: std::ops::Range<usize>,
    config: &RunConfig,
) -> Result<Vec<MetaSet>> {
    let mut sets = Vec::new();
    for axis in axes {
        for (kind, mult) in [
            (MetaKind::Metadoc, config.metadoc_multiplier),
            (MetaKind::Metakey, config.metakey_multiplier),
        ] {
            for sign in [Sign::Positive, Sign::Negative] {
                sets.push(extract_metaset(model, axis, kind, sign, mult)?);
            }
        }
    }
    Ok(sets)
}

/// Items of `kind` in any metaset of either sign on the first two axes.
fn plane_members(model: &CaModel, kind: MetaKind, multiplier: f64) -> Result<BTreeSet<String>> {
    let mut ids = BTreeSet::new();
    for axis in 0..2 {
        for sign in [Sign::Positive, Sign::Negative] {
            let set = extract_metaset(model, axis, kind, sign, multiplier)?;
            ids.extend(set.members.into_iter().map(|m| m.id));
        }
    }
    Ok(ids)
}

/// Points for a plane. Rows come first: ordinary rows as unlabelled
/// `row_groups.0` points, then `row_members` labelled as `row_groups.1`.
/// Columns follow, labelled as `col_group`; with `col_members` set only
/// those columns are drawn.
fn plane_points(
    model: &CaModel,
    row_members: &BTreeSet<String>,
    row_groups: (&str, &str),
    col_members: Option<&BTreeSet<String>>,
    col_group: &str,
) -> Vec<PlanePoint> {
    let mut points = Vec::new();
    let mut highlighted = Vec::new();
    for (label, c) in model.row_labels.iter().zip(&model.row_coords) {
        if row_members.contains(label) {
            highlighted.push(PlanePoint::new(label.clone(), row_groups.1, c[0], c[1]));
        } else {
            points.push(PlanePoint::new("", row_groups.0, c[0], c[1]));
        }
    }
    points.extend(highlighted);
    for (label, c) in model.col_labels.iter().zip(&model.col_coords) {
        if col_members.is_none_or(|m| m.contains(label)) {
            points.push(PlanePoint::new(label.clone(), col_group, c[0], c[1]));
        }
    }
    points
}

/// Runs one subcommand (or all of them) and updates the manifest.
pub fn run_subcommand(sub: Subcommand, config: &RunConfig) -> Result<RunReport> {
    let out = config.out.as_path();
    std::fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    let previous = Manifest::load(out)?;

    let mut stage = Stage {
        config,
        out,
        written: Vec::new(),
        warnings: Vec::new(),
        inputs: None,
    };
    for s in sub.stages() {
        stage.run(s)?;
    }

    let entries = config.manifest_entries();
    let mut manifest = match &previous {
        Some(m) => Manifest {
            config: entries.clone(),
            ..m.clone()
        },
        None => Manifest::new(entries.clone()),
    };
    if let Some(inputs) = &stage.inputs {
        manifest.inputs.clear();
        for (role, path) in inputs {
            manifest.inputs.insert(role.clone(), sha256_file(path)?);
        }
    }
    let same_run = previous.as_ref().is_some_and(|m| {
        m.config == entries && (stage.inputs.is_none() || m.inputs == manifest.inputs)
    });
    let mut warnings = stage.warnings;
    for name in &stage.written {
        let digest = sha256_file(&out.join(name))?;
        if same_run {
            if let Some(old) = previous.as_ref().and_then(|m| m.outputs.get(name)) {
                if *old != digest {
                    warnings.push(format!(
                        "{name}: digest changed from {old} to {digest} under the same configuration"
                    ));
                }
            }
        }
        manifest.outputs.insert(name.clone(), digest);
    }
    manifest.save(out)?;

    Ok(RunReport {
        outputs: stage.written.iter().map(|n| out.join(n)).collect(),
        warnings,
    })
}
