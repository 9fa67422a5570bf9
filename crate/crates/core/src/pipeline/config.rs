use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusFormat;
use crate::error::{Error, Result};
use crate::lexical_table::SparsityThreshold;

/// Everything a pipeline run depends on besides the input files
/// themselves.
///
/// Values come from defaults, then an optional `key = value` file, then
/// explicit overrides; later sources win. Every numeric value is checked
/// when it is set, so a loaded config is always usable.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub format: Option<CorpusFormat>,
    pub stoplist: Option<PathBuf>,
    pub stems: Option<PathBuf>,
    /// Sparsity parameter as written, kept verbatim for the manifest.
    pub sparse: String,
    pub dims: usize,
    pub metadoc_multiplier: f64,
    pub metakey_multiplier: f64,
    pub alpha: f64,
    pub max_window: usize,
    pub replicates: usize,
    pub seed: u64,
    pub glossary_size: usize,
    pub wordcloud_size: usize,
    pub out: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: None,
            format: None,
            stoplist: None,
            stems: None,
            sparse: "0.9631".into(),
            dims: 5,
            metadoc_multiplier: 8.0,
            metakey_multiplier: 5.0,
            alpha: 0.05,
            max_window: 3,
            replicates: crate::permtest::DEFAULT_REPLICATES,
            seed: 1,
            glossary_size: 25,
            wordcloud_size: 377,
            out: PathBuf::from("out"),
        }
    }
}

pub const KEYS: [&str; 15] = [
    "input",
    "format",
    "stoplist",
    "stems",
    "sparse",
    "dims",
    "metadoc_multiplier",
    "metakey_multiplier",
    "alpha",
    "max_window",
    "replicates",
    "seed",
    "glossary_size",
    "wordcloud_size",
    "out",
];

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| usage(format!("`{key}`: cannot parse `{value}`")))
}

fn positive_int(key: &str, value: &str) -> Result<usize> {
    let v: usize = parse(key, value)?;
    if v == 0 {
        return Err(usage(format!("`{key}` must be at least 1")));
    }
    Ok(v)
}

fn positive_real(key: &str, value: &str) -> Result<f64> {
    let v: f64 = parse(key, value)?;
    if !(v.is_finite() && v > 0.0) {
        return Err(usage(format!(
            "`{key}` must be a positive number, got `{value}`"
        )));
    }
    Ok(v)
}

impl RunConfig {
    /// Sets one key. Relative paths are resolved against `base` when given.
    pub fn set(&mut self, key: &str, value: &str, base: Option<&Path>) -> Result<()> {
        let value = value.trim();
        let path = |v: &str| match base {
            Some(b) if Path::new(v).is_relative() => b.join(v),
            _ => PathBuf::from(v),
        };
        match key {
            "input" => self.input = Some(path(value)),
            "format" => self.format = Some(value.parse().map_err(|e: Error| usage(e.to_string()))?),
            "stoplist" => self.stoplist = Some(path(value)),
            "stems" => self.stems = Some(path(value)),
            "sparse" => {
                SparsityThreshold::parse_decimal(value).map_err(|e| usage(e.to_string()))?;
                self.sparse = value.to_string();
            }
            "dims" => self.dims = positive_int(key, value)?,
            "metadoc_multiplier" => self.metadoc_multiplier = positive_real(key, value)?,
            "metakey_multiplier" => self.metakey_multiplier = positive_real(key, value)?,
            "alpha" => {
                let a = positive_real(key, value)?;
                if a >= 1.0 {
                    return Err(usage(format!("`alpha` must be below 1, got `{value}`")));
                }
                self.alpha = a;
            }
            "max_window" => self.max_window = positive_int(key, value)?,
            "replicates" => self.replicates = positive_int(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "glossary_size" => self.glossary_size = positive_int(key, value)?,
            "wordcloud_size" => self.wordcloud_size = positive_int(key, value)?,
            "out" => self.out = path(value),
            other => {
                return Err(usage(format!(
                    "unknown configuration key `{other}` (known: {})",
                    KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Applies a `key = value` file. Blank lines and lines starting with
    /// `#` are ignored; relative paths are taken from the file's directory.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                usage(format!(
                    "{}: line {}: expected `key = value`",
                    path.display(),
                    n + 1
                ))
            })?;
            self.set(key.trim(), value, Some(base))
                .map_err(|e| usage(format!("{}: line {}: {e}", path.display(), n + 1)))?;
        }
        Ok(())
    }

    pub fn sparsity(&self) -> SparsityThreshold {
        SparsityThreshold::parse_decimal(&self.sparse).expect("validated when set")
    }

    /// Corpus format: explicit, else from the input extension, else CSV.
    pub fn corpus_format(&self) -> CorpusFormat {
        if let Some(f) = self.format {
            return f;
        }
        let ext = self
            .input
            .as_deref()
            .and_then(Path::extension)
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("tsv") | Some("tab") => CorpusFormat::Tsv,
            Some("jsonl") | Some("ndjson") => CorpusFormat::Jsonl,
            _ => CorpusFormat::Csv,
        }
    }

    /// Settings recorded in the manifest. The output directory is left out
    /// so identical runs into different directories describe themselves
    /// identically.
    pub fn manifest_entries(&self) -> BTreeMap<String, String> {
        let opt = |p: &Option<PathBuf>| {
            p.as_ref()
                .map_or(String::new(), |p| p.display().to_string())
        };
        let mut m = BTreeMap::new();
        m.insert("input".into(), opt(&self.input));
        m.insert("format".into(), self.corpus_format().to_string());
        m.insert("stoplist".into(), opt(&self.stoplist));
        m.insert("stems".into(), opt(&self.stems));
        m.insert("sparse".into(), self.sparse.clone());
        m.insert("dims".into(), self.dims.to_string());
        m.insert(
            "metadoc_multiplier".into(),
            self.metadoc_multiplier.to_string(),
        );
        m.insert(
            "metakey_multiplier".into(),
            self.metakey_multiplier.to_string(),
        );
        m.insert("alpha".into(), self.alpha.to_string());
        m.insert("max_window".into(), self.max_window.to_string());
        m.insert("replicates".into(), self.replicates.to_string());
        m.insert("seed".into(), self.seed.to_string());
        m.insert("glossary_size".into(), self.glossary_size.to_string());
        m.insert("wordcloud_size".into(), self.wordcloud_size.to_string());
        m
    }
}
