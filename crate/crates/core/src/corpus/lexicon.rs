//! Stopword lists and stemming dictionaries, plus the term filter built on
//! top of them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact-match set of lowercase word forms to discard.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopwordList {
    entries: BTreeSet<String>,
    source_id: String,
}

impl StopwordList {
    pub fn new<I, S>(entries: I, source_id: impl Into<String>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for entry in entries {
            let entry = entry.as_ref().trim();
            if entry.is_empty() {
                continue;
            }
            if entry.chars().any(char::is_whitespace) {
                return Err(Error::param(format!(
                    "stopword `{entry}` contains whitespace"
                )));
            }
            set.insert(entry.to_lowercase());
        }
        Ok(Self {
            entries: set,
            source_id: source_id.into(),
        })
    }

    pub fn empty() -> Self {
        Self {
            entries: BTreeSet::new(),
            source_id: "none".into(),
        }
    }

    /// One entry per line; blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str, source_id: impl Into<String>) -> Result<Self> {
        Self::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
            source_id,
        )
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.display().to_string())
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(word)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }
}

/// Surface form to root form lookup.
///
/// Construction rejects chains (`a -> b`, `b -> c`): every root is either
/// absent from the key set or maps to itself, so stemming is idempotent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemDictionary {
    mapping: BTreeMap<String, String>,
    source_id: String,
}

impl StemDictionary {
    pub fn new<I, K, V>(pairs: I, source_id: impl Into<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut mapping = BTreeMap::new();
        for (surface, root) in pairs {
            let surface = surface.as_ref().trim().to_lowercase();
            let root = root.as_ref().trim().to_lowercase();
            if surface.is_empty() || root.is_empty() {
                return Err(Error::param(
                    "stem dictionary entry with empty surface or root",
                ));
            }
            if let Some(previous) = mapping.get(&surface) {
                if previous != &root {
                    return Err(Error::param(format!(
                        "stem dictionary maps `{surface}` to both `{previous}` and `{root}`"
                    )));
                }
            }
            mapping.insert(surface, root);
        }
        for root in mapping.values() {
            if let Some(target) = mapping.get(root) {
                if target != root {
                    return Err(Error::param(format!(
                        "stem dictionary is not idempotent: root `{root}` maps to `{target}`"
                    )));
                }
            }
        }
        Ok(Self {
            mapping,
            source_id: source_id.into(),
        })
    }

    /// The identity mapping.
    pub fn identity() -> Self {
        Self {
            mapping: BTreeMap::new(),
            source_id: "identity".into(),
        }
    }

    /// Parses `surface<TAB>root` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str, source_id: impl Into<String>) -> Result<Self> {
        let source_id = source_id.into();
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (surface, root) = line.split_once('\t').ok_or_else(|| Error::Format {
                path: source_id.clone().into(),
                record: lineno + 1,
                message: "expected `surface<TAB>root`".into(),
            })?;
            pairs.push((surface.to_string(), root.to_string()));
        }
        Self::new(pairs, source_id)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.display().to_string())
    }

    pub fn root<'a>(&'a self, word: &'a str) -> &'a str {
        self.mapping.get(word).map_or(word, String::as_str)
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }
}

/// Drops stopwords and maps survivors to their dictionary root.
///
/// A root that is itself a stopword is dropped as well, so no emitted term
/// is ever in `stoplist`.
pub fn preprocess<S: AsRef<str>>(
    words: &[S],
    stoplist: &StopwordList,
    stems: &StemDictionary,
) -> Vec<String> {
    words
        .iter()
        .map(AsRef::as_ref)
        .filter(|w| !stoplist.contains(w))
        .map(|w| stems.root(w))
        .filter(|root| !stoplist.contains(root))
        .map(str::to_string)
        .collect()
}
