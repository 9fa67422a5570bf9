//! Document ingestion, tokenization and term normalization.

mod ingest;
mod lexicon;
mod stats;
mod tokenize;

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ingest::{ingest_corpus, parse_corpus, CorpusFormat};
pub use lexicon::{preprocess, StemDictionary, StopwordList};
pub use stats::{descriptive_stats, pct_unique, StatsReport};
pub use tokenize::{tokenize, TokenizerRules};

pub const DEFAULT_YEAR_RANGE: RangeInclusive<i32> = 1900..=2100;

/// One abstract with its bibliographic metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDocument {
    pub id: String,
    pub title: String,
    pub first_author: String,
    pub country: String,
    pub university: String,
    pub year: i32,
    pub text: String,
}

impl RawDocument {
    pub fn metadata(&self, key: MetadataKey) -> String {
        match key {
            MetadataKey::Year => self.year.to_string(),
            MetadataKey::Author => self.first_author.clone(),
            MetadataKey::Country => self.country.clone(),
            MetadataKey::University => self.university.clone(),
        }
    }
}

/// Categorical metadata a document can be grouped by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetadataKey {
    Year,
    Author,
    Country,
    University,
}

impl MetadataKey {
    pub const ALL: [MetadataKey; 4] = [
        MetadataKey::Year,
        MetadataKey::Author,
        MetadataKey::Country,
        MetadataKey::University,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetadataKey::Year => "year",
            MetadataKey::Author => "author",
            MetadataKey::Country => "country",
            MetadataKey::University => "university",
        }
    }
}

impl fmt::Display for MetadataKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetadataKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "year" => Ok(MetadataKey::Year),
            "author" | "first_author" => Ok(MetadataKey::Author),
            "country" => Ok(MetadataKey::Country),
            "university" => Ok(MetadataKey::University),
            other => Err(Error::param(format!("unknown metadata key `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedDocument {
    pub id: String,
    /// Lowercased tokens before any filtering.
    pub words: Vec<String>,
    /// Tokens after stopword removal and stemming.
    pub terms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub stoplist: String,
    pub stems: String,
    pub tokenizer: String,
}

/// Tokenizer, stoplist and stem dictionary applied together.
#[derive(Clone, Debug, Default)]
pub struct TextNormalizer {
    pub rules: TokenizerRules,
    pub stoplist: StopwordList,
    pub stems: StemDictionary,
}

impl TextNormalizer {
    pub fn new(stoplist: StopwordList, stems: StemDictionary) -> Self {
        Self {
            rules: TokenizerRules::default(),
            stoplist,
            stems,
        }
    }

    /// No stopwords and the identity stem mapping.
    pub fn identity() -> Self {
        Self::new(StopwordList::empty(), StemDictionary::identity())
    }

    pub fn normalize(&self, id: &str, text: &str) -> TokenizedDocument {
        let words = tokenize(text, self.rules);
        let terms = preprocess(&words, &self.stoplist, &self.stems);
        TokenizedDocument {
            id: id.to_string(),
            words,
            terms,
        }
    }

    pub fn provenance(&self) -> Provenance {
        Provenance {
            stoplist: self.stoplist.source_id().to_string(),
            stems: self.stems.source_id().to_string(),
            tokenizer: self.rules.label().to_string(),
        }
    }
}

/// Documents and their tokenized forms, index-aligned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    documents: Vec<RawDocument>,
    tokenized: Vec<TokenizedDocument>,
    provenance: Provenance,
}

impl Corpus {
    /// Validates and tokenizes `documents` with the default year range.
    pub fn new(documents: Vec<RawDocument>, normalizer: &TextNormalizer) -> Result<Self> {
        Self::with_year_range(documents, normalizer, DEFAULT_YEAR_RANGE)
    }

    pub fn with_year_range(
        documents: Vec<RawDocument>,
        normalizer: &TextNormalizer,
        years: RangeInclusive<i32>,
    ) -> Result<Self> {
        let mut seen = HashSet::with_capacity(documents.len());
        for (idx, doc) in documents.iter().enumerate() {
            let record = idx + 1;
            if doc.id.trim().is_empty() {
                return Err(Error::MissingField {
                    record,
                    field: "id".into(),
                });
            }
            if doc.text.trim().is_empty() {
                return Err(Error::MissingField {
                    record,
                    field: "text".into(),
                });
            }
            if !years.contains(&doc.year) {
                return Err(Error::InvalidYear {
                    record,
                    value: doc.year.to_string(),
                });
            }
            if !seen.insert(doc.id.as_str()) {
                return Err(Error::DuplicateId(doc.id.clone()));
            }
        }
        let tokenized = documents
            .iter()
            .map(|d| normalizer.normalize(&d.id, &d.text))
            .collect();
        Ok(Self {
            documents,
            tokenized,
            provenance: normalizer.provenance(),
        })
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn documents(&self) -> &[RawDocument] {
        &self.documents
    }

    pub fn tokenized(&self) -> &[TokenizedDocument] {
        &self.tokenized
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn document(&self, id: &str) -> Option<&RawDocument> {
        self.documents.iter().find(|d| d.id == id)
    }

    /// Iterates `(document, tokenized)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&RawDocument, &TokenizedDocument)> {
        self.documents.iter().zip(&self.tokenized)
    }
}
