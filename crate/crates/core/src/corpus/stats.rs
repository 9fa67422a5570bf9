use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Corpus, MetadataKey};

/// Corpus-level descriptive statistics.
///
/// "Words" are tokens before filtering, "terms" are the tokens that survive
/// stopword removal and stemming. Mean fields are unweighted per-document
/// means and are `None` for an empty corpus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub n_documents: usize,
    pub n_terms_total: usize,
    pub n_terms_mean: Option<f64>,
    pub n_unique_terms_total: usize,
    pub n_unique_terms_mean: Option<f64>,
    pub pct_unique_total: Option<f64>,
    pub pct_unique_mean: Option<f64>,
    pub n_words_total: usize,
    pub n_words_mean: Option<f64>,
    pub avg_word_length: Option<f64>,
    pub category_counts: BTreeMap<MetadataKey, BTreeMap<String, usize>>,
}

/// Percentage of distinct items among `total` occurrences.
pub fn pct_unique(unique: usize, total: usize) -> Option<f64> {
    (total > 0).then(|| 100.0 * unique as f64 / total as f64)
}

fn mean(values: impl ExactSizeIterator<Item = f64>) -> Option<f64> {
    let n = values.len();
    (n > 0).then(|| values.sum::<f64>() / n as f64)
}

pub fn descriptive_stats(corpus: &Corpus) -> StatsReport {
    let tokenized = corpus.tokenized();

    let n_terms: Vec<usize> = tokenized.iter().map(|t| t.terms.len()).collect();
    let n_unique: Vec<usize> = tokenized
        .iter()
        .map(|t| t.terms.iter().collect::<HashSet<_>>().len())
        .collect();
    let n_words: Vec<usize> = tokenized.iter().map(|t| t.words.len()).collect();

    let n_terms_total = n_terms.iter().sum();
    let n_words_total = n_words.iter().sum();
    let n_unique_terms_total = tokenized
        .iter()
        .flat_map(|t| &t.terms)
        .collect::<HashSet<_>>()
        .len();
    let word_chars: usize = tokenized
        .iter()
        .flat_map(|t| &t.words)
        .map(|w| w.chars().count())
        .sum();

    // Documents without any term have no defined unique-term percentage and
    // are left out of that mean.
    let per_doc_pct: Vec<f64> = n_unique
        .iter()
        .zip(&n_terms)
        .filter_map(|(&u, &t)| pct_unique(u, t))
        .collect();

    let mut category_counts: BTreeMap<MetadataKey, BTreeMap<String, usize>> = BTreeMap::new();
    for key in MetadataKey::ALL {
        let tally = category_counts.entry(key).or_default();
        for doc in corpus.documents() {
            *tally.entry(doc.metadata(key)).or_default() += 1;
        }
    }

    StatsReport {
        n_documents: corpus.len(),
        n_terms_total,
        n_terms_mean: mean(n_terms.iter().map(|&v| v as f64)),
        n_unique_terms_total,
        n_unique_terms_mean: mean(n_unique.iter().map(|&v| v as f64)),
        pct_unique_total: pct_unique(n_unique_terms_total, n_terms_total),
        pct_unique_mean: mean(per_doc_pct.into_iter()),
        n_words_total,
        n_words_mean: mean(n_words.iter().map(|&v| v as f64)),
        avg_word_length: (n_words_total > 0).then(|| word_chars as f64 / n_words_total as f64),
        category_counts,
    }
}
