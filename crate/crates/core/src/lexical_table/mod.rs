//! Document × term count tables and the transformations applied to them
//! before analysis.

mod aggregate;
mod glossary;
mod io;
mod sparse;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;

pub use aggregate::{aggregate_by_category, aggregate_by_labels, AggregatedTable};
pub use glossary::{top_terms, write_glossary, GlossaryEntry};
pub use io::{read_table, write_table, TableSidecar};
pub use sparse::{remove_sparse_terms, SparseFilterReport, SparsityThreshold};

/// Sparse nonnegative count matrix with documents as rows and terms as
/// columns.
///
/// Rows are stored as `(column, count)` pairs sorted by column with no
/// zero counts. Vocabulary is kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexicalTable {
    doc_ids: Vec<String>,
    vocabulary: Vec<String>,
    rows: Vec<Vec<(usize, u64)>>,
    grand_total: u64,
    provenance: Vec<String>,
}

impl LexicalTable {
    /// Assembles a table from parts, checking every structural invariant.
    pub fn from_parts(
        doc_ids: Vec<String>,
        vocabulary: Vec<String>,
        rows: Vec<Vec<(usize, u64)>>,
        provenance: Vec<String>,
    ) -> crate::Result<Self> {
        use crate::Error;
        if rows.len() != doc_ids.len() {
            return Err(Error::param("row count does not match document ids"));
        }
        if doc_ids.iter().collect::<BTreeSet<_>>().len() != doc_ids.len() {
            return Err(Error::param("document ids are not distinct"));
        }
        if vocabulary.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param(
                "vocabulary must be distinct and lexicographically sorted",
            ));
        }
        let mut col_seen = vec![false; vocabulary.len()];
        let mut grand_total = 0;
        for row in &rows {
            if row.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::param("row entries must be sorted by column"));
            }
            for &(j, c) in row {
                if j >= vocabulary.len() {
                    return Err(Error::param(format!("column index {j} out of range")));
                }
                if c == 0 {
                    return Err(Error::param("explicit zero entry in sparse row"));
                }
                col_seen[j] = true;
                grand_total += c;
            }
        }
        if let Some(j) = col_seen.iter().position(|s| !s) {
            return Err(Error::param(format!(
                "term `{}` never occurs",
                vocabulary[j]
            )));
        }
        Ok(Self {
            doc_ids,
            vocabulary,
            rows,
            grand_total,
            provenance,
        })
    }

    pub fn n_docs(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn n_terms(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc_ids.is_empty()
    }

    pub fn doc_ids(&self) -> &[String] {
        &self.doc_ids
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocabulary
    }

    pub fn grand_total(&self) -> u64 {
        self.grand_total
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn row(&self, i: usize) -> &[(usize, u64)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<(usize, u64)>] {
        &self.rows
    }

    pub fn get(&self, doc: usize, term: usize) -> u64 {
        let row = &self.rows[doc];
        row.binary_search_by_key(&term, |&(j, _)| j)
            .map_or(0, |k| row[k].1)
    }

    pub fn term_index(&self, term: &str) -> Option<usize> {
        self.vocabulary
            .binary_search_by(|t| t.as_str().cmp(term))
            .ok()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&(_, c)| c).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        let mut sums = vec![0; self.n_terms()];
        for row in &self.rows {
            for &(j, c) in row {
                sums[j] += c;
            }
        }
        sums
    }

    /// Number of documents in which each term occurs.
    pub fn doc_freq(&self) -> Vec<usize> {
        let mut df = vec![0; self.n_terms()];
        for row in &self.rows {
            for &(j, _) in row {
                df[j] += 1;
            }
        }
        df
    }

    /// Ids of documents whose row is entirely zero.
    pub fn zero_rows(&self) -> Vec<&str> {
        self.doc_ids
            .iter()
            .zip(&self.rows)
            .filter(|(_, r)| r.is_empty())
            .map(|(id, _)| id.as_str())
            .collect()
    }

    /// A copy without all-zero rows.
    pub fn without_zero_rows(&self) -> LexicalTable {
        let (doc_ids, rows) = self
            .doc_ids
            .iter()
            .zip(&self.rows)
            .filter(|(_, r)| !r.is_empty())
            .map(|(id, r)| (id.clone(), r.clone()))
            .unzip();
        let mut provenance = self.provenance.clone();
        provenance.push("drop-zero-rows".into());
        LexicalTable {
            doc_ids,
            vocabulary: self.vocabulary.clone(),
            rows,
            grand_total: self.grand_total,
            provenance,
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| {
                let mut dense = vec![0; self.n_terms()];
                for &(j, c) in r {
                    dense[j] = c;
                }
                dense
            })
            .collect()
    }
}

/// Counts term occurrences per document.
///
/// An empty corpus yields a 0 × 0 table.
pub fn build_lexical_table(corpus: &Corpus) -> LexicalTable {
    let vocabulary: Vec<String> = corpus
        .tokenized()
        .iter()
        .flat_map(|t| t.terms.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&str, usize> = vocabulary
        .iter()
        .enumerate()
        .map(|(j, t)| (t.as_str(), j))
        .collect();

    let mut grand_total = 0;
    let rows = corpus
        .tokenized()
        .iter()
        .map(|doc| {
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            for term in &doc.terms {
                *counts.entry(index[term.as_str()]).or_default() += 1;
            }
            grand_total += doc.terms.len() as u64;
            counts.into_iter().collect()
        })
        .collect();

    let p = corpus.provenance();
    LexicalTable {
        doc_ids: corpus.tokenized().iter().map(|t| t.id.clone()).collect(),
        vocabulary,
        rows,
        grand_total,
        provenance: vec![format!(
            "lexical-table(stoplist={}, stems={}, {})",
            p.stoplist, p.stems, p.tokenizer
        )],
    }
}
