use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::LexicalTable;
use crate::corpus::{Corpus, MetadataKey};
use crate::error::{Error, Result};

/// Term × category counts, e.g. words × years.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregatedTable {
    pub key: Option<MetadataKey>,
    pub vocabulary: Vec<String>,
    pub categories: Vec<String>,
    /// `counts[i][j]` is the count of term `i` in category `j`.
    pub counts: Vec<Vec<u64>>,
    pub row_totals: Vec<u64>,
    pub column_totals: Vec<u64>,
    pub grand_total: u64,
}

impl AggregatedTable {
    /// Builds the table and its marginals from a dense term × category matrix.
    pub fn new(
        key: Option<MetadataKey>,
        vocabulary: Vec<String>,
        categories: Vec<String>,
        counts: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if counts.len() != vocabulary.len() {
            return Err(Error::param("aggregated table row count mismatch"));
        }
        if counts.iter().any(|r| r.len() != categories.len()) {
            return Err(Error::param("aggregated table column count mismatch"));
        }
        if key == Some(MetadataKey::Year) {
            let years = categories
                .iter()
                .map(|c| c.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::param("year categories must be integers"))?;
            if years.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::param("year categories must be strictly increasing"));
            }
        }
        let row_totals: Vec<u64> = counts.iter().map(|r| r.iter().sum()).collect();
        let mut column_totals = vec![0; categories.len()];
        for row in &counts {
            for (t, &c) in column_totals.iter_mut().zip(row) {
                *t += c;
            }
        }
        let grand_total = row_totals.iter().sum();
        Ok(Self {
            key,
            vocabulary,
            categories,
            counts,
            row_totals,
            column_totals,
            grand_total,
        })
    }

    pub fn n_terms(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn n_categories(&self) -> usize {
        self.categories.len()
    }

    /// Counts of term `term` summed over the category columns in `cols`,
    /// together with the summed column total.
    pub fn merged(&self, term: usize, cols: std::ops::Range<usize>) -> (u64, u64) {
        let n_ij = self.counts[term][cols.clone()].iter().sum();
        let n_j = self.column_totals[cols].iter().sum();
        (n_ij, n_j)
    }

    /// Categories with no occurrences at all.
    pub fn empty_categories(&self) -> Vec<&str> {
        self.categories
            .iter()
            .zip(&self.column_totals)
            .filter(|(_, &t)| t == 0)
            .map(|(c, _)| c.as_str())
            .collect()
    }
}

fn category_order(key: MetadataKey, values: &mut [String]) {
    if key == MetadataKey::Year {
        values.sort_by_key(|v| v.parse::<i64>().unwrap_or(i64::MAX));
    } else {
        values.sort();
    }
}

/// Sums document rows sharing the same value of `key`.
pub fn aggregate_by_category(
    table: &LexicalTable,
    corpus: &Corpus,
    key: MetadataKey,
) -> Result<AggregatedTable> {
    let meta: HashMap<&str, String> = corpus
        .documents()
        .iter()
        .map(|d| (d.id.as_str(), d.metadata(key)))
        .collect();
    let doc_values = table
        .doc_ids()
        .iter()
        .map(|id| {
            meta.get(id.as_str())
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("document `{id}` is not in the corpus")))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut categories: Vec<String> = doc_values
        .iter()
        .cloned()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    category_order(key, &mut categories);
    let position: BTreeMap<&str, usize> = categories
        .iter()
        .enumerate()
        .map(|(j, c)| (c.as_str(), j))
        .collect();
    let labels: Vec<usize> = doc_values.iter().map(|v| position[v.as_str()]).collect();

    aggregate_by_labels(table, &labels, categories, Some(key))
}

/// Aggregates with an explicit document → category-index assignment.
pub fn aggregate_by_labels(
    table: &LexicalTable,
    labels: &[usize],
    categories: Vec<String>,
    key: Option<MetadataKey>,
) -> Result<AggregatedTable> {
    if labels.len() != table.n_docs() {
        return Err(Error::param("one label per document is required"));
    }
    let mut counts = vec![vec![0u64; categories.len()]; table.n_terms()];
    for (row, &label) in table.rows().iter().zip(labels) {
        if label >= categories.len() {
            return Err(Error::param(format!("category index {label} out of range")));
        }
        for &(term, c) in row {
            counts[term][label] += c;
        }
    }
    AggregatedTable::new(key, table.vocabulary().to_vec(), categories, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexical_table::build_lexical_table;
    use crate::lexical_table::test_support::corpus;

    #[test]
    fn single_year_column_sums() {
        let c = corpus(&[("d1", 2005, "a b a"), ("d2", 2005, "b c")]);
        let t = build_lexical_table(&c);
        let agg = aggregate_by_category(&t, &c, MetadataKey::Year).unwrap();
        assert_eq!(agg.categories, ["2005"]);
        assert_eq!(agg.counts, vec![vec![2], vec![2], vec![1]]);
        assert_eq!(agg.column_totals, [5]);
        assert_eq!(agg.grand_total, 5);
    }

    #[test]
    fn per_document_categories_transpose_the_table() {
        let c = corpus(&[("d1", 2005, "a b a"), ("d2", 2006, "b c")]);
        let t = build_lexical_table(&c);
        let agg = aggregate_by_category(&t, &c, MetadataKey::Year).unwrap();
        let dense = t.to_dense();
        for (i, row) in agg.counts.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, dense[j][i]);
            }
        }
    }

    #[test]
    fn years_sorted_chronologically() {
        let c = corpus(&[("a", 2010, "x"), ("b", 1999, "y"), ("c", 2005, "x y")]);
        let t = build_lexical_table(&c);
        let agg = aggregate_by_category(&t, &c, MetadataKey::Year).unwrap();
        assert_eq!(agg.categories, ["1999", "2005", "2010"]);
    }

    #[test]
    fn equal_row_sums_give_equal_column_totals() {
        let c = corpus(&[("a", 2005, "x y"), ("b", 2006, "y z")]);
        let t = build_lexical_table(&c);
        let agg = aggregate_by_category(&t, &c, MetadataKey::Year).unwrap();
        assert_eq!(agg.column_totals[0], agg.column_totals[1]);
    }

    #[test]
    fn marginals_conserved_for_other_keys() {
        let c = corpus(&[("a", 2005, "x y x"), ("b", 2006, "y z"), ("c", 2007, "z")]);
        let t = build_lexical_table(&c);
        let agg = aggregate_by_category(&t, &c, MetadataKey::Author).unwrap();
        assert_eq!(agg.grand_total, t.grand_total());
        assert_eq!(agg.column_totals.iter().sum::<u64>(), t.grand_total());
        assert_eq!(agg.row_totals, t.col_sums());
    }

    #[test]
    fn rejects_non_increasing_years() {
        assert!(AggregatedTable::new(
            Some(MetadataKey::Year),
            vec!["a".into()],
            vec!["2006".into(), "2005".into()],
            vec![vec![1, 1]],
        )
        .is_err());
    }

    #[test]
    fn merged_window() {
        let agg = AggregatedTable::new(
            None,
            vec!["a".into(), "b".into()],
            vec!["p".into(), "q".into(), "r".into()],
            vec![vec![1, 2, 3], vec![4, 0, 6]],
        )
        .unwrap();
        assert_eq!(agg.merged(0, 1..3), (5, 11));
        assert_eq!(agg.merged(1, 0..1), (4, 5));
    }
}
