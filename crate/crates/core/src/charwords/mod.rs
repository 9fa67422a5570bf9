//! Characteristic and chronological words.
//!
//! A word is characteristic of a part when its count there is improbably
//! high (or low) under a hypergeometric draw of the part's occurrences from
//! the whole table. Chronological words apply the same test to windows of
//! consecutive periods.

mod chronological;
mod export;
mod hypergeom;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexical_table::AggregatedTable;

pub use chronological::{chronological_words, ChronologicalReport, ChronologicalWord};
pub use export::{write_characteristic_csv, write_chronological_csv};
pub use hypergeom::{hypergeom_tail, PartitionCounts, Representation, Tail};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicWord {
    pub term: String,
    pub part: String,
    pub p_value: f64,
    pub direction: Representation,
    pub counts: PartitionCounts,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartWords {
    pub part: String,
    pub words: Vec<CharacteristicWord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicReport {
    pub alpha: f64,
    /// Number of (term, part) tests performed, for external multiplicity
    /// adjustment.
    pub n_tests: usize,
    pub parts: Vec<PartWords>,
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("alpha {alpha} is outside (0, 1)")))
    }
}

/// Tests one word against one part, choosing the tail by comparing the
/// word's share of the part with its overall share. Neutral cases get
/// `p = 1`.
pub fn test_word(counts: PartitionCounts) -> Result<(Representation, f64)> {
    let direction = counts.representation();
    let p = match direction {
        Representation::Over => hypergeom_tail(&counts, Tail::Over)?,
        Representation::Under => hypergeom_tail(&counts, Tail::Under)?,
        Representation::Neutral => 1.0,
    };
    Ok((direction, p))
}

pub(crate) fn sort_by_p<T>(items: &mut [T], key: impl Fn(&T) -> (f64, &str)) {
    items.sort_by(|a, b| {
        let (pa, ta) = key(a);
        let (pb, tb) = key(b);
        pa.total_cmp(&pb).then_with(|| ta.cmp(tb))
    });
}

/// Characteristic words of every part (column) of `agg` at level `alpha`.
///
/// Both over- and under-represented words are reported, each part's list
/// sorted by p-value and then term.
pub fn characteristic_words(agg: &AggregatedTable, alpha: f64) -> Result<CharacteristicReport> {
    check_alpha(alpha)?;
    let parts = (0..agg.n_categories())
        .into_par_iter()
        .map(|j| {
            let mut words = Vec::new();
            for i in 0..agg.n_terms() {
                let counts = PartitionCounts::new(
                    agg.grand_total,
                    agg.column_totals[j],
                    agg.row_totals[i],
                    agg.counts[i][j],
                )?;
                let (direction, p_value) = test_word(counts)?;
                if direction != Representation::Neutral && p_value <= alpha {
                    words.push(CharacteristicWord {
                        term: agg.vocabulary[i].clone(),
                        part: agg.categories[j].clone(),
                        p_value,
                        direction,
                        counts,
                    });
                }
            }
            sort_by_p(&mut words, |w| (w.p_value, w.term.as_str()));
            Ok(PartWords {
                part: agg.categories[j].clone(),
                words,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacteristicReport {
        alpha,
        n_tests: agg.n_terms() * agg.n_categories(),
        parts,
    })
}
