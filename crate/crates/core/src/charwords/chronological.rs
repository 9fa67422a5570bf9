use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{check_alpha, sort_by_p, test_word, PartitionCounts, Representation};
use crate::error::{Error, Result};
use crate::lexical_table::AggregatedTable;

/// A word whose best window of consecutive periods passes the cutoff.
///
/// Windows are selected among those where the word is over-represented, so
/// `direction` is always [`Representation::Over`]; the field is kept so the
/// record lines up with [`super::CharacteristicWord`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChronologicalWord {
    pub term: String,
    /// Index of the first period in the window.
    pub start: usize,
    /// Number of periods in the window.
    pub length: usize,
    /// Labels of the first and last period.
    pub first_period: String,
    pub last_period: String,
    pub p_value: f64,
    pub direction: Representation,
    pub counts: PartitionCounts,
}

impl ChronologicalWord {
    pub fn window_label(&self) -> String {
        if self.length == 1 {
            self.first_period.clone()
        } else {
            format!("{}-{}", self.first_period, self.last_period)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChronologicalReport {
    pub alpha: f64,
    pub max_window: usize,
    pub n_tests: usize,
    pub words: Vec<ChronologicalWord>,
}

/// For each term, tests every window of `1..=max_window` consecutive
/// periods (columns merged into one part) in which the term is
/// over-represented and keeps the window with the smallest p-value. Ties go
/// to the shorter window, then the earlier start. The term is reported iff
/// that p-value is at most `alpha`.
pub fn chronological_words(
    agg: &AggregatedTable,
    max_window: usize,
    alpha: f64,
) -> Result<ChronologicalReport> {
    check_alpha(alpha)?;
    if max_window == 0 {
        return Err(Error::param("max_window must be at least 1"));
    }
    let n_periods = agg.n_categories();
    if n_periods == 0 {
        return Err(Error::param("chronological words need at least one period"));
    }
    let widest = max_window.min(n_periods);
    let n_windows: usize = (1..=widest).map(|w| n_periods - w + 1).sum();

    let best: Vec<Option<ChronologicalWord>> = (0..agg.n_terms())
        .into_par_iter()
        .map(|i| {
            let mut best: Option<ChronologicalWord> = None;
            for length in 1..=widest {
                for start in 0..=n_periods - length {
                    let (n_ij, n_j) = agg.merged(i, start..start + length);
                    let counts =
                        PartitionCounts::new(agg.grand_total, n_j, agg.row_totals[i], n_ij)?;
                    let (direction, p_value) = test_word(counts)?;
                    if direction != Representation::Over {
                        continue;
                    }
                    if best.as_ref().is_none_or(|b| p_value < b.p_value) {
                        best = Some(ChronologicalWord {
                            term: agg.vocabulary[i].clone(),
                            start,
                            length,
                            first_period: agg.categories[start].clone(),
                            last_period: agg.categories[start + length - 1].clone(),
                            p_value,
                            direction,
                            counts,
                        });
                    }
                }
            }
            Ok(best.filter(|b| b.p_value <= alpha))
        })
        .collect::<Result<_>>()?;

    let mut words: Vec<ChronologicalWord> = best.into_iter().flatten().collect();
    sort_by_p(&mut words, |w| (w.p_value, w.term.as_str()));
    Ok(ChronologicalReport {
        alpha,
        max_window: widest,
        n_tests: n_windows * agg.n_terms(),
        words,
    })
}
