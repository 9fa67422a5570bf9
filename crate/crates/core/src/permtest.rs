//! Permutation test for the first eigenvalue of the words × years table.
//!
//! Under the null hypothesis the year labels are exchangeable across
//! documents. Each replicate shuffles the document → year assignment (the
//! multiset of labels, so per-year document counts are kept), re-aggregates
//! the lexical table and records the first correspondence-analysis
//! eigenvalue. Replicate `r` draws from its own ChaCha stream of the run seed, so
//! results do not depend on how replicates are scheduled across threads.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, MetadataKey};
use crate::correspondence::{ca_eigenvalues, ContingencyTable};
use crate::error::{Error, Result};
use crate::lexical_table::{aggregate_by_labels, LexicalTable};

pub const DEFAULT_REPLICATES: usize = 1999;

/// Reshuffles allowed per replicate when a permutation leaves a year with
/// no occurrences.
pub const MAX_RETRIES: usize = 100;

/// Replicates within this distance below the observed value count as ties.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermTestResult {
    pub observed_lambda1: f64,
    pub replicate_lambda1: Vec<f64>,
    /// `(1 + #{replicates >= observed}) / (R + 1)`.
    pub p_value: f64,
    pub n_replicates: usize,
    pub seed: u64,
    pub alternative: String,
    pub categories: Vec<String>,
    /// Total reshuffles caused by degenerate permutations.
    pub retries: usize,
}

impl PermTestResult {
    /// Equal-width histogram of the replicate eigenvalues.
    pub fn histogram(&self, bins: usize) -> Histogram {
        let bins = bins.max(1);
        let lo = self
            .replicate_lambda1
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .replicate_lambda1
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if lo.is_finite() && hi > lo {
            (lo, hi)
        } else {
            (0.0, 1.0)
        };
        let width = (hi - lo) / bins as f64;
        let edges = (0..=bins).map(|k| lo + width * k as f64).collect();
        let mut counts = vec![0; bins];
        for &v in &self.replicate_lambda1 {
            let k = (((v - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
        Histogram { edges, counts }
    }
}

fn first_eigenvalue(
    table: &LexicalTable,
    labels: &[usize],
    categories: &[String],
) -> Result<Option<f64>> {
    let agg = aggregate_by_labels(table, labels, categories.to_vec(), None)?;
    if agg.column_totals.contains(&0) {
        return Ok(None);
    }
    let values = ca_eigenvalues(&ContingencyTable::from_aggregated(&agg))?;
    Ok(Some(values.first().copied().unwrap_or(0.0)))
}

/// Stream for attempt `attempt` of replicate `replicate`. Attempts occupy
/// the high bits so retries never collide with another replicate's stream.
fn replicate_rng(seed: u64, replicate: usize, attempt: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((attempt as u64) << 48) | replicate as u64);
    rng
}

/// Permutation test on explicit document labels (`labels[i]` indexes
/// `categories` for row `i` of `table`).
pub fn permutation_test(
    table: &LexicalTable,
    labels: &[usize],
    categories: &[String],
    n_replicates: usize,
    seed: u64,
) -> Result<PermTestResult> {
    if n_replicates == 0 {
        return Err(Error::param("at least one replicate is required"));
    }
    if table.n_terms() < 2 {
        return Err(Error::Precondition(
            "permutation test needs at least two terms".into(),
        ));
    }
    let mut distinct = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Precondition(
            "permutation test needs at least two distinct periods".into(),
        ));
    }

    let observed = first_eigenvalue(table, labels, categories)?.ok_or_else(|| {
        Error::Precondition("a period has no occurrences in the observed table".into())
    })?;

    let replicates: Vec<(f64, usize)> = (0..n_replicates)
        .into_par_iter()
        .map(|r| {
            for attempt in 0..=MAX_RETRIES {
                let mut shuffled = labels.to_vec();
                shuffled.shuffle(&mut replicate_rng(seed, r, attempt));
                if let Some(lambda) = first_eigenvalue(table, &shuffled, categories)? {
                    return Ok((lambda, attempt));
                }
            }
            Err(Error::Precondition(format!(
                "replicate {r}: every one of {} permutations left a period empty",
                MAX_RETRIES + 1
            )))
        })
        .collect::<Result<_>>()?;

    let replicate_lambda1: Vec<f64> = replicates.iter().map(|&(l, _)| l).collect();
    let retries = replicates.iter().map(|&(_, a)| a).sum();
    let exceed = replicate_lambda1
        .iter()
        .filter(|&&l| l >= observed - TIE_TOLERANCE)
        .count();
    Ok(PermTestResult {
        observed_lambda1: observed,
        p_value: (1 + exceed) as f64 / (n_replicates + 1) as f64,
        replicate_lambda1,
        n_replicates,
        seed,
        alternative: "greater".into(),
        categories: categories.to_vec(),
        retries,
    })
}

/// Tests whether the first eigenvalue of the table aggregated by `key`
/// exceeds what random reassignment of `key` values to documents produces.
pub fn first_eigenvalue_test(
    corpus: &Corpus,
    table: &LexicalTable,
    key: MetadataKey,
    n_replicates: usize,
    seed: u64,
) -> Result<PermTestResult> {
    let meta: HashMap<&str, String> = corpus
        .documents()
        .iter()
        .map(|d| (d.id.as_str(), d.metadata(key)))
        .collect();
    let values = table
        .doc_ids()
        .iter()
        .map(|id| {
            meta.get(id.as_str())
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("document `{id}` is not in the corpus")))
        })
        .collect::<Result<Vec<_>>>()?;

    // Same category order as `aggregate_by_category`.
    let mut categories: Vec<String> = values.clone();
    categories.sort();
    categories.dedup();
    if key == MetadataKey::Year {
        categories.sort_by_key(|v| v.parse::<i64>().unwrap_or(i64::MAX));
    }
    let index: BTreeMap<&str, usize> = categories
        .iter()
        .enumerate()
        .map(|(j, c)| (c.as_str(), j))
        .collect();
    let labels: Vec<usize> = values.iter().map(|v| index[v.as_str()]).collect();

    permutation_test(table, &labels, &categories, n_replicates, seed)
}
