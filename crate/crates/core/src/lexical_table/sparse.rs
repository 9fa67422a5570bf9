use serde::{Deserialize, Serialize};

use super::LexicalTable;
use crate::error::{Error, Result};

/// Sparsity parameter `S` in (0, 1), held as the exact decimal fraction
/// the caller wrote.
///
/// A term is kept iff the fraction of documents in which it is absent is at
/// most `S`. The comparison is done in integers so that boundary cases such
/// as `S = 0.7` on ten documents do not flip through binary rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityThreshold {
    numerator: u128,
    denominator: u128,
}

impl SparsityThreshold {
    /// Exact rational `numerator / denominator`.
    pub fn from_ratio(numerator: u128, denominator: u128) -> Result<Self> {
        if denominator == 0 || numerator == 0 || numerator >= denominator {
            return Err(Error::param(format!(
                "sparse parameter {numerator}/{denominator} is outside (0, 1)"
            )));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    /// Parses a plain decimal such as `0.9631`.
    pub fn parse_decimal(text: &str) -> Result<Self> {
        let bad = || {
            Error::param(format!(
                "sparse parameter `{text}` is not a decimal in (0, 1)"
            ))
        };
        let text = text.trim();
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > 30 {
            return Err(bad());
        }
        let int: u128 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        if int != 0 {
            return Err(bad());
        }
        let numerator: u128 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        Self::from_ratio(numerator, 10u128.pow(frac.len() as u32)).map_err(|_| bad())
    }

    /// Converts through the shortest decimal that round-trips `value`, so
    /// `0.7_f64` is treated as exactly 7/10.
    pub fn from_f64(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::param(format!(
                "sparse parameter {value} is outside (0, 1)"
            )));
        }
        Self::parse_decimal(&format!("{value}"))
    }

    pub fn as_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// `(n_docs - df) / n_docs <= S`, evaluated exactly.
    pub fn retains(&self, df: usize, n_docs: usize) -> bool {
        let absent = (n_docs - df) as u128;
        match (
            absent.checked_mul(self.denominator),
            (n_docs as u128).checked_mul(self.numerator),
        ) {
            (Some(lhs), Some(rhs)) => lhs <= rhs,
            _ => (absent as f64) / (n_docs as f64) <= self.as_f64(),
        }
    }
}

/// What the sparse filter removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseFilterReport {
    pub removed_terms: Vec<String>,
    /// Documents whose rows became all-zero; they stay in the table.
    pub emptied_documents: Vec<String>,
}

/// Drops terms whose document sparsity exceeds `threshold`.
pub fn remove_sparse_terms(
    table: &LexicalTable,
    threshold: SparsityThreshold,
) -> Result<(LexicalTable, SparseFilterReport)> {
    if table.is_empty() {
        return Err(Error::Precondition(
            "sparse filter on an empty table".into(),
        ));
    }
    let n_docs = table.n_docs();
    let df = table.doc_freq();

    let mut new_index = vec![None; table.n_terms()];
    let mut vocabulary = Vec::new();
    let mut report = SparseFilterReport::default();
    for (j, term) in table.vocabulary().iter().enumerate() {
        if threshold.retains(df[j], n_docs) {
            new_index[j] = Some(vocabulary.len());
            vocabulary.push(term.clone());
        } else {
            report.removed_terms.push(term.clone());
        }
    }

    let mut grand_total = 0;
    let rows: Vec<Vec<(usize, u64)>> = table
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|&(j, c)| new_index[j].map(|nj| (nj, c)))
                .inspect(|&(_, c)| grand_total += c)
                .collect()
        })
        .collect();
    for (id, (before, after)) in table.doc_ids().iter().zip(table.rows().iter().zip(&rows)) {
        if !before.is_empty() && after.is_empty() {
            report.emptied_documents.push(id.clone());
        }
    }

    let mut provenance = table.provenance().to_vec();
    provenance.push(format!(
        "remove-sparse-terms(S={}/{})",
        threshold.numerator, threshold.denominator
    ));
    let filtered = LexicalTable {
        doc_ids: table.doc_ids().to_vec(),
        vocabulary,
        rows,
        grand_total,
        provenance,
    };
    Ok((filtered, report))
}
