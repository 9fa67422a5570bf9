use std::io::Write;

use serde::{Deserialize, Serialize};

use super::LexicalTable;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlossaryEntry {
    pub rank: usize,
    pub term: String,
    pub frequency: u64,
}

/// The `k` most frequent terms, ties broken lexicographically.
///
/// Ranks are positions in that order, starting at 1.
pub fn top_terms(table: &LexicalTable, k: usize) -> Vec<GlossaryEntry> {
    let mut freq: Vec<(&String, u64)> = table.vocabulary().iter().zip(table.col_sums()).collect();
    freq.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    freq.into_iter()
        .take(k)
        .enumerate()
        .map(|(i, (term, frequency))| GlossaryEntry {
            rank: i + 1,
            term: term.clone(),
            frequency,
        })
        .collect()
}

/// Writes `rank,term,frequency` rows with a header.
pub fn write_glossary<W: Write>(entries: &[GlossaryEntry], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let to_err = |e: csv::Error| Error::Render(format!("glossary export: {e}"));
    w.write_record(["rank", "term", "frequency"])
        .map_err(to_err)?;
    for e in entries {
        w.write_record([e.rank.to_string(), e.term.clone(), e.frequency.to_string()])
            .map_err(to_err)?;
    }
    w.flush().map_err(|e| Error::io("<glossary>", e))
}
