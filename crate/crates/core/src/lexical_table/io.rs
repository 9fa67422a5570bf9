//! Sparse triplet export with a JSON sidecar.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::LexicalTable;
use crate::error::{Error, Result};

/// Ordering and provenance that the triplet file alone cannot carry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSidecar {
    pub doc_ids: Vec<String>,
    pub vocabulary: Vec<String>,
    pub grand_total: u64,
    pub provenance: Vec<String>,
}

/// Writes `doc_id,term,count` triplets to `triplets` and the sidecar JSON
/// to `sidecar`.
pub fn write_table(table: &LexicalTable, triplets: &Path, sidecar: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(triplets).map_err(|e| csv_err(triplets, e))?;
    w.write_record(["doc_id", "term", "count"])
        .map_err(|e| csv_err(triplets, e))?;
    for (id, row) in table.doc_ids().iter().zip(table.rows()) {
        for &(j, c) in row {
            w.write_record([id.as_str(), table.vocabulary()[j].as_str(), &c.to_string()])
                .map_err(|e| csv_err(triplets, e))?;
        }
    }
    w.flush().map_err(|e| Error::io(triplets, e))?;

    let meta = TableSidecar {
        doc_ids: table.doc_ids().to_vec(),
        vocabulary: table.vocabulary().to_vec(),
        grand_total: table.grand_total(),
        provenance: table.provenance().to_vec(),
    };
    let json = serde_json::to_string_pretty(&meta).expect("sidecar serializes");
    std::fs::write(sidecar, json + "\n").map_err(|e| Error::io(sidecar, e))
}

pub fn read_table(triplets: &Path, sidecar: &Path) -> Result<LexicalTable> {
    let text = std::fs::read_to_string(sidecar).map_err(|e| Error::io(sidecar, e))?;
    let meta: TableSidecar = serde_json::from_str(&text).map_err(|e| Error::Format {
        path: sidecar.to_path_buf(),
        record: 0,
        message: e.to_string(),
    })?;

    let doc_index: HashMap<&str, usize> = meta
        .doc_ids
        .iter()
        .enumerate()
        .map(|(i, d)| (d.as_str(), i))
        .collect();
    let term_index: HashMap<&str, usize> = meta
        .vocabulary
        .iter()
        .enumerate()
        .map(|(j, t)| (t.as_str(), j))
        .collect();

    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); meta.doc_ids.len()];
    let mut r = csv::Reader::from_path(triplets).map_err(|e| csv_err(triplets, e))?;
    for (idx, rec) in r.records().enumerate() {
        let record = idx + 1;
        let fmt = |message: String| Error::Format {
            path: triplets.to_path_buf(),
            record,
            message,
        };
        let rec = rec.map_err(|e| fmt(e.to_string()))?;
        if rec.len() != 3 {
            return Err(fmt(format!("expected 3 fields, found {}", rec.len())));
        }
        let i = *doc_index
            .get(&rec[0])
            .ok_or_else(|| fmt(format!("unknown document `{}`", &rec[0])))?;
        let j = *term_index
            .get(&rec[1])
            .ok_or_else(|| fmt(format!("unknown term `{}`", &rec[1])))?;
        let c: u64 = rec[2]
            .parse()
            .map_err(|_| fmt(format!("bad count `{}`", &rec[2])))?;
        rows[i].push((j, c));
    }
    for row in &mut rows {
        row.sort_unstable();
    }

    let table = LexicalTable::from_parts(meta.doc_ids, meta.vocabulary, rows, meta.provenance)
        .map_err(|e| Error::Format {
            path: triplets.to_path_buf(),
            record: 0,
            message: e.to_string(),
        })?;
    if table.grand_total() != meta.grand_total {
        return Err(Error::Format {
            path: triplets.to_path_buf(),
            record: 0,
            message: format!(
                "grand total {} disagrees with sidecar {}",
                table.grand_total(),
                meta.grand_total
            ),
        });
    }
    Ok(table)
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::Format {
            path: path.to_path_buf(),
            record: 0,
            message: format!("{other:?}"),
        },
    }
}
