use std::io::Write;

use super::{CharacteristicReport, ChronologicalReport, PartitionCounts, Representation};
use crate::error::{Error, Result};

const HEADER: [&str; 8] = [
    "term",
    "part_or_window",
    "direction",
    "n_ij",
    "n_i",
    "n_j",
    "n",
    "p_value",
];

fn record(term: &str, part: &str, dir: Representation, c: &PartitionCounts, p: f64) -> [String; 8] {
    [
        term.to_string(),
        part.to_string(),
        dir.as_str().to_string(),
        c.n_word_part.to_string(),
        c.n_word.to_string(),
        c.n_part.to_string(),
        c.n_grand.to_string(),
        format!("{p:e}"),
    ]
}

fn to_err(e: csv::Error) -> Error {
    Error::Render(format!("report export: {e}"))
}

pub fn write_characteristic_csv<W: Write>(report: &CharacteristicReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER).map_err(to_err)?;
    for part in &report.parts {
        for cw in &part.words {
            w.write_record(record(
                &cw.term,
                &cw.part,
                cw.direction,
                &cw.counts,
                cw.p_value,
            ))
            .map_err(to_err)?;
        }
    }
    w.flush().map_err(|e| Error::io("<charwords>", e))
}

pub fn write_chronological_csv<W: Write>(report: &ChronologicalReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER).map_err(to_err)?;
    for cw in &report.words {
        w.write_record(record(
            &cw.term,
            &cw.window_label(),
            cw.direction,
            &cw.counts,
            cw.p_value,
        ))
        .map_err(to_err)?;
    }
    w.flush().map_err(|e| Error::io("<chrono>", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charwords::characteristic_words;
    use crate::lexical_table::AggregatedTable;

    #[test]
    fn csv_layout() {
        let agg = AggregatedTable::new(
            None,
            vec!["a".into(), "b".into()],
            vec!["P1".into(), "P2".into()],
            vec![vec![9, 1], vec![1, 9]],
        )
        .unwrap();
        let r = characteristic_words(&agg, 0.05).unwrap();
        let mut buf = Vec::new();
        write_characteristic_csv(&r, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "term,part_or_window,direction,n_ij,n_i,n_j,n,p_value"
        );
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..7], ["a", "P1", "over", "9", "10", "10", "20"]);
        let p: f64 = first[7].parse().unwrap();
        assert_eq!(p, r.parts[0].words[0].p_value);
    }
}
