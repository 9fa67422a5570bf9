use std::io::Write;

use super::CaModel;
use crate::error::{Error, Result};

pub fn write_model_json<W: Write>(model: &CaModel, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, model)
        .map_err(|e| Error::Render(format!("model export: {e}")))?;
    out.write_all(b"\n").map_err(|e| Error::io("<model>", e))
}

/// Delimited `kind,label,mass,dim1,...` rows for rows then columns.
pub fn write_coordinates<W: Write>(model: &CaModel, out: W) -> Result<()> {
    let to_err = |e: csv::Error| Error::Render(format!("coordinate export: {e}"));
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["kind".to_string(), "label".into(), "mass".into()];
    header.extend((1..=model.n_dims_kept).map(|k| format!("dim{k}")));
    w.write_record(&header).map_err(to_err)?;

    let sides = [
        (
            "row",
            &model.row_labels,
            &model.row_masses,
            &model.row_coords,
        ),
        (
            "col",
            &model.col_labels,
            &model.col_masses,
            &model.col_coords,
        ),
    ];
    for (kind, labels, masses, coords) in sides {
        for ((label, mass), coord) in labels.iter().zip(masses).zip(coords) {
            let mut rec = vec![kind.to_string(), label.clone(), format!("{mass:.12}")];
            rec.extend(coord.iter().map(|v| format!("{v:.12}")));
            w.write_record(&rec).map_err(to_err)?;
        }
    }
    w.flush().map_err(|e| Error::io("<coordinates>", e))
}
