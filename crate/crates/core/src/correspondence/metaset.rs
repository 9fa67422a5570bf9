use std::fmt;

use serde::{Deserialize, Serialize};

use super::CaModel;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn matches(self, coordinate: f64) -> bool {
        match self {
            Sign::Positive => coordinate > 0.0,
            Sign::Negative => coordinate < 0.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// Which side of the table a metaset is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetaKind {
    /// Columns: words.
    Metakey,
    /// Rows: documents.
    Metadoc,
}

impl fmt::Display for MetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetaKind::Metakey => "metakey",
            MetaKind::Metadoc => "metadoc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetaMember {
    pub id: String,
    pub contribution: f64,
    pub coordinate: f64,
}

/// High-contribution items lying on one signed half of an axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetaSet {
    /// Zero-based axis index.
    pub axis: usize,
    pub sign: Sign,
    pub kind: MetaKind,
    pub threshold_multiplier: f64,
    /// `threshold_multiplier / n_items`; members strictly exceed it.
    pub cutoff: f64,
    pub members: Vec<MetaMember>,
}

impl MetaSet {
    pub fn label(&self) -> String {
        format!("{}{} dim {}", self.kind, self.sign.symbol(), self.axis + 1)
    }
}

/// Items whose contribution to `axis` exceeds `multiplier` times the
/// average contribution `1 / n_items` and whose coordinate has `sign`.
///
/// Members are sorted by contribution, largest first.
pub fn extract_metaset(
    model: &CaModel,
    axis: usize,
    kind: MetaKind,
    sign: Sign,
    multiplier: f64,
) -> Result<MetaSet> {
    if axis >= model.n_dims_kept {
        return Err(Error::param(format!(
            "axis {} out of range: model keeps {} dimensions",
            axis + 1,
            model.n_dims_kept
        )));
    }
    if !(multiplier > 0.0 && multiplier.is_finite()) {
        return Err(Error::param(format!(
            "multiplier {multiplier} must be positive"
        )));
    }
    let (labels, contrib, coords) = match kind {
        MetaKind::Metadoc => (&model.row_labels, &model.row_contrib, &model.row_coords),
        MetaKind::Metakey => (&model.col_labels, &model.col_contrib, &model.col_coords),
    };
    let cutoff = multiplier / labels.len() as f64;
    let mut members: Vec<MetaMember> = labels
        .iter()
        .zip(contrib.iter().zip(coords))
        .filter(|(_, (ctr, crd))| ctr[axis] > cutoff && sign.matches(crd[axis]))
        .map(|(id, (ctr, crd))| MetaMember {
            id: id.clone(),
            contribution: ctr[axis],
            coordinate: crd[axis],
        })
        .collect();
    members.sort_by(|a, b| {
        b.contribution
            .total_cmp(&a.contribution)
            .then_with(|| a.id.cmp(&b.id))
    });
    Ok(MetaSet {
        axis,
        sign,
        kind,
        threshold_multiplier: multiplier,
        cutoff,
        members,
    })
}
