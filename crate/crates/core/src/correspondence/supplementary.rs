use super::CaModel;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupplementaryKind {
    /// Profiles over the model's columns, placed among the rows.
    Row,
    /// Profiles over the model's rows, placed among the columns.
    Column,
}

/// Places supplementary profiles in the model's space with the transition
/// formula: `coord_k = Σ_j p_j G_jk / σ_k` for a row profile `p` (and
/// symmetrically for columns). Profiles are normalized to sum to one.
pub fn project_supplementary(
    model: &CaModel,
    kind: SupplementaryKind,
    profiles: &[Vec<f64>],
) -> Result<Vec<Vec<f64>>> {
    let opposite = match kind {
        SupplementaryKind::Row => &model.col_coords,
        SupplementaryKind::Column => &model.row_coords,
    };
    let sigmas: Vec<f64> = (0..model.n_dims_kept)
        .map(|k| model.singular_value(k))
        .collect();

    profiles
        .iter()
        .enumerate()
        .map(|(idx, profile)| {
            if profile.len() != opposite.len() {
                return Err(Error::param(format!(
                    "supplementary profile {} has length {}, expected {}",
                    idx + 1,
                    profile.len(),
                    opposite.len()
                )));
            }
            if profile.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::param(format!(
                    "supplementary profile {} has a negative or non-finite entry",
                    idx + 1
                )));
            }
            let total: f64 = profile.iter().sum();
            if total <= 0.0 {
                return Err(Error::param(format!(
                    "supplementary profile {} sums to zero",
                    idx + 1
                )));
            }
            Ok(sigmas
                .iter()
                .enumerate()
                .map(|(k, sigma)| {
                    profile
                        .iter()
                        .zip(opposite)
                        .map(|(p, g)| p * g[k])
                        .sum::<f64>()
                        / (total * sigma)
                })
                .collect())
        })
        .collect()
}
