//! Correspondence analysis of nonnegative contingency tables.
//!
//! With `P = N / n`, row masses `r`, column masses `c`, the standardized
//! residuals are `S_ij = (P_ij - r_i c_j) / sqrt(r_i c_j)`. The singular
//! value decomposition `S = U Σ Vᵀ` gives eigenvalues `λ_k = σ_k²`, whose sum
//! is the total inertia `χ² / n`, and principal coordinates
//! `F = diag(r)^-1/2 U Σ` for rows and `G = diag(c)^-1/2 V Σ` for columns.

mod export;
mod metaset;
mod supplementary;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexical_table::{AggregatedTable, LexicalTable};

pub use export::{write_coordinates, write_model_json};
pub use metaset::{extract_metaset, MetaKind, MetaMember, MetaSet, Sign};
pub use supplementary::{project_supplementary, SupplementaryKind};

/// Singular values at or below this are numerical noise of an exactly
/// rank-deficient residual matrix.
const SINGULAR_VALUE_FLOOR: f64 = 1e-10;
/// Eigenvalues below this fraction of the first are dropped from the rank.
const RELATIVE_RANK_TOL: f64 = 1e-12;

/// A labelled nonnegative matrix ready for correspondence analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct ContingencyTable {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub counts: DMatrix<f64>,
    pub source: String,
}

impl ContingencyTable {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        counts: DMatrix<f64>,
        source: impl Into<String>,
    ) -> Result<Self> {
        if counts.nrows() != row_labels.len() || counts.ncols() != col_labels.len() {
            return Err(Error::param(format!(
                "{}x{} matrix does not match {} row and {} column labels",
                counts.nrows(),
                counts.ncols(),
                row_labels.len(),
                col_labels.len()
            )));
        }
        if let Some(v) = counts.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::param(format!("count {v} is negative or not finite")));
        }
        Ok(Self {
            row_labels,
            col_labels,
            counts,
            source: source.into(),
        })
    }

    /// Unlabelled table from row-major integer counts.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::param("ragged count matrix"));
        }
        let counts = DMatrix::from_fn(n, m, |i, j| rows[i][j] as f64);
        Self::new(
            (0..n).map(|i| format!("r{}", i + 1)).collect(),
            (0..m).map(|j| format!("c{}", j + 1)).collect(),
            counts,
            "matrix",
        )
    }

    /// Documents as rows, terms as columns.
    pub fn from_lexical(table: &LexicalTable) -> Self {
        let mut counts = DMatrix::zeros(table.n_docs(), table.n_terms());
        for (i, row) in table.rows().iter().enumerate() {
            for &(j, c) in row {
                counts[(i, j)] = c as f64;
            }
        }
        Self {
            row_labels: table.doc_ids().to_vec(),
            col_labels: table.vocabulary().to_vec(),
            counts,
            source: table.provenance().join(" | "),
        }
    }

    /// Terms as rows, categories as columns.
    pub fn from_aggregated(table: &AggregatedTable) -> Self {
        let counts = DMatrix::from_fn(table.n_terms(), table.n_categories(), |i, j| {
            table.counts[i][j] as f64
        });
        Self {
            row_labels: table.vocabulary.clone(),
            col_labels: table.categories.clone(),
            counts,
            source: format!(
                "aggregated-by({})",
                table.key.map_or("labels", |k| k.as_str())
            ),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            counts: self.counts.transpose(),
            source: format!("{} (transposed)", self.source),
        }
    }
}

/// Result of a correspondence analysis.
///
/// Matrices are stored row-major with one inner vector per item and one
/// entry per kept axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaModel {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub grand_total: f64,
    pub row_masses: Vec<f64>,
    pub col_masses: Vec<f64>,
    /// All `min(rows, cols) - 1` eigenvalues, descending, including those
    /// at the numerical noise floor.
    pub eigenvalues: Vec<f64>,
    /// Number of eigenvalues above the noise floor.
    pub rank: usize,
    pub total_inertia: f64,
    pub n_dims_kept: usize,
    pub row_coords: Vec<Vec<f64>>,
    pub col_coords: Vec<Vec<f64>>,
    pub row_contrib: Vec<Vec<f64>>,
    pub col_contrib: Vec<Vec<f64>>,
    pub row_cos2: Vec<Vec<f64>>,
    pub col_cos2: Vec<Vec<f64>>,
    pub source: String,
}

impl CaModel {
    pub fn singular_value(&self, axis: usize) -> f64 {
        self.eigenvalues[axis].sqrt()
    }

    /// Share of total inertia carried by `axis`, in percent.
    pub fn inertia_pct(&self, axis: usize) -> f64 {
        if self.total_inertia > 0.0 {
            100.0 * self.eigenvalues[axis] / self.total_inertia
        } else {
            0.0
        }
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_labels.len()
    }

    /// Principal coordinates of rows on `axis`.
    pub fn row_axis(&self, axis: usize) -> impl Iterator<Item = f64> + '_ {
        self.row_coords.iter().map(move |r| r[axis])
    }

    pub fn col_axis(&self, axis: usize) -> impl Iterator<Item = f64> + '_ {
        self.col_coords.iter().map(move |r| r[axis])
    }
}

struct Residuals {
    grand_total: f64,
    row_masses: Vec<f64>,
    col_masses: Vec<f64>,
    s: DMatrix<f64>,
}

fn standardized_residuals(table: &ContingencyTable) -> Result<Residuals> {
    let counts = &table.counts;
    let grand_total: f64 = counts.iter().sum();
    if grand_total <= 0.0 {
        return Err(Error::Precondition(
            "correspondence analysis needs a positive grand total".into(),
        ));
    }
    let row_masses: Vec<f64> = counts
        .row_iter()
        .map(|r| r.iter().sum::<f64>() / grand_total)
        .collect();
    let col_masses: Vec<f64> = counts
        .column_iter()
        .map(|c| c.iter().sum::<f64>() / grand_total)
        .collect();
    if let Some(i) = row_masses.iter().position(|&m| m <= 0.0) {
        return Err(Error::ZeroMass {
            kind: "row",
            name: table.row_labels[i].clone(),
        });
    }
    if let Some(j) = col_masses.iter().position(|&m| m <= 0.0) {
        return Err(Error::ZeroMass {
            kind: "column",
            name: table.col_labels[j].clone(),
        });
    }
    let s = DMatrix::from_fn(counts.nrows(), counts.ncols(), |i, j| {
        let expected = row_masses[i] * col_masses[j];
        (counts[(i, j)] / grand_total - expected) / expected.sqrt()
    });
    Ok(Residuals {
        grand_total,
        row_masses,
        col_masses,
        s,
    })
}

fn rank_of(eigenvalues: &[f64]) -> usize {
    let first = eigenvalues.first().copied().unwrap_or(0.0);
    eigenvalues
        .iter()
        .take_while(|&&l| l.sqrt() > SINGULAR_VALUE_FLOOR && l > RELATIVE_RANK_TOL * first)
        .count()
}

/// One singular triple of the residual matrix, stored as the eigenvector
/// of the smaller Gram matrix it came from.
struct Axis {
    sigma: f64,
    vector: DVector<f64>,
    /// Whether `vector` is a right (column-side) singular vector.
    right: bool,
}

impl Axis {
    /// Left and right unit singular vectors; only valid for `sigma > 0`.
    fn singular_vectors(&self, s: &DMatrix<f64>) -> (DVector<f64>, DVector<f64>) {
        if self.right {
            let u = (s * &self.vector) / self.sigma;
            (u.normalize(), self.vector.clone())
        } else {
            let v = (s.transpose() * &self.vector) / self.sigma;
            (self.vector.clone(), v.normalize())
        }
    }
}

/// Leading `n_axes` singular triples of `s`, descending, through the
/// symmetric eigendecomposition of `SᵀS` or `SSᵀ`, whichever is smaller.
fn principal_axes(s: &DMatrix<f64>, n_axes: usize) -> Vec<Axis> {
    let right = s.nrows() >= s.ncols();
    let gram = if right {
        s.tr_mul(s)
    } else {
        s * s.transpose()
    };
    let eig = gram.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    order
        .into_iter()
        .take(n_axes)
        .map(|k| Axis {
            sigma: eig.eigenvalues[k].max(0.0).sqrt(),
            vector: eig.eigenvectors.column(k).into_owned(),
            right,
        })
        .collect()
}

/// Eigenvalues only, descending; the cheap path used by resampling.
pub fn ca_eigenvalues(table: &ContingencyTable) -> Result<Vec<f64>> {
    let res = standardized_residuals(table)?;
    let n_axes = res.s.nrows().min(res.s.ncols()).saturating_sub(1);
    // The smaller Gram matrix has the same nonzero spectrum.
    let gram = if res.s.nrows() >= res.s.ncols() {
        res.s.tr_mul(&res.s)
    } else {
        &res.s * res.s.transpose()
    };
    let mut values: Vec<f64> = gram
        .symmetric_eigenvalues()
        .iter()
        .map(|&v| v.max(0.0))
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values.truncate(n_axes);
    Ok(values)
}

/// Fits a correspondence analysis keeping at most `n_dims` axes.
pub fn fit_ca(table: &ContingencyTable, n_dims: usize) -> Result<CaModel> {
    let Residuals {
        grand_total,
        row_masses,
        col_masses,
        s,
    } = standardized_residuals(table)?;
    let (n_rows, n_cols) = s.shape();
    let n_axes = n_rows.min(n_cols).saturating_sub(1);
    let total_inertia = s.norm_squared();

    let axes = principal_axes(&s, n_axes);
    let eigenvalues: Vec<f64> = axes.iter().map(|a| a.sigma * a.sigma).collect();
    let rank = rank_of(&eigenvalues);
    let kept = n_dims.min(rank);

    let mut row_coords = vec![vec![0.0; kept]; n_rows];
    let mut col_coords = vec![vec![0.0; kept]; n_cols];
    let mut row_contrib = vec![vec![0.0; kept]; n_rows];
    let mut col_contrib = vec![vec![0.0; kept]; n_cols];
    for (axis, a) in axes.iter().take(kept).enumerate() {
        let (u, v) = a.singular_vectors(&s);
        let flip = if dominant_loading_sign(v.iter().copied()) < 0.0 {
            -1.0
        } else {
            1.0
        };
        for i in 0..n_rows {
            let uik = flip * u[i];
            row_coords[i][axis] = a.sigma * uik / row_masses[i].sqrt();
            row_contrib[i][axis] = uik * uik;
        }
        for j in 0..n_cols {
            let vjk = flip * v[j];
            col_coords[j][axis] = a.sigma * vjk / col_masses[j].sqrt();
            col_contrib[j][axis] = vjk * vjk;
        }
    }

    // Squared chi-square distance of each profile to the centroid.
    let row_dist2: Vec<f64> = (0..n_rows)
        .map(|i| s.row(i).norm_squared() / row_masses[i])
        .collect();
    let col_dist2: Vec<f64> = (0..n_cols)
        .map(|j| s.column(j).norm_squared() / col_masses[j])
        .collect();

    Ok(CaModel {
        row_labels: table.row_labels.clone(),
        col_labels: table.col_labels.clone(),
        grand_total,
        row_cos2: cos2(&row_coords, &row_dist2),
        col_cos2: cos2(&col_coords, &col_dist2),
        row_masses,
        col_masses,
        eigenvalues,
        rank,
        total_inertia,
        n_dims_kept: kept,
        row_coords,
        col_coords,
        row_contrib,
        col_contrib,
        source: table.source.clone(),
    })
}

/// Sign of the largest-magnitude entry; the first one wins near-ties.
fn dominant_loading_sign(values: impl Iterator<Item = f64>) -> f64 {
    let values: Vec<f64> = values.collect();
    let max = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    values
        .iter()
        .find(|v| v.abs() >= max * (1.0 - 1e-9))
        .map_or(1.0, |v| v.signum())
}

fn cos2(coords: &[Vec<f64>], dist2: &[f64]) -> Vec<Vec<f64>> {
    coords
        .iter()
        .zip(dist2)
        .map(|(row, &d2)| {
            row.iter()
                .map(|&f| if d2 > 0.0 { f * f / d2 } else { 0.0 })
                .collect()
        })
        .collect()
}
