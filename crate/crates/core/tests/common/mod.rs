//! Reference implementations used to check the library. None of them call
//! into the crate's numerical code.
#![allow(dead_code)]

use std::path::PathBuf;

use textometry::corpus::{Corpus, RawDocument, TextNormalizer};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// descending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

/// Standardized residual matrix of a count table.
pub fn standardized_residuals(counts: &[Vec<u64>]) -> Vec<Vec<f64>> {
    let n: f64 = counts.iter().flatten().map(|&v| v as f64).sum();
    let r: Vec<f64> = counts
        .iter()
        .map(|row| row.iter().sum::<u64>() as f64 / n)
        .collect();
    let m = counts[0].len();
    let c: Vec<f64> = (0..m)
        .map(|j| counts.iter().map(|row| row[j]).sum::<u64>() as f64 / n)
        .collect();
    counts
        .iter()
        .enumerate()
        .map(|(i, row)| {
            (0..m)
                .map(|j| (row[j] as f64 / n - r[i] * c[j]) / (r[i] * c[j]).sqrt())
                .collect()
        })
        .collect()
}

pub fn gram(s: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = s.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|k| s[i].iter().zip(&s[k]).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect()
}

/// Pearson chi-square statistic of a count table.
pub fn chi_square(counts: &[Vec<u64>]) -> f64 {
    let n: f64 = counts.iter().flatten().map(|&v| v as f64).sum();
    let m = counts[0].len();
    let rows: Vec<f64> = counts
        .iter()
        .map(|row| row.iter().sum::<u64>() as f64)
        .collect();
    let cols: Vec<f64> = (0..m)
        .map(|j| counts.iter().map(|row| row[j] as f64).sum())
        .collect();
    let mut chi2 = 0.0;
    for (i, row) in counts.iter().enumerate() {
        for j in 0..m {
            let e = rows[i] * cols[j] / n;
            chi2 += (row[j] as f64 - e).powi(2) / e;
        }
    }
    chi2
}

/// Binomial coefficients `C(n, k)` for `n <= max` as exact integers.
pub struct Binomials(Vec<Vec<u128>>);

impl Binomials {
    pub fn new(max: usize) -> Self {
        let mut t = vec![vec![0u128; max + 1]; max + 1];
        for n in 0..=max {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            }
        }
        Self(t)
    }

    pub fn get(&self, n: u64, k: u64) -> u128 {
        if k > n {
            0
        } else {
            self.0[n as usize][k as usize]
        }
    }

    /// Exact `(P(X >= x), P(X <= x))` for a hypergeometric count, as ratios
    /// of integers converted once to floating point.
    pub fn tails(&self, n: u64, nj: u64, ni: u64, x: u64) -> (f64, f64) {
        let lo = (nj + ni).saturating_sub(n);
        let hi = nj.min(ni);
        let term = |y: u64| self.get(ni, y) * self.get(n - ni, nj - y);
        let total = self.get(n, nj);
        let over: u128 = (x..=hi).map(term).sum();
        let under: u128 = (lo..=x).map(term).sum();
        (ratio(over, total), ratio(under, total))
    }
}

fn ratio(num: u128, den: u128) -> f64 {
    // Reduce first so both operands convert to f64 with at most one rounding.
    let g = gcd(num, den);
    (num / g) as f64 / (den / g) as f64
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Document frequencies of each column of a dense documents × terms table.
pub fn document_frequencies(dense: &[Vec<u64>]) -> Vec<usize> {
    let m = dense.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| dense.iter().filter(|row| row[j] > 0).count())
        .collect()
}

/// Whether a term with `df` of `n_docs` documents survives sparsity `s`
/// written as a decimal string: `df >= (1 - s) * n_docs`, in integers.
pub fn sparse_keeps(df: usize, n_docs: usize, s: &str) -> bool {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    assert_eq!(int.trim_start_matches('0'), "", "sparsity below one");
    let scale = 10u128.pow(frac.len() as u32);
    let a: u128 = if frac.is_empty() {
        0
    } else {
        frac.parse().unwrap()
    };
    df as u128 * scale >= (scale - a) * n_docs as u128
}

pub fn raw(id: &str, year: i32, text: &str) -> RawDocument {
    RawDocument {
        id: id.into(),
        title: String::new(),
        first_author: String::new(),
        country: String::new(),
        university: String::new(),
        year,
        text: text.into(),
    }
}

pub fn identity_corpus(docs: Vec<RawDocument>) -> Corpus {
    Corpus::new(docs, &TextNormalizer::identity()).unwrap()
}
