//! Exact hypergeometric tail probabilities.
//!
//! With `N` total occurrences, `K` occurrences of the word, `n` occurrences
//! in the part and `x` occurrences of the word in the part,
//!
//! ```text
//! h(x) = C(K, x) C(N - K, n - x) / C(N, n)
//! ```
//!
//! on the support `max(0, n + K - N) ..= min(n, K)`. Terms are evaluated
//! relative to the mode via the ratio recurrence
//! `h(x + 1) / h(x) = (K - x)(n - x) / ((x + 1)(N - K - n + x + 1))`, so no
//! binomial coefficient is ever formed. A tail that lies entirely on one
//! side of the mode is accumulated in log space from its inner end so that
//! very small p-values do not underflow prematurely.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Margins of the 2 × 2 table behind one word/part test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionCounts {
    /// Total occurrences in the whole table.
    pub n_grand: u64,
    /// Occurrences in the part.
    pub n_part: u64,
    /// Occurrences of the word in the whole table.
    pub n_word: u64,
    /// Occurrences of the word in the part.
    pub n_word_part: u64,
}

impl PartitionCounts {
    pub fn new(n_grand: u64, n_part: u64, n_word: u64, n_word_part: u64) -> Result<Self> {
        let c = Self {
            n_grand,
            n_part,
            n_word,
            n_word_part,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn support(&self) -> (u64, u64) {
        let lo = (self.n_part + self.n_word).saturating_sub(self.n_grand);
        let hi = self.n_part.min(self.n_word);
        (lo, hi)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_part > self.n_grand || self.n_word > self.n_grand {
            return Err(Error::param(format!(
                "margins exceed grand total: {self:?}"
            )));
        }
        let (lo, hi) = self.support();
        if self.n_word_part < lo || self.n_word_part > hi {
            return Err(Error::param(format!(
                "count {} outside hypergeometric support {lo}..={hi}: {self:?}",
                self.n_word_part
            )));
        }
        Ok(())
    }

    /// Compares the word's share of the part with its share of the whole.
    pub fn representation(&self) -> Representation {
        let in_part = self.n_word_part as u128 * self.n_grand as u128;
        let overall = self.n_word as u128 * self.n_part as u128;
        match in_part.cmp(&overall) {
            std::cmp::Ordering::Greater => Representation::Over,
            std::cmp::Ordering::Less => Representation::Under,
            std::cmp::Ordering::Equal => Representation::Neutral,
        }
    }
}

/// Which tail to sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// `P(X >= x)`.
    Over,
    /// `P(X <= x)`.
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Over,
    Under,
    Neutral,
}

impl Representation {
    pub fn as_str(self) -> &'static str {
        match self {
            Representation::Over => "over",
            Representation::Under => "under",
            Representation::Neutral => "neutral",
        }
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

struct Hypergeometric {
    n_grand: f64,
    n_part: f64,
    n_word: f64,
    lo: u64,
    hi: u64,
    mode: u64,
}

impl Hypergeometric {
    fn new(c: &PartitionCounts) -> Self {
        let (lo, hi) = c.support();
        let raw_mode =
            ((c.n_part as u128 + 1) * (c.n_word as u128 + 1) / (c.n_grand as u128 + 2)) as u64;
        Self {
            n_grand: c.n_grand as f64,
            n_part: c.n_part as f64,
            n_word: c.n_word as f64,
            lo,
            hi,
            mode: raw_mode.clamp(lo, hi),
        }
    }

    /// `h(x + 1) / h(x)` for `lo <= x < hi`.
    fn up(&self, x: u64) -> f64 {
        let x = x as f64;
        ((self.n_word - x) * (self.n_part - x))
            / ((x + 1.0) * (self.n_grand - self.n_word - self.n_part + x + 1.0))
    }

    /// `h(x - 1) / h(x)` for `lo < x <= hi`.
    fn down(&self, x: u64) -> f64 {
        1.0 / self.up(x - 1)
    }

    /// Sum of all terms relative to `h(mode) = 1`.
    fn total(&self) -> f64 {
        let mut sum = CompensatedSum::default();
        sum.add(1.0);
        self.walk(self.mode, true, |t| sum.add(t));
        self.walk(self.mode, false, |t| sum.add(t));
        sum.value()
    }

    /// Visits terms strictly beyond `from` (relative to `h(from) = 1`),
    /// moving upward or downward, until they become negligible.
    fn walk(&self, from: u64, upward: bool, mut visit: impl FnMut(f64)) -> f64 {
        let mut acc = 1.0;
        let mut sum = 1.0;
        let mut x = from;
        loop {
            if upward {
                if x >= self.hi {
                    break;
                }
                acc *= self.up(x);
                x += 1;
            } else {
                if x <= self.lo {
                    break;
                }
                acc *= self.down(x);
                x -= 1;
            }
            if acc == 0.0 || acc < sum * 1e-20 {
                break;
            }
            sum += acc;
            visit(acc);
        }
        sum
    }

    /// `ln(h(x) / h(mode))`.
    fn ln_relative(&self, x: u64) -> f64 {
        let mut ln = CompensatedSum::default();
        if x > self.mode {
            for y in self.mode..x {
                ln.add(self.up(y).ln());
            }
        } else {
            for y in (x + 1..=self.mode).rev() {
                ln.add(self.down(y).ln());
            }
        }
        ln.value()
    }

    /// Tail that starts at `x` and moves away from the mode, relative to
    /// `h(mode)`, returned as a natural logarithm.
    fn ln_far_tail(&self, x: u64, upward: bool) -> f64 {
        let mut inner = CompensatedSum::default();
        inner.add(1.0);
        self.walk(x, upward, |t| inner.add(t));
        self.ln_relative(x) + inner.value().ln()
    }
}

/// One-sided hypergeometric p-value for the observed `n_word_part`.
///
/// `Tail::Over` sums `x >= n_word_part` up to `min(n_part, n_word)`;
/// `Tail::Under` sums from the support minimum `max(0, n_part + n_word -
/// n_grand)` up to `x <= n_word_part`.
pub fn hypergeom_tail(counts: &PartitionCounts, tail: Tail) -> Result<f64> {
    counts.validate()?;
    let h = Hypergeometric::new(counts);
    let x = counts.n_word_part;
    if h.lo == h.hi {
        return Ok(1.0);
    }

    let (far_side, complement_start) = match tail {
        Tail::Over => (x > h.mode, x.checked_sub(1).filter(|&c| c >= h.lo)),
        Tail::Under => (x < h.mode, Some(x + 1).filter(|&c| c <= h.hi)),
    };
    let ln_total = h.total().ln();
    let upward = tail == Tail::Over;

    let p = if far_side {
        (h.ln_far_tail(x, upward) - ln_total).exp()
    } else {
        // The tail holds the mode; subtract the (far) complement instead.
        match complement_start {
            None => 1.0,
            Some(c) => 1.0 - (h.ln_far_tail(c, !upward) - ln_total).exp(),
        }
    };
    Ok(p.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(n: u64, nj: u64, ni: u64, nij: u64) -> PartitionCounts {
        PartitionCounts::new(n, nj, ni, nij).unwrap()
    }

    #[test]
    fn worked_examples() {
        let p = hypergeom_tail(&pc(10, 5, 4, 4), Tail::Over).unwrap();
        assert!((p - 6.0 / 252.0).abs() < 1e-15);
        let p = hypergeom_tail(&pc(10, 5, 4, 2), Tail::Over).unwrap();
        assert!((p - 186.0 / 252.0).abs() < 1e-15);
    }

    #[test]
    fn support_minimum_under_tail_is_single_term() {
        // n_ij = 0 with n.j + n_i. <= n..: C(6, 5) / C(10, 5)
        let p = hypergeom_tail(&pc(10, 5, 4, 0), Tail::Under).unwrap();
        assert!((p - 6.0 / 252.0).abs() < 1e-15);
        // Lower bound above zero: N=10, n=8, K=5 -> support 3..=5.
        // h(3) = C(5,3) C(5,5) / C(10,8) = 10 / 45
        let p = hypergeom_tail(&pc(10, 8, 5, 3), Tail::Under).unwrap();
        assert!((p - 10.0 / 45.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_support() {
        assert_eq!(hypergeom_tail(&pc(10, 10, 4, 4), Tail::Over).unwrap(), 1.0);
        assert_eq!(hypergeom_tail(&pc(10, 0, 4, 0), Tail::Under).unwrap(), 1.0);
        assert_eq!(hypergeom_tail(&pc(0, 0, 0, 0), Tail::Over).unwrap(), 1.0);
    }

    #[test]
    fn invalid_counts_are_rejected() {
        assert!(PartitionCounts::new(10, 11, 4, 0).is_err());
        assert!(PartitionCounts::new(10, 5, 4, 5).is_err());
        assert!(PartitionCounts::new(10, 8, 5, 2).is_err());
        let bad = PartitionCounts {
            n_grand: 10,
            n_part: 5,
            n_word: 4,
            n_word_part: 5,
        };
        assert!(hypergeom_tail(&bad, Tail::Over).is_err());
    }

    #[test]
    fn representation_uses_exact_cross_products() {
        assert_eq!(pc(10, 5, 4, 3).representation(), Representation::Over);
        assert_eq!(pc(10, 5, 4, 2).representation(), Representation::Neutral);
        assert_eq!(pc(10, 5, 4, 1).representation(), Representation::Under);
    }

    #[test]
    fn tiny_p_values_do_not_vanish_early() {
        // Every occurrence of the word falls inside a part holding ~10% of
        // the corpus: p = prod_k (18543 - k) / (185437 - k), about 1e-150.
        let c = pc(185_437, 18_543, 150, 150);
        let p = hypergeom_tail(&c, Tail::Over).unwrap();
        let expected_ln: f64 = (0..150)
            .map(|k| ((18_543 - k) as f64 / (185_437 - k) as f64).ln())
            .sum();
        assert!((p.ln() - expected_ln).abs() < 1e-9, "{p}");
        // Beyond the f64 range the result is zero, not NaN.
        let p = hypergeom_tail(&pc(185_437, 18_543, 400, 400), Tail::Over).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn large_margins_complementarity() {
        let (n, nj, ni) = (120_340, 12_000, 1_850);
        for nij in [100, 150, 184, 185, 186, 200, 260] {
            let over = hypergeom_tail(&pc(n, nj, ni, nij), Tail::Over).unwrap();
            let under = hypergeom_tail(&pc(n, nj, ni, nij - 1), Tail::Under).unwrap();
            assert!(
                (over + under - 1.0).abs() < 1e-12,
                "{nij}: {over} + {under}"
            );
        }
    }
}
