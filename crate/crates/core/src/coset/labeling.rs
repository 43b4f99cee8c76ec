use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// How ordered pairs `(i, j)`, `i ≠ j`, are mapped into `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelingMode {
    /// `υ(i,j) = (i−1)(N−1) + (j−1) − [j > i]`, a bijection onto
    /// `0..N²−N`.
    Compact,
    /// `υ(i,j) = N(i−1) + (j−1) mod q`. Injective once `q ≥ N²−1`.
    Paper,
}

impl std::str::FromStr for LabelingMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "compact" => Ok(LabelingMode::Compact),
            "paper" | "paper-compat" => Ok(LabelingMode::Paper),
            other => Err(format!(
                "unknown labeling {other:?}, expected compact or paper"
            )),
        }
    }
}

/// A concrete pair labeling for length `n` over `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairLabeling {
    mode: LabelingMode,
    n: usize,
    q: u64,
}

impl PairLabeling {
    /// Both modes need `q ≥ N²−N`. The paper labeling is accepted below
    /// `N²−1` so the published `N=10, q=97` vectors can be reproduced; check
    /// [`PairLabeling::is_injective`] before relying on it elsewhere.
    pub fn new(mode: LabelingMode, n: usize, q: u64) -> Result<Self> {
        if n < 2 {
            return param(format!("pair labeling needs N ≥ 2, got {n}"));
        }
        let pairs = (n * n - n) as u64;
        if q < pairs {
            return param(format!("q={q} is smaller than the {pairs} ordered pairs"));
        }
        Ok(PairLabeling { mode, n, q })
    }

    pub fn mode(&self) -> LabelingMode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_injective(&self) -> bool {
        match self.mode {
            LabelingMode::Compact => true,
            LabelingMode::Paper => self.q >= (self.n * self.n - 1) as u64,
        }
    }

    pub fn label(&self, i: usize, j: usize) -> Result<u64> {
        let n = self.n;
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return param(format!(
                "({i},{j}) is not an ordered pair of distinct symbols of 1..={n}"
            ));
        }
        Ok(self.label_unchecked(i, j))
    }

    pub(crate) fn label_unchecked(&self, i: usize, j: usize) -> u64 {
        let n = self.n as u64;
        let (i, j) = (i as u64, j as u64);
        match self.mode {
            LabelingMode::Compact => (i - 1) * (n - 1) + (j - 1) - u64::from(j > i),
            LabelingMode::Paper => (n * (i - 1) + (j - 1)) % self.q,
        }
    }

    /// Every pair whose label is `label`. Empty for unused field elements;
    /// more than one entry only for a non-injective paper labeling.
    pub fn pairs_for(&self, label: u64) -> Vec<(usize, usize)> {
        let n = self.n as u64;
        match self.mode {
            LabelingMode::Compact => {
                if label >= n * n - n {
                    return Vec::new();
                }
                let i = label / (n - 1) + 1;
                let r = label % (n - 1);
                let j = if r + 1 < i { r + 1 } else { r + 2 };
                vec![(i as usize, j as usize)]
            }
            LabelingMode::Paper => {
                let mut out = Vec::new();
                let mut v = label;
                while v < n * n {
                    let (i, j) = (v / n + 1, v % n + 1);
                    if i != j {
                        out.push((i as usize, j as usize));
                    }
                    v += self.q;
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn paper_labels() {
        let l = PairLabeling::new(LabelingMode::Paper, 10, 97).unwrap();
        assert_eq!(l.label(8, 6).unwrap(), 75);
        assert!(!l.is_injective());
        // the one collision at q = 97
        assert_eq!(l.label(10, 9).unwrap(), l.label(1, 2).unwrap());
        assert_eq!(l.pairs_for(1), vec![(1, 2), (10, 9)]);
        assert!(PairLabeling::new(LabelingMode::Paper, 10, 101)
            .unwrap()
            .is_injective());
    }

    #[test]
    fn compact_is_a_bijection() {
        let l = PairLabeling::new(LabelingMode::Compact, 10, 97).unwrap();
        assert_eq!(l.label(1, 2).unwrap(), 0);
        let mut seen = BTreeSet::new();
        for i in 1..=10 {
            for j in 1..=10 {
                if i != j {
                    let v = l.label(i, j).unwrap();
                    assert!(seen.insert(v));
                    assert_eq!(l.pairs_for(v), vec![(i, j)]);
                }
            }
        }
        assert_eq!(seen, (0..90).collect());
        assert!(l.pairs_for(90).is_empty());
    }

    #[test]
    fn rejects_bad_pairs_and_small_moduli() {
        let l = PairLabeling::new(LabelingMode::Compact, 5, 23).unwrap();
        assert!(l.label(3, 3).is_err());
        assert!(l.label(0, 1).is_err());
        assert!(l.label(1, 6).is_err());
        assert!(PairLabeling::new(LabelingMode::Compact, 5, 19).is_err());
    }
}
