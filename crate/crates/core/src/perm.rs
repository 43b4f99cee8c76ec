//! Permutations in one-line notation and the block permutation metric.
//!
//! A permutation of length `N` is stored as `(σ(1), …, σ(N))` with 1-based
//! symbols. Composition follows `(σ∘π)(i) = σ(π(i))`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};

/// A bijection on `{1, …, N}`, `N ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.entries
    }
}

impl Permutation {
    /// Validates that `entries` is a bijection on `{1, …, entries.len()}`.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return param("permutation must have length at least 1");
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n {
                return param(format!("symbol {v} out of range 1..={n}"));
            }
            if seen[v] {
                return param(format!("symbol {v} appears twice"));
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.entries
    }

    /// `σ(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { entries: inv }
    }

    /// Returns `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return param(format!(
                "cannot compose permutations of lengths {} and {}",
                self.len(),
                other.len()
            ));
        }
        Ok(Permutation {
            entries: other.entries.iter().map(|&j| self.entries[j - 1]).collect(),
        })
    }

    /// Adjacent pairs `(π(i), π(i+1))` in position order.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.windows(2).map(|w| (w[0], w[1]))
    }

    /// `successor[v]` is the symbol following `v`, or 0 for the last symbol.
    pub(crate) fn successors(&self) -> Vec<usize> {
        let mut succ = vec![0; self.len() + 1];
        for (a, b) in self.adjacent_pairs() {
            succ[a] = b;
        }
        succ
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The generalized transposition `φ(i1, j1, i2, j2)`: swaps the segments at
/// positions `i1..=j1` and `i2..=j2`, with `1 ≤ i1 ≤ j1 < i2 ≤ j2 ≤ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralizedTransposition {
    pub i1: usize,
    pub j1: usize,
    pub i2: usize,
    pub j2: usize,
}

impl GeneralizedTransposition {
    pub fn new(i1: usize, j1: usize, i2: usize, j2: usize) -> Self {
        GeneralizedTransposition { i1, j1, i2, j2 }
    }

    pub fn is_valid_for(&self, n: usize) -> bool {
        1 <= self.i1
            && self.i1 <= self.j1
            && self.j1 < self.i2
            && self.i2 <= self.j2
            && self.j2 <= n
    }

    /// Every generalized transposition on length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<GeneralizedTransposition> {
        let mut out = Vec::new();
        for i1 in 1..=n {
            for j1 in i1..=n {
                for i2 in j1 + 1..=n {
                    for j2 in i2..=n {
                        out.push(GeneralizedTransposition { i1, j1, i2, j2 });
                    }
                }
            }
        }
        out
    }
}

/// Builds `φ(i1, j1, i2, j2)` as a permutation of length `n`.
pub fn make_transposition(n: usize, g: GeneralizedTransposition) -> Result<Permutation> {
    if !g.is_valid_for(n) {
        return param(format!(
            "generalized transposition ({},{},{},{}) invalid for N={n}",
            g.i1, g.j1, g.i2, g.j2
        ));
    }
    let mut entries = Vec::with_capacity(n);
    entries.extend(1..g.i1);
    entries.extend(g.i2..=g.j2);
    entries.extend(g.j1 + 1..g.i2);
    entries.extend(g.i1..=g.j1);
    entries.extend(g.j2 + 1..=n);
    Ok(Permutation { entries })
}

/// The characteristic set `A(π)`: all ordered adjacent pairs of `π`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacteristicSet {
    pairs: BTreeSet<(usize, usize)>,
}

impl CharacteristicSet {
    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: (usize, usize)) -> bool {
        self.pairs.contains(&pair)
    }

    /// Number of pairs of `self` missing from `other`.
    pub fn difference_count(&self, other: &CharacteristicSet) -> usize {
        self.pairs.difference(&other.pairs).count()
    }
}

pub fn characteristic_set(pi: &Permutation) -> CharacteristicSet {
    CharacteristicSet {
        pairs: pi.adjacent_pairs().collect(),
    }
}

/// Block permutation distance, computed as `|A(π1) \ A(π2)|`.
pub fn block_distance(pi1: &Permutation, pi2: &Permutation) -> Result<usize> {
    if pi1.len() != pi2.len() {
        return param(format!(
            "block distance needs equal lengths, got {} and {}",
            pi1.len(),
            pi2.len()
        ));
    }
    // (a, b) ∈ A(π2) iff succ2[a] == b, so no set needs to be built.
    let succ2 = pi2.successors();
    Ok(pi1.adjacent_pairs().filter(|&(a, b)| succ2[a] != b).count())
}

/// Number of breakpoints: adjacent pairs `(a, b)` with `b ≠ a + 1`.
pub fn block_weight(pi: &Permutation) -> usize {
    pi.adjacent_pairs().filter(|&(a, b)| b != a + 1).count()
}

/// True iff no two adjacent entries are increasing consecutive integers.
pub fn is_minimal(pi: &Permutation) -> bool {
    block_weight(pi) + 1 == pi.len()
}

/// Lexicographic successor in place; returns false after the last permutation.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Iterates over all of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> AllPermutations {
    AllPermutations {
        current: Some((1..=n).collect()),
    }
}

pub struct AllPermutations {
    current: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(Permutation { entries: cur })
    }
}
