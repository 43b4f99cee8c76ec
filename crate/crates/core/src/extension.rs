//! Extensions `E(π, S)`, truncations `T(σ, U)` and the set-valued
//! comparisons (Hamming sets, jump sets) used by the systematic code.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::perm::Permutation;

/// Marks an anchor that could not be recovered from a received word.
pub const SENTINEL: usize = 0;

/// Anchor symbols for the inserted redundancy symbols `N+1, …, N+K`.
///
/// Transmitted sequences hold anchors in `1..=N`; sequences recovered from a
/// corrupted word may hold [`SENTINEL`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtensionSequence(pub Vec<usize>);

impl ExtensionSequence {
    pub fn new(values: Vec<usize>) -> Self {
        ExtensionSequence(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn has_sentinel(&self) -> bool {
        self.0.contains(&SENTINEL)
    }
}

fn check_anchors(n: usize, s: &[usize]) -> Result<()> {
    for &a in s {
        if a == SENTINEL || a > n {
            return param(format!("anchor {a} is not a symbol of 1..={n}"));
        }
    }
    Ok(())
}

fn insert_after(seq: &mut Vec<usize>, anchor: usize, symbol: usize) {
    let k = seq
        .iter()
        .position(|&v| v == anchor)
        .expect("anchor present");
    seq.insert(k + 1, symbol);
}

/// Inserts `N+1, …, N+|S|` after the anchors `s_1, …, s_|S|` in turn.
pub fn extend(pi: &Permutation, s: &ExtensionSequence) -> Result<Permutation> {
    let n = pi.len();
    check_anchors(n, s.values())?;
    let mut seq = pi.as_slice().to_vec();
    seq.reserve(s.len());
    for (m, &anchor) in s.values().iter().enumerate() {
        insert_after(&mut seq, anchor, n + m + 1);
    }
    Ok(Permutation::from_vec_unchecked(seq))
}

/// Removes every symbol of `u` from `sigma`, keeping the order of the rest.
pub fn truncate(sigma: &Permutation, u: &BTreeSet<usize>) -> Result<Vec<usize>> {
    if let Some(&bad) = u.iter().find(|&&x| x == 0 || x > sigma.len()) {
        return param(format!("symbol {bad} is not present in the permutation"));
    }
    Ok(sigma
        .as_slice()
        .iter()
        .copied()
        .filter(|v| !u.contains(v))
        .collect())
}

/// Drops all symbols greater than `n`; the result is a permutation of `1..=n`.
pub fn truncate_to(sigma: &Permutation, n: usize) -> Result<Permutation> {
    if n == 0 || n > sigma.len() {
        return param(format!(
            "cannot truncate length {} to length {n}",
            sigma.len()
        ));
    }
    Ok(Permutation::from_vec_unchecked(
        sigma
            .as_slice()
            .iter()
            .copied()
            .filter(|&v| v <= n)
            .collect(),
    ))
}

/// Reads back the anchors of `N+1, …, N+K` from a (possibly corrupted)
/// extension.
///
/// For each `m`, symbols above `N+m` are ignored and `s'_m` is the symbol just
/// before `N+m`. When that symbol is itself a redundancy symbol, or `N+m` is
/// first, the position is reported as [`SENTINEL`].
pub fn recover_extension_sequence(
    sigma_prime: &Permutation,
    n: usize,
    k: usize,
) -> Result<ExtensionSequence> {
    if sigma_prime.len() != n + k {
        return param(format!(
            "expected a permutation of length {}, got {}",
            n + k,
            sigma_prime.len()
        ));
    }
    let seq = sigma_prime.as_slice();
    let mut pos = vec![0; n + k + 1];
    for (i, &v) in seq.iter().enumerate() {
        pos[v] = i;
    }
    let values = (1..=k)
        .map(|m| {
            let symbol = n + m;
            seq[..pos[symbol]]
                .iter()
                .rev()
                .find(|&&v| v < symbol)
                .map_or(SENTINEL, |&v| if v <= n { v } else { SENTINEL })
        })
        .collect();
    Ok(ExtensionSequence(values))
}

/// `H(v1, v2) = { v1[m] : v1[m] ≠ v2[m] }`.
pub fn hamming_set(v1: &[usize], v2: &[usize]) -> Result<BTreeSet<usize>> {
    if v1.len() != v2.len() {
        return param(format!(
            "Hamming set needs equal lengths, got {} and {}",
            v1.len(),
            v2.len()
        ));
    }
    Ok(v1
        .iter()
        .zip(v2)
        .filter(|(a, b)| a != b)
        .map(|(&a, _)| a)
        .collect())
}

pub fn hamming_distance(v1: &[usize], v2: &[usize]) -> usize {
    v1.iter().zip(v2).filter(|(a, b)| a != b).count()
}

/// Whether inserting after `s1` in `p1` jumps relative to inserting after
/// `s2` in `p2`: the anchors differ and either one sits last, or their
/// successors differ.
pub fn is_jump_point(p1: &[usize], s1: usize, p2: &[usize], s2: usize) -> bool {
    if s1 == s2 {
        return false;
    }
    let k1 = p1.iter().position(|&v| v == s1).expect("anchor present");
    let k2 = p2.iter().position(|&v| v == s2).expect("anchor present");
    let last = p1.len() - 1;
    k1 == last || k2 == last || p1[k1 + 1] != p2[k2 + 1]
}

/// 1-based indices `m` at which the simultaneous extension of `π1` by `S1`
/// and `π2` by `S2` passes through a jump point.
pub fn jump_set(
    pi1: &Permutation,
    pi2: &Permutation,
    s1: &ExtensionSequence,
    s2: &ExtensionSequence,
) -> Result<BTreeSet<usize>> {
    let n = pi1.len();
    if pi2.len() != n {
        return param("jump set needs permutations of equal length");
    }
    if s1.len() != s2.len() {
        return param("jump set needs extension sequences of equal length");
    }
    check_anchors(n, s1.values())?;
    check_anchors(n, s2.values())?;
    let mut a = pi1.as_slice().to_vec();
    let mut b = pi2.as_slice().to_vec();
    let mut jumps = BTreeSet::new();
    for (m, (&x, &y)) in s1.values().iter().zip(s2.values()).enumerate() {
        if is_jump_point(&a, x, &b, y) {
            jumps.insert(m + 1);
        }
        insert_after(&mut a, x, n + m + 1);
        insert_after(&mut b, y, n + m + 1);
    }
    Ok(jumps)
}
