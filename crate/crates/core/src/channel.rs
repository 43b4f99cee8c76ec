//! Seeded error channels.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Result};
use crate::perm::{is_minimal, make_transposition, GeneralizedTransposition, Permutation};

/// A reproducible RNG for `seed`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generalized transposition drawn uniformly from all valid index tuples.
pub fn random_transposition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GeneralizedTransposition {
    assert!(n >= 2, "generalized transpositions need N ≥ 2");
    loop {
        let g = GeneralizedTransposition::new(
            rng.gen_range(1..=n),
            rng.gen_range(1..=n),
            rng.gen_range(1..=n),
            rng.gen_range(1..=n),
        );
        if g.is_valid_for(n) {
            return g;
        }
    }
}

/// Applies `t` random generalized transpositions on the right of `pi`.
pub fn channel_cayley_with<R: Rng + ?Sized>(
    pi: &Permutation,
    t: usize,
    rng: &mut R,
) -> Result<Permutation> {
    if t > 0 && pi.len() < 2 {
        return param("generalized transpositions need N ≥ 2");
    }
    let mut out = pi.clone();
    for _ in 0..t {
        let phi = make_transposition(pi.len(), random_transposition(pi.len(), rng))?;
        out = out.compose(&phi)?;
    }
    Ok(out)
}

pub fn channel_cayley(pi: &Permutation, t: usize, seed: u64) -> Result<Permutation> {
    channel_cayley_with(pi, t, &mut seeded_rng(seed))
}

/// A uniformly random minimal permutation of length `n`, by rejection.
pub fn random_minimal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut order: Vec<usize> = (1..=n).collect();
    loop {
        order.shuffle(rng);
        let candidate = Permutation::from_vec_unchecked(order.clone());
        if is_minimal(&candidate) {
            return candidate;
        }
    }
}

/// Cuts `pi` into `d + 1` random nonempty blocks and reorders them by a
/// random minimal block permutation, so the result is within block distance
/// `d` of `pi`.
pub fn channel_block_with<R: Rng + ?Sized>(
    pi: &Permutation,
    d: usize,
    rng: &mut R,
) -> Result<Permutation> {
    let n = pi.len();
    if d >= n {
        return param(format!("block channel needs d < N, got d={d}, N={n}"));
    }
    if d == 0 {
        return Ok(pi.clone());
    }
    let mut cuts: Vec<usize> = sample(rng, n - 1, d).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    let mut bounds = Vec::with_capacity(d + 2);
    bounds.push(0);
    bounds.extend(cuts);
    bounds.push(n);
    let entries = pi.as_slice();
    let blocks: Vec<&[usize]> = bounds.windows(2).map(|w| &entries[w[0]..w[1]]).collect();
    let order = random_minimal(d + 1, rng);
    let out: Vec<usize> = order
        .as_slice()
        .iter()
        .flat_map(|&b| blocks[b - 1].iter().copied())
        .collect();
    Ok(Permutation::from_vec_unchecked(out))
}

pub fn channel_block(pi: &Permutation, d: usize, seed: u64) -> Result<Permutation> {
    channel_block_with(pi, d, &mut seeded_rng(seed))
}

/// A uniformly random permutation of length `n`.
pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::from_vec_unchecked(v)
}
