//! The non-systematic `t`-block permutation code: permutations are grouped
//! by a syndrome of power sums of their labeled characteristic sets, and
//! every group has minimum block distance at least `2t+1`.

mod decode;
mod labeling;

pub use decode::{decode, decode_traced, reconstruct_permutation, DecodeTrace};
pub use labeling::{LabelingMode, PairLabeling};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::gfq::{smallest_suitable_prime, PrimeField};
use crate::perm::{all_permutations, Permutation};

/// Validated `(N, t, q, labeling)` shared by encoder and decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeParams {
    n: usize,
    t: usize,
    field: PrimeField,
    labeling: PairLabeling,
}

impl CodeParams {
    /// `q` defaults to [`smallest_suitable_prime`] for the labeling mode.
    pub fn new(n: usize, t: usize, mode: LabelingMode, q: Option<u64>) -> Result<Self> {
        if n < 2 {
            return param(format!("code length must be at least 2, got {n}"));
        }
        if t == 0 {
            return param("error budget t must be at least 1");
        }
        let q = q.unwrap_or_else(|| smallest_suitable_prime(n, mode));
        let field = PrimeField::new(q)?;
        if q <= (4 * t - 1) as u64 {
            return param(format!(
                "q={q} must exceed the syndrome length {}",
                4 * t - 1
            ));
        }
        let labeling = PairLabeling::new(mode, n, q)?;
        Ok(CodeParams {
            n,
            t,
            field,
            labeling,
        })
    }

    /// Parameters that correct `t_g` generalized transpositions, i.e. a block
    /// budget of `4·t_g`.
    pub fn for_cayley_errors(
        n: usize,
        t_g: usize,
        mode: LabelingMode,
        q: Option<u64>,
    ) -> Result<Self> {
        CodeParams::new(n, 4 * t_g, mode, q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn q(&self) -> u64 {
        self.field.modulus()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn labeling(&self) -> PairLabeling {
        self.labeling
    }

    /// `4t − 1` power sums.
    pub fn syndrome_len(&self) -> usize {
        4 * self.t - 1
    }
}

/// The first `4t−1` power sums of `ν(π)` over `F_q`; indexes the coset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Syndrome(pub Vec<u64>);

impl Syndrome {
    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn label_pair(pair: (usize, usize), labeling: &PairLabeling) -> Result<u64> {
    labeling.label(pair.0, pair.1)
}

/// `ν(π)`: labels of the adjacent pairs of `π`, in position order.
pub fn nu(pi: &Permutation, labeling: &PairLabeling) -> Result<Vec<u64>> {
    if pi.len() != labeling.n() {
        return param(format!(
            "permutation length {} does not match labeling length {}",
            pi.len(),
            labeling.n()
        ));
    }
    Ok(pi
        .adjacent_pairs()
        .map(|(a, b)| labeling.label_unchecked(a, b))
        .collect())
}

pub fn syndrome(pi: &Permutation, params: &CodeParams) -> Result<Syndrome> {
    let labels = nu(pi, &params.labeling)?;
    Ok(Syndrome(
        params.field.power_sums(&labels, params.syndrome_len()),
    ))
}

/// `S_N` partitioned by syndrome.
#[derive(Debug, Clone)]
pub struct Codebook {
    pub buckets: BTreeMap<Syndrome, Vec<Permutation>>,
    /// Syndrome of the largest bucket; ties go to the smallest syndrome.
    pub best: Syndrome,
}

impl Codebook {
    pub fn best_bucket(&self) -> &[Permutation] {
        &self.buckets[&self.best]
    }

    pub fn total(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }
}

/// Enumerates all of `S_N` and groups it by syndrome. Refuses when
/// `N > cap`.
pub fn enumerate_codebook(params: &CodeParams, cap: usize) -> Result<Codebook> {
    if params.n > cap {
        return Err(Error::Refused(format!(
            "enumerating S_{} exceeds the cap of {cap} (set PERMCODE_ENUM_CAP to override)",
            params.n
        )));
    }
    let mut buckets: BTreeMap<Syndrome, Vec<Permutation>> = BTreeMap::new();
    for pi in all_permutations(params.n) {
        let s = syndrome(&pi, params)?;
        buckets.entry(s).or_default().push(pi);
    }
    let best = buckets
        .iter()
        .fold(None::<(&Syndrome, usize)>, |acc, (s, v)| match acc {
            Some((_, size)) if size >= v.len() => acc,
            _ => Some((s, v.len())),
        })
        .map(|(s, _)| s.clone())
        .expect("S_N is nonempty");
    Ok(Codebook { buckets, best })
}
