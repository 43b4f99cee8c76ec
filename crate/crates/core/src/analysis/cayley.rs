//! Exact generalized Cayley distance by breadth-first search over `S_N`.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{param, Error, Result};
use crate::perm::{make_transposition, GeneralizedTransposition, Permutation};

/// Largest length the oracle accepts.
pub const CAYLEY_ORACLE_CAP: usize = 7;

/// Distance from the identity to every permutation of length `n`.
#[derive(Debug, Clone)]
pub struct CayleyOracle {
    n: usize,
    dist: HashMap<Vec<usize>, usize>,
}

impl CayleyOracle {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > CAYLEY_ORACLE_CAP {
            return Err(Error::Refused(format!(
                "exact generalized Cayley distance is limited to 1 ≤ N ≤ {CAYLEY_ORACLE_CAP}, got {n}"
            )));
        }
        let gens: Vec<Permutation> = GeneralizedTransposition::all(n)
            .into_iter()
            .map(|g| make_transposition(n, g))
            .collect::<Result<_>>()?;
        let start = Permutation::identity(n);
        let mut dist = HashMap::new();
        dist.insert(start.as_slice().to_vec(), 0);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x.as_slice()];
            for g in &gens {
                let y = x.compose(g)?;
                if !dist.contains_key(y.as_slice()) {
                    dist.insert(y.as_slice().to_vec(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        Ok(CayleyOracle { n, dist })
    }

    /// A process-wide oracle for length `n`, built on first use.
    pub fn shared(n: usize) -> Result<&'static CayleyOracle> {
        static CACHE: [OnceLock<CayleyOracle>; CAYLEY_ORACLE_CAP + 1] =
            [const { OnceLock::new() }; CAYLEY_ORACLE_CAP + 1];
        let Some(slot) = CACHE.get(n).filter(|_| n > 0) else {
            return CayleyOracle::new(n).map(|_| unreachable!("length outside the oracle range"));
        };
        if let Some(o) = slot.get() {
            return Ok(o);
        }
        let built = CayleyOracle::new(n)?;
        Ok(slot.get_or_init(|| built))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `d_G(e, π)`.
    pub fn weight(&self, pi: &Permutation) -> Result<usize> {
        if pi.len() != self.n {
            return param(format!(
                "oracle is for N={}, got length {}",
                self.n,
                pi.len()
            ));
        }
        Ok(self.dist[pi.as_slice()])
    }

    /// `d_G(π1, π2) = d_G(e, π1⁻¹∘π2)`.
    pub fn distance(&self, pi1: &Permutation, pi2: &Permutation) -> Result<usize> {
        self.weight(&pi1.inverse().compose(pi2)?)
    }

    /// Number of permutations within distance `t` of any fixed center.
    pub fn ball_size(&self, t: usize) -> usize {
        self.dist.values().filter(|&&d| d <= t).count()
    }

    pub fn diameter(&self) -> usize {
        self.dist.values().copied().max().unwrap_or(0)
    }
}

/// Exact `d_G(π1, π2)` for `N ≤` [`CAYLEY_ORACLE_CAP`].
pub fn dg_exact(pi1: &Permutation, pi2: &Permutation) -> Result<usize> {
    if pi1.len() != pi2.len() {
        return param("permutations of different lengths");
    }
    CayleyOracle::shared(pi1.len())?.distance(pi1, pi2)
}
