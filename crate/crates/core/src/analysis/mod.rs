//! Bound calculators and brute-force oracles for small lengths.
//!
//! Logarithms are base 2 throughout.

mod cayley;

pub use cayley::{dg_exact, CayleyOracle, CAYLEY_ORACLE_CAP};

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::perm::{all_permutations, block_distance, Permutation};

/// Which metric a report or check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Block,
    Cayley,
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "block" => Ok(Metric::Block),
            "cayley" => Ok(Metric::Cayley),
            other => Err(format!(
                "unknown metric {other:?}, expected block or cayley"
            )),
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Metric::Block => "block",
            Metric::Cayley => "cayley",
        })
    }
}

/// Big integers are written as decimal strings.
mod decimal {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn option<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k as u64).fold(BigUint::one(), |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// `F(m)`, the number of permutations of length `N` with block weight `m`.
pub fn weight_count(n: usize, m: usize) -> Result<BigUint> {
    if n == 0 || m >= n {
        return param(format!("need 0 ≤ m ≤ N−1, got N={n}, m={m}"));
    }
    // m!·Σ (−1)^{m−k}(k+1)/(m−k)! = Σ (−1)^{m−k}(k+1)·m!/(m−k)!
    let mut sum = BigInt::zero();
    for k in 0..=m {
        let falling = factorial(m) / factorial(m - k);
        let term = BigInt::from(falling * (k as u64 + 1));
        if (m - k).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let sum = sum
        .to_biguint()
        .ok_or_else(|| Error::Internal("negative weight count".into()))?;
    Ok(binomial(n - 1, m) * sum)
}

/// `∏_{k=from}^{to} (N−k)`.
fn falling_product(n: usize, from: usize, to: usize) -> BigUint {
    (from..=to).fold(BigUint::one(), |acc, k| acc * n.saturating_sub(k) as u64)
}

/// Largest block radius with guaranteed ball bounds, `⌊N − √N − 1⌋`
/// (`None` when no radius qualifies).
pub fn max_block_radius(n: usize) -> Option<usize> {
    // t ≤ N − 1 − √N  ⇔  (N − 1 − t)² ≥ N with N − 1 − t ≥ 0
    (0..n).rev().find(|&t| {
        let s = n - 1 - t;
        s * s >= n
    })
}

/// Largest generalized-Cayley radius with guaranteed ball bounds.
pub fn max_cayley_radius(n: usize) -> Option<usize> {
    let quarter = n.checked_sub(1)? / 4;
    max_block_radius(n).map(|b| b.min(quarter))
}

fn admissible(n: usize, t: usize, metric: Metric) -> bool {
    let cap = match metric {
        Metric::Block => max_block_radius(n),
        Metric::Cayley => max_cayley_radius(n),
    };
    cap.is_some_and(|c| t <= c)
}

/// Ball sizes and their bounds for radius `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallReport {
    pub n: usize,
    pub t: usize,
    pub metric: Metric,
    /// Counted by enumeration; absent above the enumeration cap.
    #[serde(serialize_with = "decimal::option")]
    pub exact: Option<BigUint>,
    #[serde(serialize_with = "decimal::big")]
    pub lower: BigUint,
    #[serde(serialize_with = "decimal::big")]
    pub upper: BigUint,
    /// Whether `t` is in the range where the bounds are proven.
    pub guaranteed: bool,
}

impl BallReport {
    pub fn within_bounds(&self) -> Option<bool> {
        self.exact
            .as_ref()
            .map(|e| &self.lower <= e && e <= &self.upper)
    }
}

/// Ball size bounds, with the exact size counted when `N ≤ cap` (the Cayley
/// ball additionally needs `N ≤` [`CAYLEY_ORACLE_CAP`]).
pub fn ball_bounds(n: usize, t: usize, metric: Metric, cap: usize) -> Result<BallReport> {
    if n < 2 {
        return param(format!("ball bounds need N ≥ 2, got {n}"));
    }
    let lower = falling_product(n, 1, t);
    let upper = match metric {
        Metric::Block => falling_product(n, 0, t),
        Metric::Cayley => falling_product(n, 0, 4 * t),
    };
    let exact = if n > cap {
        None
    } else {
        match metric {
            Metric::Block => {
                let e = Permutation::identity(n);
                let mut count = 0u64;
                for pi in all_permutations(n) {
                    if block_distance(&e, &pi)? <= t {
                        count += 1;
                    }
                }
                Some(BigUint::from(count))
            }
            Metric::Cayley if n <= CAYLEY_ORACLE_CAP => {
                Some(BigUint::from(CayleyOracle::shared(n)?.ball_size(t)))
            }
            Metric::Cayley => None,
        }
    };
    Ok(BallReport {
        n,
        t,
        metric,
        exact,
        lower,
        upper,
        guaranteed: admissible(n, t, metric),
    })
}

/// Bounds on the optimal code rate for radius `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub n: usize,
    pub t: usize,
    pub metric: Metric,
    pub lower: f64,
    pub upper: f64,
    /// `1 + 2·log e / log N`.
    pub c: f64,
    /// `Σ_{n ≤ N} log n`.
    pub log_factorial: f64,
    /// `(N + 1/2) log N − N log e`, the lower end of the `log N!` bracket;
    /// the upper end is this plus 2.
    pub stirling_lower: f64,
}

impl RateReport {
    pub fn stirling_upper(&self) -> f64 {
        self.stirling_lower + 2.0
    }
}

/// Sums `log2 n` for `n ≤ N` and the closed-form bracket around it.
pub fn log_factorial_bracket(n: usize) -> (f64, f64, f64) {
    let exact: f64 = (1..=n).map(|k| (k as f64).log2()).sum();
    let nf = n as f64;
    let lower = (nf + 0.5) * nf.log2() - nf * std::f64::consts::LOG2_E;
    (lower, exact, lower + 2.0)
}

/// Rate bounds; refused unless `N ≥ 9` and `t ≤ min{N−√N−1, (N−1)/4}`.
pub fn rate_bounds(n: usize, t: usize, metric: Metric) -> Result<RateReport> {
    if n < 9 {
        return Err(Error::Refused(format!("rate bounds need N ≥ 9, got {n}")));
    }
    if t == 0 || !admissible(n, t, Metric::Cayley) {
        return Err(Error::Refused(format!(
            "t={t} is outside 1..={} for N={n}",
            max_cayley_radius(n).unwrap_or(0)
        )));
    }
    let nf = n as f64;
    let c = 1.0 + 2.0 * std::f64::consts::LOG2_E / nf.log2();
    let spread = match metric {
        Metric::Block => 2 * t + 1,
        Metric::Cayley => 8 * t + 1,
    } as f64;
    let (stirling_lower, log_factorial, _) = log_factorial_bracket(n);
    Ok(RateReport {
        n,
        t,
        metric,
        lower: 1.0 - c * spread / nf,
        upper: 1.0 - t as f64 / nf,
        c,
        log_factorial,
        stirling_lower,
    })
}

/// Smallest pairwise distance in `codebook`. Repeated entries give 0.
pub fn min_distance(codebook: &[Permutation], metric: Metric) -> Result<usize> {
    if codebook.len() < 2 {
        return param("minimum distance needs at least two codewords");
    }
    let oracle = match metric {
        Metric::Cayley => Some(CayleyOracle::shared(codebook[0].len())?),
        Metric::Block => None,
    };
    let mut best = usize::MAX;
    for (i, a) in codebook.iter().enumerate() {
        for b in &codebook[i + 1..] {
            let d = match oracle {
                Some(o) => o.distance(a, b)?,
                None => block_distance(a, b)?,
            };
            best = best.min(d);
        }
    }
    Ok(best)
}

/// Outcome of comparing `LCM{N+i : i ∈ Y}` with `N^{M−k/2}`, `M = |Y|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcmCheck {
    #[serde(serialize_with = "decimal::big")]
    pub lcm: BigUint,
    /// `2M − k`; the comparison is `LCM² > N^{2M−k}`.
    pub exponent: i64,
    pub holds: bool,
}

pub fn lcm_bound_check(n: usize, k: usize, y: &BTreeSet<usize>) -> Result<LcmCheck> {
    if k <= 3 || n <= k * k {
        return Err(Error::Refused(format!(
            "need k > 3 and N > k², got N={n}, k={k}"
        )));
    }
    if let Some(&bad) = y.iter().find(|&&i| i == 0 || i > k) {
        return param(format!("index {bad} is outside 1..={k}"));
    }
    let lcm = y.iter().fold(BigUint::one(), |acc, &i| {
        acc.lcm(&BigUint::from((n + i) as u64))
    });
    let exponent = 2 * y.len() as i64 - k as i64;
    let base = BigUint::from(n as u64);
    let square = &lcm * &lcm;
    let holds = if exponent >= 0 {
        square > base.pow(exponent as u32)
    } else {
        square * base.pow((-exponent) as u32) > BigUint::one()
    };
    Ok(LcmCheck {
        lcm,
        exponent,
        holds,
    })
}

/// `N!` as an `f64` (for pigeonhole comparisons in reports).
pub fn factorial_f64(n: usize) -> f64 {
    factorial(n).to_f64().unwrap_or(f64::INFINITY)
}

/// `N!` exactly.
pub fn factorial_exact(n: usize) -> BigUint {
    factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::block_weight;

    #[test]
    fn weight_counts_small() {
        assert_eq!(weight_count(5, 0).unwrap(), BigUint::from(1u32));
        assert_eq!(weight_count(5, 1).unwrap(), BigUint::from(4u32));
        assert!(weight_count(5, 5).is_err());
        for n in 1..=7 {
            let mut counts = vec![0u64; n];
            for pi in all_permutations(n) {
                counts[block_weight(&pi)] += 1;
            }
            let total: BigUint = (0..n).map(|m| weight_count(n, m).unwrap()).sum();
            assert_eq!(total, factorial(n), "N={n}");
            for (m, &c) in counts.iter().enumerate() {
                assert_eq!(weight_count(n, m).unwrap(), BigUint::from(c), "N={n} m={m}");
            }
        }
    }

    #[test]
    fn radius_limits() {
        assert_eq!(max_block_radius(5), Some(1));
        assert_eq!(max_block_radius(6), Some(2));
        assert_eq!(max_block_radius(7), Some(3));
        assert_eq!(max_block_radius(9), Some(5));
        assert_eq!(max_block_radius(1), None);
        assert_eq!(max_cayley_radius(5), Some(1));
        assert_eq!(max_cayley_radius(7), Some(1));
        assert_eq!(max_cayley_radius(9), Some(2));
        for n in 2..200usize {
            let float = (n as f64 - (n as f64).sqrt() - 1.0).floor();
            let expect = (float >= 0.0).then_some(float as usize);
            assert_eq!(max_block_radius(n), expect, "N={n}");
        }
    }

    #[test]
    fn ball_products() {
        let r = ball_bounds(10, 2, Metric::Block, 7).unwrap();
        assert_eq!(r.lower, BigUint::from(72u32));
        assert_eq!(r.upper, BigUint::from(720u32));
        assert!(r.exact.is_none());
        assert!(r.guaranteed);
        let g = ball_bounds(7, 1, Metric::Cayley, 7).unwrap();
        assert_eq!(g.upper, BigUint::from(7u32 * 6 * 5 * 4 * 3));
        assert_eq!(g.within_bounds(), Some(true));
    }

    #[test]
    fn enumerated_balls_match_weight_counts() {
        for n in 5..=7 {
            for t in 1..=max_block_radius(n).unwrap() {
                let r = ball_bounds(n, t, Metric::Block, 7).unwrap();
                let from_f: BigUint = (0..=t).map(|m| weight_count(n, m).unwrap()).sum();
                assert_eq!(r.exact.clone().unwrap(), from_f);
                assert_eq!(r.within_bounds(), Some(true), "N={n} t={t}");
            }
        }
    }

    #[test]
    fn rate_report() {
        let r = rate_bounds(100, 2, Metric::Block).unwrap();
        let c = 1.0 + 2.0 / std::f64::consts::LN_2 / 100f64.log2();
        assert!((r.c - c).abs() < 1e-12);
        assert!((r.c - 1.434).abs() < 1e-3);
        assert!((r.lower - (1.0 - c * 5.0 / 100.0)).abs() < 1e-12);
        assert!((r.upper - 0.98).abs() < 1e-12);
        assert!(rate_bounds(8, 1, Metric::Block).is_err());
        assert!(rate_bounds(9, 3, Metric::Block).is_err());
        assert!(rate_bounds(9, 0, Metric::Block).is_err());
    }

    #[test]
    fn stirling_bracket_n9() {
        let (lo, exact, hi) = log_factorial_bracket(9);
        assert!((exact - 362_880f64.log2()).abs() < 1e-9);
        assert!(lo < exact && exact < hi);
    }

    #[test]
    fn lcm_examples() {
        let y: BTreeSet<usize> = [1, 2, 3].into_iter().collect();
        let c = lcm_bound_check(17, 4, &y).unwrap();
        assert_eq!(c.lcm, BigUint::from(3420u32));
        assert_eq!(c.exponent, 2);
        assert!(c.holds);
        let empty = lcm_bound_check(17, 4, &BTreeSet::new()).unwrap();
        assert_eq!(empty.lcm, BigUint::one());
        assert!(empty.holds);
        assert!(lcm_bound_check(16, 4, &y).is_err());
        assert!(lcm_bound_check(17, 4, &[5].into_iter().collect()).is_err());
    }

    #[test]
    fn min_distance_cases() {
        let a = Permutation::new(vec![3, 5, 6, 7, 9, 8, 1, 2, 10, 4]).unwrap();
        let b = Permutation::new(vec![3, 1, 2, 8, 5, 6, 7, 9, 10, 4]).unwrap();
        assert_eq!(
            min_distance(&[a.clone(), b.clone()], Metric::Block).unwrap(),
            4
        );
        assert_eq!(
            min_distance(&[a.clone(), a.clone()], Metric::Block).unwrap(),
            0
        );
        assert!(min_distance(std::slice::from_ref(&a), Metric::Block).is_err());
        assert!(matches!(
            min_distance(&[a, b], Metric::Cayley),
            Err(Error::Refused(_))
        ));
        let c = Permutation::new(vec![1, 5, 4, 2, 3, 6]).unwrap();
        let d = Permutation::new(vec![4, 2, 3, 1, 5, 6]).unwrap();
        let g = min_distance(&[c.clone(), d.clone()], Metric::Cayley).unwrap();
        assert!(g <= min_distance(&[c, d], Metric::Block).unwrap());
    }
}
