//! Arithmetic over a prime field `F_q` and polynomials over it.

mod linalg;
mod poly;

pub use linalg::linear_solve;
pub use poly::{char_polynomial, find_roots, poly_gcd, Polynomial, Root};

use crate::coset::LabelingMode;
use crate::error::{param, Result};

/// The prime field `F_q`. Elements are plain `u64` values in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return param(format!("modulus {q} is not prime"));
        }
        if q > u32::MAX as u64 * 4 {
            return param(format!("modulus {q} is too large"));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn reduce(&self, v: u64) -> u64 {
        v % self.q
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.q) {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }

    /// `Σ_{b ∈ set} b^i` for `i = 1..=count`.
    pub fn power_sums(&self, set: &[u64], count: usize) -> Vec<u64> {
        let mut sums = vec![0; count];
        for &b in set {
            let mut p = 1;
            for s in sums.iter_mut() {
                p = self.mul(p, b);
                *s = self.add(*s, p);
            }
        }
        sums
    }

    /// Elementary symmetric functions `a_1, …, a_n` from power sums
    /// `α_1, …, α_n` via Newton's identities:
    /// `k·a_k = Σ_{i=1}^k (−1)^{i−1} a_{k−i} α_i`, with `a_0 = 1`.
    pub fn newton_to_elementary(&self, power_sums: &[u64]) -> Result<Vec<u64>> {
        let n = power_sums.len();
        if self.q <= n as u64 {
            return param(format!(
                "Newton's identities up to order {n} need q > {n}, got q={}",
                self.q
            ));
        }
        let mut a = Vec::with_capacity(n + 1);
        a.push(1);
        for k in 1..=n {
            let mut acc = 0;
            for i in 1..=k {
                let term = self.mul(a[k - i], power_sums[i - 1]);
                acc = if i % 2 == 1 {
                    self.add(acc, term)
                } else {
                    self.sub(acc, term)
                };
            }
            let k_inv = self.inv(k as u64).expect("k < q");
            a.push(self.mul(acc, k_inv));
        }
        a.remove(0);
        Ok(a)
    }
}

/// Deterministic trial-division primality test; `q` stays below `2N²`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn next_prime_at_least(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// The smallest prime the pair labeling of `mode` can use for length `n`:
/// at least `N²−N` for the compact labeling, `N²−1` for the paper labeling.
pub fn smallest_suitable_prime(n: usize, mode: LabelingMode) -> u64 {
    assert!(n >= 2, "labeling needs N ≥ 2");
    let n = n as u64;
    let floor = match mode {
        LabelingMode::Compact => n * n - n,
        LabelingMode::Paper => n * n - 1,
    };
    let q = next_prime_at_least(floor);
    if n >= 4 {
        assert!(q < 2 * (n * n - n), "Bertrand range violated for N={n}");
    }
    q
}
