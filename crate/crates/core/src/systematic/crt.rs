//! Recovering the syndrome index `γ` from residues when some residues are
//! wrong or erased.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{aux_codeword, gamma_digits, AuxParams};
use crate::error::{param, DecodeError, Error, Result};
use crate::extension::{hamming_set, ExtensionSequence};

/// Exhaustive search is refused above this many syndromes.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Largest number of lifts `r + jM` tried when the merged modulus `M` does
/// not exceed the syndrome space (only happens with relaxed parameters).
const MAX_LIFTS: u64 = 4096;

/// `x ≡ residue (mod modulus)` with an arbitrary-precision modulus.
#[derive(Debug, Clone)]
struct Congruence {
    residue: BigUint,
    modulus: BigUint,
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

impl Congruence {
    fn trivial() -> Self {
        Congruence {
            residue: BigUint::zero(),
            modulus: BigUint::one(),
        }
    }

    /// Combines with `x ≡ r (mod n)`; `None` when the two disagree modulo
    /// `gcd(M, n)`.
    fn merge(&self, r: u64, n: u64) -> Option<Congruence> {
        let m_mod = (&self.modulus % n).to_u64().expect("below n");
        let cur = (&self.residue % n).to_u64().expect("below n");
        let g = m_mod.gcd(&n);
        let diff = (r + n - cur) % n;
        if !diff.is_multiple_of(g) {
            return None;
        }
        let n_g = n / g;
        let y = if n_g == 1 {
            0
        } else {
            let inv = mod_inverse((m_mod / g) % n_g, n_g).expect("coprime after dividing by gcd");
            ((diff / g) as u128 * inv as u128 % n_g as u128) as u64
        };
        Some(Congruence {
            residue: &self.residue + &self.modulus * y,
            modulus: &self.modulus * n_g,
        })
    }
}

/// Lexicographic `size`-subsets of `0..len`.
fn subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, len, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, size, &mut Vec::new(), &mut out);
    out
}

fn within_budget(g: &BigUint, received: &ExtensionSequence, params: &AuxParams) -> Result<bool> {
    let Some(digits) = gamma_digits(g, params.q(), params.digits()) else {
        return Ok(false);
    };
    let regenerated = aux_codeword(&digits, params)?;
    Ok(hamming_set(&regenerated.0, received.values())?.len() <= params.t())
}

/// Recovers `γ` from per-block residues (`None` = erased) of a received
/// anchor sequence with at most `t` wrong or erased blocks.
///
/// Every choice of up to `t − e` suspect blocks (`e` erasures) is dropped in
/// turn; the remaining congruences are merged and the result is accepted if
/// it lies in the syndrome space and regenerates an anchor sequence within
/// Hamming-set distance `t` of `received`.
pub fn crt_recover_gamma(
    residues: &[Option<u64>],
    received: &ExtensionSequence,
    params: &AuxParams,
) -> Result<BigUint> {
    if residues.len() != params.k() || received.len() != params.redundancy() {
        return param(format!(
            "expected {} residues and {} anchors, got {} and {}",
            params.k(),
            params.redundancy(),
            residues.len(),
            received.len()
        ));
    }
    let live: Vec<(u64, u64)> = residues
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|r| (r, (params.n() + i + 1) as u64)))
        .collect();
    let erased = residues.len() - live.len();
    if erased > params.t() || live.is_empty() {
        return Err(DecodeError::NoCandidate.into());
    }
    let space = params.syndrome_space();
    let mut found = BTreeSet::new();
    for drop_count in 0..=(params.t() - erased).min(live.len() - 1) {
        for dropped in subsets(live.len(), drop_count) {
            let mut c = Congruence::trivial();
            let mut ok = true;
            for (idx, &(r, n)) in live.iter().enumerate() {
                if dropped.binary_search(&idx).is_ok() {
                    continue;
                }
                match c.merge(r, n) {
                    Some(next) => c = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut candidate = c.residue.clone();
            let mut lifts = 0;
            while candidate < space && lifts < MAX_LIFTS {
                if within_budget(&candidate, received, params)? {
                    found.insert(candidate.clone());
                }
                candidate += &c.modulus;
                lifts += 1;
            }
        }
    }
    let mut it = found.into_iter();
    match (it.next(), it.next()) {
        (Some(g), None) => Ok(g),
        (None, _) => Err(DecodeError::NoCandidate.into()),
        (Some(_), Some(_)) => Err(Error::Internal(
            "several syndromes fit the received anchors; parameters do not guarantee uniqueness"
                .into(),
        )),
    }
}

/// Searches the whole syndrome space for anchor sequences within
/// Hamming-set distance `t` of `received`. Only for toy parameters
/// (`q^{4t−1} ≤` [`EXHAUSTIVE_LIMIT`]).
pub fn exhaustive_recover_gamma(
    received: &ExtensionSequence,
    params: &AuxParams,
) -> Result<BigUint> {
    let space = params
        .syndrome_space()
        .to_u64()
        .filter(|&s| s <= EXHAUSTIVE_LIMIT)
        .ok_or_else(|| Error::Refused("syndrome space too large for exhaustive search".into()))?;
    let mut found = Vec::new();
    for g in 0..space {
        let g = BigUint::from(g);
        if within_budget(&g, received, params)? {
            found.push(g);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        0 => Err(DecodeError::NoCandidate.into()),
        _ => Err(Error::Internal(
            "several syndromes fit the received anchors".into(),
        )),
    }
}
