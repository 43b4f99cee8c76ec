use std::collections::BTreeSet;

use super::{nu, syndrome, CodeParams, PairLabeling, Syndrome};
use crate::error::{param, DecodeError, Result};
use crate::gfq::{find_roots, linear_solve, poly_gcd, Polynomial, PrimeField};
use crate::perm::Permutation;

/// Intermediate values of one decoder run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeTrace {
    /// `B' = ν(π')`.
    pub received_labels: Vec<u64>,
    /// Elementary symmetric functions `a_1..a_{4t−1}` of the sent set.
    pub sent_coeffs: Vec<u64>,
    /// Elementary symmetric functions `a'_1..a'_{4t−1}` of the received set.
    pub received_coeffs: Vec<u64>,
    /// Row-major `(4t−1) × 2t` system matrix.
    pub matrix: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
    pub solution: Vec<u64>,
    pub h1: Polynomial,
    pub h2: Polynomial,
    /// Labels present in the sent set but missing from the received one.
    pub inserted: BTreeSet<u64>,
    /// Labels of the received set that were not sent.
    pub removed: BTreeSet<u64>,
    pub estimate_labels: BTreeSet<u64>,
}

/// Distinct additive inverses of the roots of `poly`, which must split into
/// distinct linear factors.
fn negated_roots(
    field: PrimeField,
    poly: &Polynomial,
) -> std::result::Result<BTreeSet<u64>, DecodeError> {
    let degree = poly.degree().ok_or(DecodeError::NotSplitting)?;
    let roots = find_roots(poly);
    if roots.iter().any(|r| r.multiplicity > 1) {
        return Err(DecodeError::RepeatedRoot);
    }
    if roots.len() != degree {
        return Err(DecodeError::NotSplitting);
    }
    Ok(roots.iter().map(|r| field.neg(r.value)).collect())
}

/// Builds the system `A·c = b` whose solutions give the locator pair
/// `(h1, h2)`.
///
/// Row `k` (1-based) matches the coefficient of `X^{N−1+t−k}` in
/// `h1·f1 = h2·f2`; column `j ≤ t` carries `a_{k−j}` and column `t+j` carries
/// `a'_{k−j}`, with `a_0 = 1` and negative indices zero.
fn locator_system(
    t: usize,
    sent: &[u64],
    received: &[u64],
    field: PrimeField,
) -> (Vec<Vec<u64>>, Vec<u64>) {
    let rows = 4 * t - 1;
    let coeff = |a: &[u64], idx: isize| -> u64 {
        match idx {
            0 => 1,
            i if i > 0 => a[i as usize - 1],
            _ => 0,
        }
    };
    let matrix = (1..=rows)
        .map(|k| {
            let mut row = Vec::with_capacity(2 * t);
            for j in 1..=t {
                row.push(coeff(sent, k as isize - j as isize));
            }
            for j in 1..=t {
                row.push(coeff(received, k as isize - j as isize));
            }
            row
        })
        .collect();
    let rhs = (0..rows).map(|k| field.sub(received[k], sent[k])).collect();
    (matrix, rhs)
}

/// Recovers a permutation from its label set `B`, which must describe a
/// single path through all `N` symbols.
pub fn reconstruct_permutation(
    labels: &[u64],
    labeling: &PairLabeling,
) -> std::result::Result<Permutation, DecodeError> {
    let n = labeling.n();
    if labels.len() != n - 1 {
        return Err(DecodeError::WrongSetSize {
            expected: n - 1,
            got: labels.len(),
        });
    }
    let distinct: BTreeSet<u64> = labels.iter().copied().collect();
    if distinct.len() != labels.len() {
        return Err(DecodeError::NotCharacteristicSet("repeated label".into()));
    }
    let options: Vec<Vec<(usize, usize)>> = labels.iter().map(|&l| labeling.pairs_for(l)).collect();
    if let Some(i) = options.iter().position(Vec::is_empty) {
        return Err(DecodeError::NotCharacteristicSet(format!(
            "label {} names no pair",
            labels[i]
        )));
    }

    // Only a non-injective labeling yields several options for one label;
    // try every combination and demand exactly one path.
    let mut found: Option<Permutation> = None;
    let mut last_err = String::new();
    let mut choice = vec![0usize; options.len()];
    loop {
        let pairs: Vec<(usize, usize)> = choice.iter().zip(&options).map(|(&c, o)| o[c]).collect();
        match path_from_pairs(n, &pairs) {
            Ok(p) => {
                if found.as_ref().is_some_and(|f| *f != p) {
                    return Err(DecodeError::NotCharacteristicSet(
                        "label set is ambiguous under this labeling".into(),
                    ));
                }
                found = Some(p);
            }
            Err(e) => last_err = e,
        }
        let Some(i) = (0..choice.len()).find(|&i| choice[i] + 1 < options[i].len()) else {
            break;
        };
        choice[i] += 1;
        choice[..i].iter_mut().for_each(|c| *c = 0);
    }
    found.ok_or(DecodeError::NotCharacteristicSet(last_err))
}

fn path_from_pairs(n: usize, pairs: &[(usize, usize)]) -> std::result::Result<Permutation, String> {
    let mut succ = vec![0; n + 1];
    let mut has_pred = vec![false; n + 1];
    for &(a, b) in pairs {
        if succ[a] != 0 {
            return Err(format!("symbol {a} has two successors"));
        }
        if has_pred[b] {
            return Err(format!("symbol {b} has two predecessors"));
        }
        succ[a] = b;
        has_pred[b] = true;
    }
    let starts: Vec<usize> = (1..=n).filter(|&v| !has_pred[v]).collect();
    if starts.len() != 1 {
        return Err(format!("expected one start symbol, found {}", starts.len()));
    }
    let mut order = Vec::with_capacity(n);
    let mut cur = starts[0];
    while cur != 0 && order.len() <= n {
        order.push(cur);
        cur = succ[cur];
    }
    if order.len() != n {
        return Err("pairs contain a cycle".into());
    }
    Ok(Permutation::from_vec_unchecked(order))
}

/// Runs the syndrome decoder and returns every intermediate value.
pub fn decode_traced(
    pi_prime: &Permutation,
    alpha: &Syndrome,
    params: &CodeParams,
) -> Result<(Permutation, DecodeTrace)> {
    let n = params.n();
    let t = params.t();
    let field = params.field();
    if pi_prime.len() != n {
        return Err(DecodeError::WrongLength {
            expected: n,
            got: pi_prime.len(),
        }
        .into());
    }
    if alpha.len() != params.syndrome_len() {
        return param(format!(
            "syndrome has {} entries, expected {}",
            alpha.len(),
            params.syndrome_len()
        ));
    }
    if let Some(&bad) = alpha.values().iter().find(|&&v| v >= field.modulus()) {
        return param(format!(
            "syndrome entry {bad} is not below q={}",
            field.modulus()
        ));
    }

    let received_labels = nu(pi_prime, &params.labeling())?;
    let received_sums = field.power_sums(&received_labels, params.syndrome_len());
    let received_coeffs = field.newton_to_elementary(&received_sums)?;
    let sent_coeffs = field.newton_to_elementary(alpha.values())?;

    let (matrix, rhs) = locator_system(t, &sent_coeffs, &received_coeffs, field);
    let solution = linear_solve(field, &matrix, &rhs).ok_or(DecodeError::InconsistentSystem)?;

    let h1 = Polynomial::monic_from_descending(field, &solution[..t]);
    let h2_lower: Vec<u64> = solution[t..].iter().map(|&c| field.neg(c)).collect();
    let h2 = Polynomial::monic_from_descending(field, &h2_lower);
    let h = poly_gcd(&h1, &h2)?;
    let (v1, r1) = h2.div_rem(&h).expect("gcd is nonzero");
    let (v2, r2) = h1.div_rem(&h).expect("gcd is nonzero");
    debug_assert!(r1.is_zero() && r2.is_zero());

    let inserted = negated_roots(field, &v1)?;
    let removed = negated_roots(field, &v2)?;
    let received_set: BTreeSet<u64> = received_labels.iter().copied().collect();
    if !removed.is_subset(&received_set) {
        return Err(DecodeError::RemovedNotReceived.into());
    }
    let estimate_labels: BTreeSet<u64> = received_set
        .difference(&removed)
        .copied()
        .chain(inserted.iter().copied())
        .collect();
    if estimate_labels.len() != n - 1 {
        return Err(DecodeError::WrongSetSize {
            expected: n - 1,
            got: estimate_labels.len(),
        }
        .into());
    }
    let labels: Vec<u64> = estimate_labels.iter().copied().collect();
    let estimate = reconstruct_permutation(&labels, &params.labeling())?;
    if syndrome(&estimate, params)? != *alpha {
        return Err(DecodeError::SyndromeMismatch.into());
    }

    let trace = DecodeTrace {
        received_labels,
        sent_coeffs,
        received_coeffs,
        matrix,
        rhs,
        solution,
        h1,
        h2,
        inserted,
        removed,
        estimate_labels,
    };
    Ok((estimate, trace))
}

/// Recovers the codeword with syndrome `alpha` from `pi_prime`, provided the
/// two are within block distance `t`.
pub fn decode(
    pi_prime: &Permutation,
    alpha: &Syndrome,
    params: &CodeParams,
) -> Result<Permutation> {
    decode_traced(pi_prime, alpha, params).map(|(p, _)| p)
}
