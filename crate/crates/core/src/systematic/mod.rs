//! The systematic `t`-block permutation code.
//!
//! A message `π ∈ S_N` is sent as `E(π, S)` where the anchor sequence `S` of
//! length `K = 2k` encodes the syndrome of `π`. The syndrome digits are read
//! as a base-`q` integer `γ`, reduced modulo `N+1, …, N+k`, and each residue
//! is written as two base-`⌊N/k⌋` digits inside its own block of anchors.
//! Distinct syndromes give anchor sequences whose Hamming sets have at least
//! `2t+1` elements, so the receiver can find `S` again from a corrupted copy
//! and hand the syndrome to the coset decoder.

mod crt;

pub use crt::{crt_recover_gamma, exhaustive_recover_gamma, EXHAUSTIVE_LIMIT};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::coset::{decode, syndrome, CodeParams, LabelingMode, Syndrome};
use crate::error::{param, Error, Result};
use crate::extension::{
    extend, recover_extension_sequence, truncate_to, ExtensionSequence, SENTINEL,
};
use crate::gfq::{is_prime, smallest_suitable_prime};
use crate::perm::Permutation;

/// Parameters of the systematic code. `K = 2k` redundancy symbols are
/// appended; anchors for residue `i` live in block `i`, the symbols
/// `m_i..m_i + w` with `w = ⌊N/k⌋` and `m_i = (i−1)w + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxParams {
    n: usize,
    t: usize,
    k: usize,
    q: u64,
    mode: LabelingMode,
}

/// `⌊√N − 1/2⌋`, computed exactly.
fn floor_sqrt_minus_half(n: usize) -> usize {
    // largest m with (2m + 1)² ≤ 4N
    let mut m = ((n as f64).sqrt() as usize).saturating_sub(1);
    while (2 * (m + 1) + 1).pow(2) <= 4 * n {
        m += 1;
    }
    while m > 0 && (2 * m + 1).pow(2) > 4 * n {
        m -= 1;
    }
    m
}

impl AuxParams {
    /// Validates every hypothesis the distance guarantee depends on:
    /// `k ≥ 28t`, `3 < k < ⌊√N − 1/2⌋`, `N > k²` and
    /// `N²−N < q < 2(N²−N)`. `k` defaults to `28t`.
    pub fn new(
        n: usize,
        t: usize,
        k: Option<usize>,
        mode: LabelingMode,
        q: Option<u64>,
    ) -> Result<Self> {
        if t == 0 {
            return param("error budget t must be at least 1");
        }
        let k = k.unwrap_or(28 * t);
        if k < 28 * t {
            return param(format!("k={k} must be at least 28t={}", 28 * t));
        }
        if k <= 3 {
            return param(format!("k={k} must exceed 3"));
        }
        let bound = floor_sqrt_minus_half(n);
        if k >= bound {
            return param(format!(
                "k={k} must be below ⌊√N − 1/2⌋={bound}; N={n} is too short"
            ));
        }
        if n <= k * k {
            return param(format!("N={n} must exceed k²={}", k * k));
        }
        let q = q.unwrap_or_else(|| smallest_suitable_prime(n, mode));
        let pairs = (n * n - n) as u64;
        if !is_prime(q) || q <= pairs || q >= 2 * pairs {
            return param(format!(
                "q={q} must be a prime strictly between {pairs} and {}",
                2 * pairs
            ));
        }
        AuxParams::relaxed(n, t, k, mode, Some(q))
    }

    /// Parameters for correcting `t_g` generalized transpositions: a block
    /// budget of `4t_g` with `k = 112t_g`, i.e. `K = 224t_g`.
    pub fn for_cayley_errors(
        n: usize,
        t_g: usize,
        mode: LabelingMode,
        q: Option<u64>,
    ) -> Result<Self> {
        AuxParams::new(n, 4 * t_g, Some(112 * t_g), mode, q)
    }

    /// Only checks what the encoder needs to run (`1 ≤ k ≤ N` and a valid
    /// coset code). No minimum distance is guaranteed.
    pub fn relaxed(
        n: usize,
        t: usize,
        k: usize,
        mode: LabelingMode,
        q: Option<u64>,
    ) -> Result<Self> {
        if k == 0 || k > n {
            return param(format!("need 1 ≤ k ≤ N, got k={k}, N={n}"));
        }
        let code = CodeParams::new(n, t, mode, q)?;
        Ok(AuxParams {
            n,
            t,
            k,
            q: code.q(),
            mode,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of redundancy symbols, `2k`.
    pub fn redundancy(&self) -> usize {
        2 * self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn mode(&self) -> LabelingMode {
        self.mode
    }

    /// Block width `⌊N/k⌋`.
    pub fn width(&self) -> usize {
        self.n / self.k
    }

    /// First anchor symbol of block `i` (1-based).
    pub fn block_base(&self, i: usize) -> usize {
        (i - 1) * self.width() + 1
    }

    /// Number of syndrome digits, `4t − 1`.
    pub fn digits(&self) -> usize {
        4 * self.t - 1
    }

    /// `q^{4t−1}`, the number of syndromes.
    pub fn syndrome_space(&self) -> BigUint {
        BigUint::from(self.q).pow(self.digits() as u32)
    }

    pub fn code_params(&self) -> CodeParams {
        CodeParams::new(self.n, self.t, self.mode, Some(self.q)).expect("validated on construction")
    }
}

/// `γ(x) = Σ x_i q^{i−1}`.
pub fn gamma(x: &[u64], q: u64) -> BigUint {
    x.iter().rev().fold(BigUint::zero(), |acc, &d| acc * q + d)
}

/// Base-`q` digits of `g`, least significant first; `None` if `g ≥ q^d`.
pub fn gamma_digits(g: &BigUint, q: u64, d: usize) -> Option<Vec<u64>> {
    let mut rest = g.clone();
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        let digit = (&rest % q).to_u64().expect("digit below q");
        out.push(digit);
        rest /= q;
    }
    rest.is_zero().then_some(out)
}

/// `(γ mod (N+1), …, γ mod (N+k))`.
pub(crate) fn residues(g: &BigUint, n: usize, k: usize) -> Vec<u64> {
    (1..=k)
        .map(|i| {
            (g % (n + i) as u64)
                .to_u64()
                .expect("residue below modulus")
        })
        .collect()
}

/// The residue vector `β(x)` of `γ(x)` modulo `N+1, …, N+k`. Requires
/// `N > k²` and `k > 3`.
pub fn beta(x: &[u64], q: u64, n: usize, k: usize) -> Result<Vec<u64>> {
    if k <= 3 || n <= k * k {
        return param(format!("β needs k > 3 and N > k², got N={n}, k={k}"));
    }
    if let Some(&bad) = x.iter().find(|&&v| v >= q) {
        return param(format!("digit {bad} is not below q={q}"));
    }
    Ok(residues(&gamma(x, q), n, k))
}

/// Writes each residue `β_i` as the digit pair
/// `(m_i + ⌊β_i/w⌋, m_i + (β_i mod w))`. No range check; see
/// [`aux_codeword`].
pub fn block_digits(betas: &[u64], n: usize, k: usize) -> Vec<usize> {
    let w = (n / k) as u64;
    let mut out = Vec::with_capacity(2 * betas.len());
    for (i, &b) in betas.iter().enumerate() {
        let base = (i as u64) * w + 1;
        out.push((base + b / w) as usize);
        out.push((base + b % w) as usize);
    }
    out
}

/// An anchor sequence of length `2k` produced from a syndrome.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AuxiliaryCodeword(pub Vec<usize>);

impl AuxiliaryCodeword {
    pub fn into_sequence(self) -> ExtensionSequence {
        ExtensionSequence(self.0)
    }
}

/// The auxiliary codeword for digits `x`. Every residue must fit in two
/// base-`w` digits, which valid parameters guarantee.
pub fn aux_codeword(x: &[u64], params: &AuxParams) -> Result<AuxiliaryCodeword> {
    if x.len() != params.digits() {
        return param(format!(
            "expected {} digits, got {}",
            params.digits(),
            x.len()
        ));
    }
    if let Some(&bad) = x.iter().find(|&&v| v >= params.q) {
        return param(format!("digit {bad} is not below q={}", params.q));
    }
    let betas = residues(&gamma(x, params.q), params.n, params.k);
    let w = params.width() as u64;
    if let Some((i, &b)) = betas.iter().enumerate().find(|(_, &b)| b >= w * w) {
        return Err(Error::Internal(format!(
            "residue {b} of block {} does not fit in two base-{w} digits",
            i + 1
        )));
    }
    Ok(AuxiliaryCodeword(block_digits(&betas, params.n, params.k)))
}

/// The extension sequence carrying `alpha`.
pub fn phi(alpha: &Syndrome, params: &AuxParams) -> Result<ExtensionSequence> {
    aux_codeword(alpha.values(), params).map(AuxiliaryCodeword::into_sequence)
}

/// Encodes `pi` as `E(π, φ(syndrome(π)))`, a permutation of length `N + 2k`.
pub fn encode_systematic(pi: &Permutation, params: &AuxParams) -> Result<Permutation> {
    if pi.len() != params.n {
        return param(format!(
            "message length {} does not match N={}",
            pi.len(),
            params.n
        ));
    }
    let alpha = syndrome(pi, &params.code_params())?;
    extend(pi, &phi(&alpha, params)?)
}

/// Reads each block's digit pair back into a residue. Blocks holding a
/// sentinel, an anchor outside the block, or a value that is not a residue
/// modulo `N+i` are erased (`None`).
pub fn block_residues(received: &ExtensionSequence, params: &AuxParams) -> Vec<Option<u64>> {
    let w = params.width();
    received
        .values()
        .chunks(2)
        .enumerate()
        .map(|(idx, pair)| {
            let i = idx + 1;
            let base = params.block_base(i);
            let in_block = |c: usize| c != SENTINEL && c >= base && c < base + w;
            if pair.len() != 2 || !in_block(pair[0]) || !in_block(pair[1]) {
                return None;
            }
            let b = ((pair[0] - base) * w + (pair[1] - base)) as u64;
            (b < (params.n + i) as u64).then_some(b)
        })
        .collect()
}

/// Recovers the message from a received word of length `N + 2k` within
/// block distance `t` of a codeword.
pub fn decode_systematic(sigma_prime: &Permutation, params: &AuxParams) -> Result<Permutation> {
    let n = params.n;
    let k2 = params.redundancy();
    if sigma_prime.len() != n + k2 {
        return Err(crate::DecodeError::WrongLength {
            expected: n + k2,
            got: sigma_prime.len(),
        }
        .into());
    }
    let message = truncate_to(sigma_prime, n)?;
    let received = recover_extension_sequence(sigma_prime, n, k2)?;
    let res = block_residues(&received, params);
    let g = crt_recover_gamma(&res, &received, params)?;
    let digits = gamma_digits(&g, params.q, params.digits())
        .ok_or_else(|| Error::Internal("recovered index exceeds the syndrome space".into()))?;
    decode(&message, &Syndrome(digits), &params.code_params())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{channel_block_with, random_permutation, seeded_rng};
    use crate::extension::hamming_set;
    use rand::Rng;

    fn smoke() -> AuxParams {
        AuxParams::new(871, 1, None, LabelingMode::Compact, None).unwrap()
    }

    #[test]
    fn floor_sqrt_bound() {
        assert_eq!(floor_sqrt_minus_half(871), 29);
        assert_eq!(floor_sqrt_minus_half(870), 28);
        assert_eq!(floor_sqrt_minus_half(2), 0);
        for n in 1..5000usize {
            let exact = ((n as f64).sqrt() - 0.5).floor() as usize;
            assert_eq!(floor_sqrt_minus_half(n), exact, "N={n}");
        }
    }

    #[test]
    fn minimal_valid_parameters() {
        let p = smoke();
        assert_eq!((p.k(), p.redundancy(), p.width()), (28, 56, 31));
        assert!(AuxParams::new(870, 1, None, LabelingMode::Compact, None).is_err());
        assert!(AuxParams::new(871, 1, Some(27), LabelingMode::Compact, None).is_err());
        assert!(AuxParams::new(871, 1, None, LabelingMode::Compact, Some(757_793)).is_ok());
        assert!(AuxParams::new(871, 1, None, LabelingMode::Compact, Some(97)).is_err());
        assert!(AuxParams::new(871, 0, None, LabelingMode::Compact, None).is_err());
    }

    #[test]
    fn cayley_preset_needs_long_messages() {
        assert!(AuxParams::for_cayley_errors(871, 1, LabelingMode::Compact, None).is_err());
        let n = 113 * 113 + 200;
        let p = AuxParams::for_cayley_errors(n, 1, LabelingMode::Compact, None).unwrap();
        assert_eq!((p.t(), p.k(), p.redundancy()), (4, 112, 224));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(
            beta(&[280], 2503, 50, 7).unwrap(),
            vec![25, 20, 15, 10, 5, 0, 52]
        );
        assert_eq!(
            beta(&[1008], 2503, 50, 7).unwrap(),
            vec![39, 20, 1, 36, 18, 0, 39]
        );
        assert_eq!(beta(&[0], 2503, 50, 7).unwrap(), vec![0; 7]);
        assert!(beta(&[1], 2503, 49, 7).is_err());
        assert!(beta(&[2503], 2503, 50, 7).is_err());
    }

    #[test]
    fn digit_pair_formula() {
        let c = block_digits(&[25, 20, 15, 10, 5, 0, 52], 50, 7);
        assert_eq!(
            c,
            vec![4, 5, 10, 14, 17, 16, 23, 25, 29, 34, 36, 36, 50, 46]
        );
    }

    #[test]
    fn overflowing_residue_is_an_internal_error() {
        // N=50, k=7 violates k < ⌊√N − 1/2⌋ and β_7 = 52 ≥ 7²
        let p = AuxParams::relaxed(50, 1, 7, LabelingMode::Compact, Some(2503)).unwrap();
        let x = [280, 0, 0];
        assert!(matches!(aux_codeword(&x, &p), Err(Error::Internal(_))));
    }

    #[test]
    fn zero_syndrome_anchors_block_bases() {
        let p = smoke();
        let s = phi(&Syndrome(vec![0, 0, 0]), &p).unwrap();
        for i in 1..=p.k() {
            assert_eq!(s.values()[2 * i - 2], p.block_base(i));
            assert_eq!(s.values()[2 * i - 1], p.block_base(i));
        }
    }

    #[test]
    fn gamma_round_trip() {
        let g = gamma(&[5, 7, 11], 13);
        assert_eq!(g, BigUint::from(5u64 + 7 * 13 + 11 * 169));
        assert_eq!(gamma_digits(&g, 13, 3).unwrap(), vec![5, 7, 11]);
        assert!(gamma_digits(&BigUint::from(13u64.pow(3)), 13, 3).is_none());
    }

    #[test]
    fn auxiliary_set_distance_sampled() {
        let p = smoke();
        let mut rng = seeded_rng(21);
        for _ in 0..1000 {
            let x: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p.q())).collect();
            let y: Vec<u64> = (0..3).map(|_| rng.gen_range(0..p.q())).collect();
            if x == y {
                continue;
            }
            let a = aux_codeword(&x, &p).unwrap();
            let b = aux_codeword(&y, &p).unwrap();
            assert!(hamming_set(&a.0, &b.0).unwrap().len() >= 3);
        }
    }

    #[test]
    fn anchors_stay_in_their_blocks() {
        let p = smoke();
        let mut rng = seeded_rng(5);
        let pi = random_permutation(871, &mut rng);
        let alpha = syndrome(&pi, &p.code_params()).unwrap();
        let s = phi(&alpha, &p).unwrap();
        for (idx, &c) in s.values().iter().enumerate() {
            let i = idx / 2 + 1;
            assert!(c >= p.block_base(i) && c < p.block_base(i) + p.width());
        }
        assert_eq!(
            block_residues(&s, &p),
            residues(&gamma(alpha.values(), p.q()), 871, 28)
                .into_iter()
                .map(Some)
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn systematic_round_trip_small_sample() {
        let p = smoke();
        let mut rng = seeded_rng(9);
        for _ in 0..10 {
            let pi = random_permutation(871, &mut rng);
            let sigma = encode_systematic(&pi, &p).unwrap();
            assert_eq!(truncate_to(&sigma, 871).unwrap(), pi);
            assert_eq!(decode_systematic(&sigma, &p).unwrap(), pi);
            let noisy = channel_block_with(&sigma, 1, &mut rng).unwrap();
            assert_eq!(decode_systematic(&noisy, &p).unwrap(), pi);
        }
    }

    #[test]
    fn heavy_corruption_fails_cleanly() {
        let p = smoke();
        let mut rng = seeded_rng(13);
        for d in 2..=6 {
            for _ in 0..6 {
                let pi = random_permutation(871, &mut rng);
                let sigma = encode_systematic(&pi, &p).unwrap();
                let noisy = channel_block_with(&sigma, d, &mut rng).unwrap();
                match decode_systematic(&noisy, &p) {
                    Ok(est) => {
                        // whatever is returned regenerates anchors within budget
                        let s = phi(&syndrome(&est, &p.code_params()).unwrap(), &p).unwrap();
                        let s_prime = recover_extension_sequence(&noisy, 871, 56).unwrap();
                        assert!(hamming_set(s.values(), s_prime.values()).unwrap().len() <= 1);
                    }
                    Err(Error::Decode(_)) | Err(Error::Internal(_)) => {}
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn sentinel_anchors_count_as_erasures() {
        let p = smoke();
        let mut rng = seeded_rng(17);
        let pi = random_permutation(871, &mut rng);
        let sigma = encode_systematic(&pi, &p).unwrap();
        // moving the first redundancy symbol to the front is one cut
        let mut v: Vec<usize> = sigma
            .as_slice()
            .iter()
            .copied()
            .filter(|&x| x != 872)
            .collect();
        v.insert(0, 872);
        let moved = Permutation::new(v).unwrap();
        let s = recover_extension_sequence(&moved, 871, 56).unwrap();
        assert!(s.has_sentinel());
        assert_eq!(block_residues(&s, &p)[0], None);
        assert_eq!(decode_systematic(&moved, &p).unwrap(), pi);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let p = smoke();
        assert!(decode_systematic(&Permutation::identity(871), &p).is_err());
        assert!(encode_systematic(&Permutation::identity(870), &p).is_err());
    }
}
