//! Permutation codes in the block permutation and generalized Cayley
//! metrics.
//!
//! - [`perm`] and [`extension`]: permutations, the block permutation metric,
//!   extensions and truncations.
//! - [`gfq`]: prime-field and polynomial arithmetic.
//! - [`coset`]: the syndrome-bucketed `t`-block permutation code and its
//!   decoder.
//! - [`systematic`]: the systematic code built on extension sequences.
//! - [`analysis`]: ball-size and rate bounds plus brute-force oracles.
//! - [`channel`]: seeded error channels.

pub mod analysis;
pub mod channel;
pub mod coset;
pub mod error;
pub mod extension;
pub mod gfq;
pub mod perm;
pub mod systematic;

pub use error::{DecodeError, Error, Result};
pub use perm::Permutation;

/// Reads the enumeration guard from `PERMCODE_ENUM_CAP`, falling back to
/// `default`. Meant for tests and experiments.
pub fn enumeration_cap(default: usize) -> usize {
    std::env::var("PERMCODE_ENUM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}
