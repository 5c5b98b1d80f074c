//! Seed derivation for reproducible substreams.
//!
//! Every random choice in the crate flows from a ChaCha8 generator seeded
//! with a 64-bit value. Substreams (one per replicate, one per purpose) are
//! derived with a SplitMix64 finalizer over the master seed and a list of
//! coordinate tags, so the stream for replicate k never depends on how many
//! replicates run in total and parallel execution stays reproducible.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer step.
pub fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a substream seed from a master seed and coordinate tags
/// (for example `[network, case, replicate, purpose]`). Deterministic, and
/// distinct tag lists give independent-looking seeds.
pub fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    let mut s = splitmix64(master);
    for &t in tags {
        s = splitmix64(s ^ splitmix64(t));
    }
    s
}

/// ChaCha8 generator for the given substream.
pub fn substream_rng(master: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, tags))
}
