//! Seeded random streams.
//!
//! Every random choice draws from a ChaCha8 stream keyed by
//! `SHA-256(master seed, purpose label, class ids)`, so a stream's output
//! depends only on what it is used for, never on the order in which streams
//! are created or on which thread uses them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// The generator type used throughout the crate.
pub type StreamRng = ChaCha8Rng;

/// Derives the stream for `(seed, label, ids)`.
pub fn stream(seed: u64, label: &str, ids: &[u64]) -> StreamRng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update((label.len() as u64).to_le_bytes());
    h.update(label.as_bytes());
    for id in ids {
        h.update(id.to_le_bytes());
    }
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}

/// A derived 64-bit seed, for handing a sub-seed to another component.
pub fn derive_seed(seed: u64, label: &str, ids: &[u64]) -> u64 {
    use rand::RngCore;
    stream(seed, label, ids).next_u64()
}
