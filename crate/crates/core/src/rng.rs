//! Seeded randomness. Every random choice in the crate flows through
//! [`seeded`], so a master seed plus a stream index fully determines output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// ChaCha8 generator for `(seed, stream)`. Distinct streams are independent,
/// which lets parallel workers derive per-item generators without sharing.
pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream index for a two-level position such as `(band, row)`.
pub fn stream2(hi: u64, lo: u64) -> u64 {
    (hi << 32) ^ lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = seeded(7, 1).gen();
        let b: u64 = seeded(7, 1).gen();
        let c: u64 = seeded(7, 2).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
