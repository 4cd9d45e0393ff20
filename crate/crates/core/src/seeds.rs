//! Deterministic seed derivation.
//!
//! Every randomized stage owns a seed derived from the run seed and a fixed
//! tag, so results are reproducible regardless of how stages are interleaved.

/// Mixes a base seed with a tag into an independent stream seed (splitmix64
/// finalizer over the combined words).
pub fn mix(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a base seed with two tags (stage, index).
pub fn mix2(seed: u64, tag_a: u64, tag_b: u64) -> u64 {
    mix(mix(seed, tag_a), tag_b)
}
