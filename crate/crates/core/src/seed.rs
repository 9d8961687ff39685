//! Stable seed derivation. Rust's `DefaultHasher` is not guaranteed
//! stable across releases, so reproducible seeds go through an
//! explicit splitmix64 fold instead.

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds a sequence of words into one 64-bit seed.
pub(crate) fn derive(values: &[u64]) -> u64 {
    let mut h = 0x51ab_2e01_9c63_f9a7u64;
    for &v in values {
        h = splitmix64(h ^ v);
    }
    h
}
