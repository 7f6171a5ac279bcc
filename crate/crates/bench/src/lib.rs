//! Inputs shared by the benchmarks.

use finalg_core::fixtures::by_name;
use finalg_core::{CarrierMap, FiniteAlgebra};

/// Fixtures timed by every group, smallest first.
pub const SIZES: &[&str] = &["Z4", "Z6", "Z8", "V4", "Sinf3", "Sinf16"];

pub fn fixture(name: &str) -> FiniteAlgebra {
    by_name(name).unwrap_or_else(|| panic!("unknown fixture {name}"))
}

/// A fixed pseudo-random map `0..n → 0..z` (xorshift, so runs are comparable).
pub fn sample_map(n: usize, z: usize, seed: u64) -> CarrierMap {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let values = (0..n)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % z as u64) as usize
        })
        .collect();
    CarrierMap::new(z, values).expect("values are below z")
}
