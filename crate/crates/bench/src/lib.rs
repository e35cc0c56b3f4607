//! Shared fixtures for the benchmark suite.

use listlab_core::caps::Caps;
use listlab_core::codes::{rm_code, LinearCode};

/// Caps wide enough for every benchmark input.
pub fn bench_caps() -> Caps {
    Caps::default()
}

/// The workhorse mid-size code: RM(4,2), N = 16, dim = 11.
pub fn mid_code() -> LinearCode {
    rm_code(4, 2).expect("valid parameters")
}

/// A larger enumeration target: RM(5,2), N = 32, dim = 16.
pub fn large_code() -> LinearCode {
    rm_code(5, 2).expect("valid parameters")
}
