//! Shared inputs for the benchmarks.

use sympert::{c, C64};

/// Deterministic points in the upper half-plane.
pub fn upper_half_plane_grid(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| {
            let s = (k as f64 + 0.5) / n as f64;
            c(-4.0 + 8.0 * s, 0.1 + 3.0 * (1.0 - s))
        })
        .collect()
}
