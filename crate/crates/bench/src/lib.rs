//! Shared fixtures for the volume benchmarks.

use hypervol::SimplexParams;

/// `(n, t)` pairs covering small, moderate and near-ideal simplices.
pub const CASES: [(usize, f64); 5] = [(3, 0.3), (3, 1.3), (4, 0.8), (4, 1.5), (5, 0.8)];

pub fn params(n: usize, t: f64) -> SimplexParams {
    SimplexParams::new(n, t).expect("benchmark parameters are valid")
}
