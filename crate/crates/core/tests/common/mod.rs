//! Independent reference values for the integration tests.
#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_3, PI};

/// Bernoulli numbers `B_0..=B_m` from the standard recurrence.
fn bernoulli(m: usize) -> Vec<f64> {
    let mut b = vec![0.0; m + 1];
    b[0] = 1.0;
    for k in 1..=m {
        let mut acc = 0.0;
        let mut binom = 1.0; // C(k+1, j)
        for (j, bj) in b.iter().enumerate().take(k) {
            acc += binom * bj;
            binom *= (k + 1 - j) as f64 / (j + 1) as f64;
        }
        b[k] = -acc / (k as f64 + 1.0);
    }
    b
}

/// Lobachevsky function `Λ(θ) = ½ Cl₂(2θ)` for `0 < θ ≤ π/2`, from the
/// Bernoulli series of the Clausen function.
pub fn lobachevsky(theta: f64) -> f64 {
    let x = 2.0 * theta;
    let b = bernoulli(40);
    let mut sum = x - x * x.ln();
    let mut fact = 1.0; // (2k+1)!
    let mut pow = x; // x^{2k+1}
    for k in 1..=20 {
        fact *= (2 * k) as f64 * (2 * k + 1) as f64;
        pow *= x * x;
        sum += b[2 * k].abs() * pow / (2.0 * k as f64 * fact);
    }
    0.5 * sum
}

/// Volume of the regular ideal tetrahedron, `3Λ(π/3)`.
pub fn ideal_tetrahedron() -> f64 {
    3.0 * lobachevsky(FRAC_PI_3)
}

/// Area of the regular hyperbolic triangle with Klein circumradius `sin t`:
/// `π - 3θ` with `cot(θ/2) = cosh(atanh(sin t)) · tan(π/3)`.
pub fn triangle_area(sin_t: f64) -> f64 {
    let cosh_r = 1.0 / ((1.0 - sin_t) * (1.0 + sin_t)).sqrt();
    let theta = 2.0 * (1.0 / (cosh_r * 3f64.sqrt())).atan();
    PI - 3.0 * theta
}

#[test]
fn oracles_agree_with_high_precision_values() {
    assert!((ideal_tetrahedron() - 1.014_941_606_409_653_6).abs() < 1e-14);
    assert!((triangle_area(0.6) - 0.545_455_788_938_081).abs() < 1e-14);
    assert!((triangle_area(0.3f64.sin()) - 0.117_334_555_840_863).abs() < 1e-14);
}
