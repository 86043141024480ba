//! Branch-stable elementary functions used by the closed forms.
//!
//! Most quantities here are hyperbolic lengths whose tanh approaches 1 as the
//! simplex becomes ideal. They are carried as the pair `(x, 1 - x)` with the
//! complement computed from `cos² t` rather than by subtraction.

/// `atanh(x)` given `x` and an accurately computed `1 - x`.
///
/// Returns `+∞` when the complement is zero.
pub fn atanh_parts(x: f64, one_minus_x: f64) -> f64 {
    if one_minus_x <= 0.0 {
        return f64::INFINITY;
    }
    if x.abs() < 0.5 {
        // log1p branch: accurate near zero
        x.atanh()
    } else {
        0.5 * ((1.0 + x) / one_minus_x).ln()
    }
}

/// `atanh(x) = ½·ln((1+x)/(1-x))` via `log1p`.
pub fn atanh(x: f64) -> f64 {
    0.5 * (2.0 * x / (1.0 - x)).ln_1p()
}

/// `1 - sin t` for `t ∈ [0, π/2]` without cancellation.
pub fn one_minus_sin(sin_t: f64, cos_t: f64) -> f64 {
    cos_t * cos_t / (1.0 + sin_t)
}

/// Natural log of `k!`, accumulated term by term.
pub fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|j| (j as f64).ln()).sum()
}

/// Binomial coefficient as a float; exact for the small arguments used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atanh_parts_matches_std() {
        for &x in &[0.0, 1e-9, 0.3, 0.5, 0.9, 0.999_999] {
            let a = atanh_parts(x, 1.0 - x);
            assert!((a - f64::atanh(x)).abs() <= 1e-14 * a.max(1.0), "{x}");
        }
        assert!(atanh_parts(1.0, 0.0).is_infinite());
    }

    #[test]
    fn one_minus_sin_near_quarter_turn() {
        let eps = 1e-6_f64;
        // t = π/2 - eps, without rounding π/2
        let v = one_minus_sin(eps.cos(), eps.sin());
        // 1 - cos(eps) = 2 sin²(eps/2)
        let exact = 2.0 * (eps / 2.0).sin().powi(2);
        assert!((v - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn factorials() {
        assert!((ln_factorial(5) - 120f64.ln()).abs() < 1e-14);
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(12, 0), 1.0);
    }
}
