use crate::stable::binomial;

/// `F_m(x) = ∫_0^x cosh^m u du` in closed form.
///
/// Even powers carry a linear term from the constant of the power-reduction
/// identity; odd powers are a pure sum of `sinh` harmonics.
pub fn cosh_power_antiderivative(m: usize, x: f64) -> f64 {
    if m == 0 {
        return x;
    }
    let k = m / 2;
    if m.is_multiple_of(2) {
        let linear = binomial(2 * k, k) / 4f64.powi(k as i32) * x;
        let harmonics: f64 = (0..k)
            .map(|l| {
                let h = 2 * (k - l);
                binomial(2 * k, l) * (h as f64 * x).sinh() / h as f64
            })
            .sum();
        linear + harmonics / 2f64.powi(2 * k as i32 - 1)
    } else {
        let harmonics: f64 = (0..=k)
            .map(|l| {
                let h = 2 * (k - l) + 1;
                binomial(2 * k + 1, l) * (h as f64 * x).sinh() / h as f64
            })
            .sum();
        harmonics / 4f64.powi(k as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_adaptive, QuadratureConfig};

    #[test]
    fn low_powers() {
        assert_eq!(cosh_power_antiderivative(3, 0.0), 0.0);
        assert!((cosh_power_antiderivative(0, 0.7) - 0.7).abs() < 1e-16);
        assert!((cosh_power_antiderivative(1, 1.0) - 1f64.sinh()).abs() < 1e-15);
        assert!((cosh_power_antiderivative(2, 1.0) - 1.406_715_101_961_754_7).abs() < 1e-15);
    }

    #[test]
    fn matches_quadrature() {
        let cfg = QuadratureConfig::default().with_rel_tol(1e-13);
        for m in 0..=12 {
            let q = integrate_adaptive(|x| x.cosh().powi(m as i32), 0.0, 2.0, &cfg).unwrap();
            let f = cosh_power_antiderivative(m, 2.0);
            assert!(
                (q.value - f).abs() <= 1e-10 * f.max(1.0),
                "m={m}: {} vs {f}",
                q.value
            );
        }
    }

    #[test]
    fn odd_in_x() {
        for m in 0..6 {
            let a = cosh_power_antiderivative(m, 0.4);
            assert_eq!(cosh_power_antiderivative(m, -0.4), -a);
        }
    }
}
