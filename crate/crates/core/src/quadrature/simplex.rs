use super::nested::{integrate_iterated, NestedIntegrand};
use super::{QuadratureConfig, VolumeEstimate};
use crate::stable::ln_factorial;
use crate::{Error, Result};

/// Euclidean volume of the regular n-simplex with circumradius `scale`:
/// `scale^n (n+1)^{(n+1)/2} / (n! n^{n/2})`.
pub fn euclidean_simplex_volume(n: usize, scale: f64) -> f64 {
    let nf = n as f64;
    let ln = 0.5 * (nf + 1.0) * (nf + 1.0).ln() - ln_factorial(n) - 0.5 * nf * nf.ln();
    scale.powi(n as i32) * ln.exp()
}

/// `∫_{scale·S(n)} (1 - |x|²)^{-p} dx`.
///
/// `scale = 1` (vertices on the unit sphere) is accepted for
/// `p ≤ (n+1)/2`, which covers the Cayley–Klein volume element.
pub fn integrate_simplex_radialpow(
    n: usize,
    scale: f64,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<VolumeEstimate> {
    radialpow_with_complement(n, scale, (1.0 - scale) * (1.0 + scale), p, cfg)
}

/// As [`integrate_simplex_radialpow`] with `1 - scale²` supplied by the
/// caller (e.g. as `cos² t`), which matters when `scale` is within a few ulps
/// of 1.
pub(crate) fn radialpow_with_complement(
    n: usize,
    scale: f64,
    one_minus_scale_sq: f64,
    p: f64,
    cfg: &QuadratureConfig,
) -> Result<VolumeEstimate> {
    cfg.validate()?;
    if n < 1 {
        return Err(Error::domain("simplex dimension must be at least 1"));
    }
    if !(0.0..=1.0).contains(&scale) || !p.is_finite() {
        return Err(Error::domain(format!("scale = {scale} outside [0, 1]")));
    }
    if one_minus_scale_sq <= 0.0 && p > 0.5 * (n as f64 + 1.0) {
        return Err(Error::domain(format!(
            "integrand (1-r²)^-{p} not integrable over the ideal simplex in dimension {n}"
        )));
    }
    if scale == 0.0 {
        return Ok(VolumeEstimate::zero("simplex-duffy"));
    }
    let cube = OrthoschemeCube::new(n, scale, one_minus_scale_sq.max(0.0), p);
    let est = integrate_iterated(&cube, cfg).map_err(|e| match e {
        Error::NotConverged { level, best } => Error::NotConverged {
            level,
            best: best.scaled(cube.prefactor),
        },
        other => other,
    })?;
    let mut est = est.scaled(cube.prefactor);
    est.method = format!("simplex-duffy/{}", est.method);
    Ok(est)
}

/// The simplex is `(n+1)!` congruent copies of the Euclidean orthoscheme
/// `E_1 K_1 … K_{n-1} O`, whose edges `a_k = |K_{k-1} K_k|` are mutually
/// orthogonal. A point of the orthoscheme is `E_1 + Σ μ_k a_k f_k` with
/// `1 ≥ μ_1 ≥ … ≥ μ_n ≥ 0`. The cone from the vertex `E_1` is `μ = ρ β`
/// with `β_1 = 1`, and the remaining `β` collapse to a cube through
/// `β_k = c_2⋯c_k`. Finally `ρ = σ²` absorbs the `ρ^{-1/2}` behaviour at an
/// ideal vertex.
///
/// Levels `0..n-2` are `c_2..c_n`; the innermost level is `σ`.
struct OrthoschemeCube {
    n: usize,
    /// `a_k²`, `k = 1..n`.
    edge_sq: Vec<f64>,
    one_minus_scale_sq: f64,
    p: f64,
    prefactor: f64,
}

impl OrthoschemeCube {
    fn new(n: usize, scale: f64, one_minus_scale_sq: f64, p: f64) -> Self {
        let nf = n as f64;
        // |O K_j|² / scale² for j = 0..n
        let q = |j: usize| (nf - j as f64) / (nf * (j as f64 + 1.0));
        let edge_sq: Vec<f64> = (1..=n).map(|k| scale * scale * (q(k - 1) - q(k))).collect();
        let ln_edges: f64 = edge_sq.iter().map(|a2| 0.5 * a2.ln()).sum();
        let prefactor = (ln_factorial(n + 1) + ln_edges).exp();
        Self {
            n,
            edge_sq,
            one_minus_scale_sq,
            p,
            prefactor,
        }
    }
}

impl NestedIntegrand for OrthoschemeCube {
    fn depth(&self) -> usize {
        self.n
    }

    fn limits(&self, _level: usize, _outer: &[f64]) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn weight(&self, level: usize, outer: &[f64], x: f64) -> f64 {
        let n = self.n;
        if level + 1 < n {
            // c_{level+2} carries the Duffy Jacobian c^{n-k}
            return x.powi((n - level - 2) as i32);
        }
        let sigma = x;
        let rho = sigma * sigma;
        let (mut s1, mut s2) = (self.edge_sq[0], self.edge_sq[0]);
        let mut beta = 1.0;
        for (k, &c) in outer.iter().enumerate() {
            beta *= c;
            s1 += beta * self.edge_sq[k + 1];
            s2 += beta * beta * self.edge_sq[k + 1];
        }
        // 1 - |x|² = (1 - scale²) + 2ρ S1 - ρ² S2
        let gap = self.one_minus_scale_sq + rho * (2.0 * s1 - rho * s2);
        let jac = 2.0 * sigma.powi(2 * n as i32 - 1);
        if self.p == 0.0 {
            jac
        } else {
            jac * gap.powf(-self.p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn euclidean_volumes() {
        assert!((euclidean_simplex_volume(2, 1.0) - 3.0 * 3f64.sqrt() / 4.0).abs() < 1e-15);
        // regular tetrahedron with edge a: a³/(6√2), a = √(8/3) for R = 1
        let a = (8.0f64 / 3.0).sqrt();
        assert!((euclidean_simplex_volume(3, 1.0) - a.powi(3) / (6.0 * 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn p_zero_gives_euclidean_volume() {
        for n in 1..=5 {
            let r = integrate_simplex_radialpow(n, 0.7, 0.0, &cfg()).unwrap();
            let e = euclidean_simplex_volume(n, 0.7);
            assert!((r.value - e).abs() < 1e-13 * e, "n={n}");
        }
        let r = integrate_simplex_radialpow(2, 1.0, 0.0, &cfg()).unwrap();
        assert!((r.value - 1.299_038_105_676_658).abs() < 1e-14);
    }

    #[test]
    fn zero_scale() {
        assert_eq!(
            integrate_simplex_radialpow(4, 0.0, 2.5, &cfg())
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn divergent_configuration() {
        assert!(integrate_simplex_radialpow(2, 1.0, 1.6, &cfg()).is_err());
        assert!(integrate_simplex_radialpow(2, 1.1, 1.0, &cfg()).is_err());
    }

    #[test]
    fn hyperbolic_triangle_gauss_bonnet() {
        // area of the regular triangle with Klein circumradius 3/5
        let r = integrate_simplex_radialpow(2, 0.6, 1.5, &cfg()).unwrap();
        let theta = 2.0 * (1.0 / (1.25 * 3f64.sqrt())).atan();
        let area = std::f64::consts::PI - 3.0 * theta;
        assert!((r.value - area).abs() < 1e-11, "{} vs {}", r.value, area);
        assert!((area - 0.545_455_788_938_081).abs() < 1e-14);
    }

    #[test]
    fn ideal_triangle_is_pi() {
        let r = integrate_simplex_radialpow(2, 1.0, 1.5, &cfg()).unwrap();
        assert!(
            (r.value - std::f64::consts::PI).abs() < 1e-10,
            "{}",
            r.value
        );
    }
}
