use super::tagged;
use crate::geometry::circumradius;
use crate::quadrature::{
    monte_carlo_simplex, radialpow_with_complement, Method, QuadratureConfig, VolumeEstimate,
};
use crate::{Error, Result, SimplexParams};

/// Volume from the Cayley–Klein volume element `(1-|x|²)^{-(n+1)/2}` over the
/// Euclidean simplex of circumradius `sin t`.
///
/// With [`Method::MonteCarlo`] the same integral is sampled instead.
pub fn volume_projective(params: &SimplexParams, cfg: &QuadratureConfig) -> Result<VolumeEstimate> {
    let n = params.n();
    let (s, c) = (params.sin_t(), params.cos_t());
    klein_volume(n, s, c * c, cfg, "projective")
}

/// Volume of one facet `τ_i[n,t]`: a regular `(n-1)`-simplex whose Klein
/// circumradius is `tanh r_{n-1}`.
pub fn facet_volume_projective(
    params: &SimplexParams,
    cfg: &QuadratureConfig,
) -> Result<VolumeEstimate> {
    let n = params.n();
    if n < 3 {
        return Err(Error::domain("facet volume needs n ≥ 3"));
    }
    let r = circumradius(params, n - 1)?;
    let scale = r.tanh();
    // 1 - tanh² = (1 - tanh)(1 + tanh)
    let complement = r.co_tanh() * (1.0 + scale);
    klein_volume(n - 1, scale, complement, cfg, "facet-projective")
}

fn klein_volume(
    n: usize,
    scale: f64,
    complement: f64,
    cfg: &QuadratureConfig,
    tag: &str,
) -> Result<VolumeEstimate> {
    cfg.validate()?;
    if scale == 0.0 {
        return Ok(VolumeEstimate::zero(tag));
    }
    let p = 0.5 * (n as f64 + 1.0);
    match cfg.method {
        Method::Adaptive => tagged(
            radialpow_with_complement(n, scale, complement, p, cfg),
            tag,
            1.0,
        ),
        Method::MonteCarlo => {
            let f = move |x: &[f64]| {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                (1.0 - r2).powf(-p)
            };
            tagged(monte_carlo_simplex(n, scale, f, cfg), tag, 1.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn degenerate_is_zero() {
        let p = SimplexParams::new(4, 0.0).unwrap();
        assert_eq!(volume_projective(&p, &cfg()).unwrap().value, 0.0);
        assert_eq!(
            facet_volume_projective(&p.with_dim(3).unwrap(), &cfg())
                .unwrap()
                .value,
            0.0
        );
    }

    #[test]
    fn triangle_and_ideal_facet() {
        let p = SimplexParams::from_sin(2, 0.6).unwrap();
        let v = volume_projective(&p, &cfg()).unwrap();
        assert!((v.value - 0.545_455_788_938_081).abs() < 1e-10);
        let p = SimplexParams::ideal(3).unwrap();
        let f = facet_volume_projective(&p, &cfg()).unwrap();
        assert!((f.value - PI).abs() < 1e-9, "{f}");
    }

    #[test]
    fn facet_of_tetrahedron() {
        let p = SimplexParams::from_sin(3, 0.6).unwrap();
        let f = facet_volume_projective(&p, &cfg()).unwrap();
        assert!((f.value - 0.498_528_675_561_602).abs() < 1e-10, "{f}");
    }

    #[test]
    fn facet_needs_three_dimensions() {
        let p = SimplexParams::from_sin(2, 0.6).unwrap();
        assert!(facet_volume_projective(&p, &cfg()).is_err());
    }
}
