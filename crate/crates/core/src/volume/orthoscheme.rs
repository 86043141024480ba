use super::antiderivative::cosh_power_antiderivative;
use super::tagged;
use crate::geometry::{ladder, HypLength, OrthoschemeLadder};
use crate::quadrature::{
    integrate_iterated, Method, NestedIntegrand, QuadratureConfig, VolumeEstimate,
};
use crate::stable::{atanh, ln_factorial};
use crate::{Error, Result, SimplexParams};

/// Largest dimension accepted by [`volume_orthoscheme`]. The nested rule has
/// depth `n-1`, so its cost grows geometrically with `n`.
pub const ORTHOSCHEME_N_MAX: usize = 12;

/// Upper limits of the orthoscheme's orthogonal coordinates:
/// `α_k(x) = atanh(tanh d_{k+1} / sinh d_k · sinh x)` for `k = 1..n-1` and
/// `α_n = d_1`.
#[derive(Debug, Clone)]
pub struct AlphaChain {
    n: usize,
    d1: HypLength,
    /// `tanh d_{k+1} / sinh d_k`, index `k-1`.
    ratios: Vec<f64>,
    /// `tanh d_2`.
    tanh_d2: f64,
    /// `e^{-2 d_1}`.
    exp_m2d1: f64,
}

/// Largest `f64` below 1, the clamp for `tanh`-arguments.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

pub fn alpha_chain(ladder: &OrthoschemeLadder) -> Result<AlphaChain> {
    let n = ladder.n();
    let d = ladder.edges();
    if d[0].tanh() == 0.0 {
        return Err(Error::domain("alpha chain needs t > 0"));
    }
    let sinh_over = |h: &HypLength| {
        // 1/sinh = sqrt(1 - tanh²)/tanh, zero for an infinite length
        (h.co_tanh() * (1.0 + h.tanh())).sqrt() / h.tanh()
    };
    let ratios = (1..n).map(|k| d[k].tanh() * sinh_over(&d[k - 1])).collect();
    let t1 = d[0];
    Ok(AlphaChain {
        n,
        d1: t1,
        ratios,
        tanh_d2: d[1].tanh(),
        exp_m2d1: t1.co_tanh() / (1.0 + t1.tanh()),
    })
}

impl AlphaChain {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `tanh d_{k+1} / sinh d_k`, `k = 1..n-1`.
    pub fn ratio(&self, k: usize) -> f64 {
        self.ratios[k - 1]
    }

    /// `α_n = d_1`, infinite for the ideal simplex.
    pub fn alpha_n(&self) -> HypLength {
        self.d1
    }

    /// `α_k(x)` for `k = 1..n-1`; `x` is `x_n` when `k = 1` and `x_{k-1}`
    /// otherwise.
    pub fn alpha(&self, k: usize, x: f64) -> f64 {
        atanh((self.ratio(k) * x.sinh()).min(BELOW_ONE))
    }

    /// `α_1` written in terms of `w = e^{-(d_1 - x_n)}`, the exponential of
    /// minus the distance from `K_1` along the first axis. Finite even when
    /// `d_1 = ∞`.
    pub fn alpha_1_at_gap(&self, w: f64) -> f64 {
        let e = self.exp_m2d1;
        // sinh(d_1 - y)/sinh d_1 with w = e^{-y}
        let shrink = (w * w - e) / (w * (1.0 - e));
        atanh((self.tanh_d2 * shrink).clamp(0.0, BELOW_ONE))
    }

    /// Lower end `e^{-d_1}` of the `w` range.
    pub fn gap_floor(&self) -> f64 {
        self.exp_m2d1.sqrt()
    }
}

/// `(n+1)!` times the volume of the fundamental orthoscheme, integrated in
/// hyperbolic orthogonal coordinates.
///
/// The outermost coordinate runs over the edge `E_1 K_1`, which has infinite
/// length for the ideal simplex; it is measured from `K_1` and mapped to
/// `w = e^{-y} ∈ [e^{-d_1}, 1]`. The innermost coordinate is integrated in
/// closed form with [`cosh_power_antiderivative`].
pub fn volume_orthoscheme(
    params: &SimplexParams,
    cfg: &QuadratureConfig,
) -> Result<VolumeEstimate> {
    cfg.validate()?;
    let n = params.n();
    if n > ORTHOSCHEME_N_MAX {
        return Err(Error::Capability(format!(
            "orthoscheme form supports n ≤ {ORTHOSCHEME_N_MAX}, got {n}"
        )));
    }
    if cfg.method == Method::MonteCarlo {
        return Err(Error::Capability(
            "orthoscheme form has no Monte Carlo mode".into(),
        ));
    }
    if params.is_degenerate() {
        return Ok(VolumeEstimate::zero("orthoscheme"));
    }
    let chain = alpha_chain(&ladder(params))?;
    let factor = ln_factorial(n + 1).exp();
    tagged(
        integrate_iterated(&Orthoscheme { chain }, cfg),
        "orthoscheme",
        factor,
    )
}

/// Levels: `w`, then `x_1..x_{n-2}`; the tail integrates `x_{n-1}`.
struct Orthoscheme {
    chain: AlphaChain,
}

impl Orthoscheme {
    fn upper(&self, k: usize, prev: f64) -> f64 {
        if k == 1 {
            self.chain.alpha_1_at_gap(prev)
        } else {
            self.chain.alpha(k, prev)
        }
    }
}

impl NestedIntegrand for Orthoscheme {
    fn depth(&self) -> usize {
        self.chain.n - 1
    }

    fn limits(&self, level: usize, outer: &[f64]) -> (f64, f64) {
        if level == 0 {
            (self.chain.gap_floor(), 1.0)
        } else {
            (0.0, self.upper(level, outer[level - 1]))
        }
    }

    fn weight(&self, level: usize, _outer: &[f64], x: f64) -> f64 {
        if level == 0 {
            1.0 / x
        } else {
            x.cosh().powi(level as i32)
        }
    }

    fn tail(&self, point: &[f64]) -> f64 {
        let n = self.chain.n;
        let last = *point.last().unwrap();
        cosh_power_antiderivative(n - 1, self.upper(n - 1, last))
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
    fn chain_ratio_examples() {
        let p = SimplexParams::from_sin(3, 0.6).unwrap();
        let ch = alpha_chain(&ladder(&p)).unwrap();
        assert!((ch.ratio(2) - 11f64.sqrt() / 5.0).abs() < 1e-15);
        assert!((ch.alpha(2, 0.5) - 0.360_501_305_973_084).abs() < 1e-14);
        for k in 1..3 {
            assert_eq!(ch.alpha(k, 0.0), 0.0);
        }
    }

    #[test]
    fn last_ratio_closed_form() {
        for n in 2..=8 {
            for &s in &[0.1, 0.5, 0.9, 0.999] {
                let p = SimplexParams::from_sin(n, s).unwrap();
                let ch = alpha_chain(&ladder(&p)).unwrap();
                let nf = n as f64;
                let expected = ((nf - 1.0) / (nf + 1.0)).sqrt()
                    * (1.0 - 2.0 * s * s / (nf * (nf - 1.0))).sqrt();
                assert!((ch.ratio(n - 1) - expected).abs() < 1e-12, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn gap_form_matches_direct_form() {
        let p = SimplexParams::from_sin(4, 0.7).unwrap();
        let ch = alpha_chain(&ladder(&p)).unwrap();
        let d1 = ch.alpha_n().value();
        for &x in &[0.0, 0.1, 0.5, d1] {
            let w = (-(d1 - x)).exp();
            assert!((ch.alpha_1_at_gap(w) - ch.alpha(1, x)).abs() < 1e-13);
        }
    }

    #[test]
    fn chain_ends_at_face_centres() {
        // α_k evaluated at the previous edge end returns the next edge
        let p = SimplexParams::from_sin(5, 0.8).unwrap();
        let lad = ladder(&p);
        let ch = alpha_chain(&lad).unwrap();
        assert!((ch.alpha_1_at_gap(1.0) - lad.d(2).value()).abs() < 1e-13);
        for k in 2..5 {
            assert!((ch.alpha(k, lad.d(k).value()) - lad.d(k + 1).value()).abs() < 1e-13);
        }
    }

    #[test]
    fn triangle() {
        let p = SimplexParams::from_sin(2, 0.6).unwrap();
        let v = volume_orthoscheme(&p, &cfg()).unwrap();
        assert!((v.value - 0.545_455_788_938_081).abs() < 1e-10, "{v}");
        let v = volume_orthoscheme(&SimplexParams::ideal(2).unwrap(), &cfg()).unwrap();
        assert!((v.value - PI).abs() < 1e-9, "{v}");
    }

    #[test]
    fn ideal_tetrahedron() {
        let v = volume_orthoscheme(&SimplexParams::ideal(3).unwrap(), &cfg()).unwrap();
        assert!((v.value - 1.014_941_606_409_653_6).abs() < 1e-9, "{v}");
    }

    #[test]
    fn limits_and_modes() {
        let p = SimplexParams::new(13, 0.5).unwrap();
        assert!(matches!(
            volume_orthoscheme(&p, &cfg()),
            Err(Error::Capability(_))
        ));
        let p = SimplexParams::new(3, 0.0).unwrap();
        assert_eq!(volume_orthoscheme(&p, &cfg()).unwrap().value, 0.0);
    }
}
