use serde::Serialize;

use super::tagged;
use crate::geometry::{circumradius, edge_length, halfspace_embedding, HalfspaceEmbedding};
use crate::quadrature::{
    integrate_iterated, Method, NestedIntegrand, QuadratureConfig, VolumeEstimate,
};
use crate::{Error, Result, SimplexParams};

/// The half-space form is only evaluated for `t ≤ π/2 - HALFSPACE_MAX_T_OFFSET`;
/// closer to the ideal simplex use [`volume_halfspace_extrapolated`].
pub const HALFSPACE_MAX_T_OFFSET: f64 = 1e-6;

/// Offsets `π/2 - t` used by [`volume_halfspace_extrapolated`] by default.
pub const DEFAULT_IDEAL_OFFSETS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Height bounds `(lo, hi)` of the simplex above a horizontal point `v` of the
/// projected facet: `lo² = 1 - |v|²` (above the unit hemisphere) and
/// `hi² = A - B·α(v) - |v|²` (inside the facet sphere of the cone holding `v`).
pub fn zn_bounds(emb: &HalfspaceEmbedding, v: &[f64]) -> Result<(f64, f64)> {
    if v.len() != emb.n - 1 {
        return Err(Error::domain(format!(
            "point must have {} coordinates",
            emb.n - 1
        )));
    }
    let (_, alpha) = emb
        .locate_cone(v)
        .ok_or_else(|| Error::domain("point outside the projected facet"))?;
    let sum: f64 = alpha.iter().sum();
    let sq: f64 = alpha.iter().map(|a| a * a).sum();
    let m = (emb.n - 1) as f64;
    let one_minus_q = 1.0 - ((m + 1.0) * sq - sum * sum) / m;
    let lo2 = emb.cos_alpha * emb.cos_alpha + emb.sin_alpha * emb.sin_alpha * one_minus_q;
    let hi2 = lo2 + emb.height_slope * (1.0 - sum);
    Ok((lo2.sqrt(), hi2.sqrt()))
}

/// Volume by integrating `z^{-n}` vertically between the unit hemisphere and
/// the facet sphere above each point of the projected facet.
pub fn volume_halfspace(params: &SimplexParams, cfg: &QuadratureConfig) -> Result<VolumeEstimate> {
    cfg.validate()?;
    if params.is_degenerate() {
        return Err(Error::DegenerateEmbedding(
            "halfspace undefined at degenerate t = 0".into(),
        ));
    }
    if params.cos_t() < HALFSPACE_MAX_T_OFFSET.sin() {
        return Err(Error::DegenerateEmbedding(format!(
            "halfspace undefined at ideal t (t = {} is within {HALFSPACE_MAX_T_OFFSET:e} of π/2; \
             extrapolate instead)",
            params.t()
        )));
    }
    let emb = halfspace_embedding(params)?;
    let slab = Slab {
        n: params.n(),
        cos2: emb.cos_alpha * emb.cos_alpha,
        sin2: emb.sin_alpha * emb.sin_alpha,
        slope: emb.height_slope,
    };
    slab.integrate(cfg, "halfspace")
}

/// Evaluate [`volume_halfspace`] at `t = π/2 - ε` for each offset and
/// extrapolate to `ε = 0` with [`extrapolate_to_zero`].
pub fn volume_halfspace_extrapolated(
    n: usize,
    offsets: &[f64],
    cfg: &QuadratureConfig,
) -> Result<VolumeEstimate> {
    if offsets.len() < 2 {
        return Err(Error::domain("extrapolation needs at least two offsets"));
    }
    let samples = offsets
        .iter()
        .map(|&eps| {
            Ok((
                eps,
                volume_halfspace(&SimplexParams::near_ideal(n, eps)?, cfg)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    extrapolate_to_zero(&samples)
}

/// Neville interpolation of `(ε_i, V_i)` evaluated at `ε = 0`.
///
/// The error estimate is the change from dropping the sample with the largest
/// `ε`, plus the quadrature errors weighted by the interpolation weights.
pub fn extrapolate_to_zero(samples: &[(f64, VolumeEstimate)]) -> Result<VolumeEstimate> {
    if samples.is_empty() {
        return Err(Error::domain("no samples to extrapolate"));
    }
    let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    for (i, a) in xs.iter().enumerate() {
        if xs[..i].contains(a) {
            return Err(Error::domain("extrapolation offsets must be distinct"));
        }
    }
    let ys: Vec<f64> = samples.iter().map(|s| s.1.value).collect();
    let full = neville_at_zero(&xs, &ys);
    let widest = xs
        .iter()
        .enumerate()
        .fold(0, |best, (i, x)| if *x > xs[best] { i } else { best });
    let trunc = if samples.len() > 1 {
        let (xr, yr): (Vec<f64>, Vec<f64>) = xs
            .iter()
            .zip(&ys)
            .enumerate()
            .filter(|(i, _)| *i != widest)
            .map(|(_, (x, y))| (*x, *y))
            .unzip();
        (full - neville_at_zero(&xr, &yr)).abs()
    } else {
        0.0
    };
    // Lagrange weights at 0
    let propagated: f64 = (0..xs.len())
        .map(|i| {
            let w: f64 = (0..xs.len())
                .filter(|&j| j != i)
                .map(|j| xs[j] / (xs[j] - xs[i]))
                .product();
            w.abs() * samples[i].1.error_estimate
        })
        .sum();
    let evals = samples.iter().map(|s| s.1.n_evals).sum();
    Ok(VolumeEstimate::new(
        full,
        trunc + propagated,
        evals,
        format!("richardson{}/{}", samples.len(), samples[0].1.method),
    ))
}

fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let k = xs.len();
    for level in 1..k {
        for i in 0..k - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

/// Which upper-height expression the general half-space formula uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum UpperHeight {
    /// `X² - (X² - 1)·α(v) - |v|²` with `X = e^{r+d}`. Reduces to the regular
    /// formula at the regular `(r, d)`.
    #[default]
    Consistent,
    /// `(X + 1)² - X(X + 2)·α(v) - |v|²`, the expression as commonly quoted.
    /// It does not reduce to the regular formula; kept for comparison.
    AsPrinted,
}

/// A simplex with a regular `(n-1)`-dimensional base whose apex lies on the
/// line through the base centre orthogonal to it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasiRegularParams {
    n: usize,
    r: f64,
    d: f64,
    facet_circumradius: f64,
}

impl QuasiRegularParams {
    /// `r`: circumcentre to apex; `d`: circumcentre to base centre;
    /// `facet_circumradius`: hyperbolic circumradius of the base.
    pub fn new(n: usize, r: f64, d: f64, facet_circumradius: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("dimension must be at least 2"));
        }
        if !(r.is_finite() && d > 0.0 && r >= d) {
            return Err(Error::domain(format!("need r ≥ d > 0 (r = {r}, d = {d})")));
        }
        if !(facet_circumradius >= 0.0) {
            return Err(Error::domain("facet circumradius must be nonnegative"));
        }
        Ok(Self {
            n,
            r,
            d,
            facet_circumradius,
        })
    }

    /// The quasi-regular data of `τ[n,t]` itself: `r = r_n`, `d = d_n` and
    /// base circumradius `r_{n-1}`.
    pub fn regular(params: &SimplexParams) -> Result<Self> {
        let n = params.n();
        let r = circumradius(params, n)?;
        if r.is_infinite() {
            return Err(Error::DegenerateEmbedding("ideal simplex has r = ∞".into()));
        }
        Self::new(
            n,
            r.value(),
            edge_length(params, n)?.value(),
            circumradius(params, n - 1)?.value(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn facet_circumradius(&self) -> f64 {
        self.facet_circumradius
    }
}

/// The half-space volume formula with the apex height set by `(r, d)`.
pub fn volume_halfspace_general(
    q: &QuasiRegularParams,
    height: UpperHeight,
    cfg: &QuadratureConfig,
) -> Result<VolumeEstimate> {
    cfg.validate()?;
    if q.facet_circumradius == 0.0 {
        return Ok(VolumeEstimate::zero("halfspace-general"));
    }
    if q.facet_circumradius.is_infinite() {
        return Err(Error::Geometry(
            "base with infinite circumradius has zero height at its vertices".into(),
        ));
    }
    let x = q.r + q.d;
    // B = H² - 1 where H² is the squared apex height
    let slope = match height {
        UpperHeight::Consistent => (2.0 * x).exp_m1(),
        UpperHeight::AsPrinted => {
            let e = x.exp();
            e * (e + 2.0)
        }
    };
    if !(slope >= 0.0) {
        return Err(Error::Geometry(
            "upper height falls below the unit hemisphere".into(),
        ));
    }
    let th = q.facet_circumradius.tanh();
    let ch = q.facet_circumradius.cosh();
    let slab = Slab {
        n: q.n,
        cos2: 1.0 / (ch * ch),
        sin2: th * th,
        slope,
    };
    slab.integrate(cfg, "halfspace-general")
}

/// `(1/(n-1)) ∫_ε [lo^{-(n-1)} - hi^{-(n-1)}] dv` over the projected facet,
/// where `lo² = cos²α + sin²α(1 - Q)` and `hi² = lo² + B(1 - Σα)`.
///
/// The facet is `n` congruent cones, each the union of `(n-1)!` copies of the
/// ordered region `α_1 ≥ … ≥ α_{n-1}` of the standard simplex. Only the
/// vertex `α = e_1` (a facet vertex, where `lo` is smallest) can make the
/// integrand steep, so the ordered region is collapsed onto it with Duffy
/// coordinates and a square-root radial map.
struct Slab {
    n: usize,
    cos2: f64,
    sin2: f64,
    slope: f64,
}

impl Slab {
    fn integrate(&self, cfg: &QuadratureConfig, tag: &str) -> Result<VolumeEstimate> {
        if cfg.method == Method::MonteCarlo {
            return Err(Error::Capability(
                "half-space form has no Monte Carlo mode".into(),
            ));
        }
        let m = self.n - 1;
        let mf = m as f64;
        // |det[v_j]| over one cone: sqrt of the Gram determinant
        let det = (self.sin2.powi(m as i32) * (1.0 + 1.0 / mf).powi(m as i32 - 1) / mf).sqrt();
        // n cones, m! ordered regions each of α-volume 1/(m!)², λ-simplex volume 1/m!
        let factor = self.n as f64 / mf * det;
        let cube = SlabCube { slab: self, m };
        tagged(integrate_iterated(&cube, cfg), tag, factor)
    }

    /// Integrand at ordered-region point given by simplex weights `λ` w.r.t.
    /// `(0, P_2, …, P_m)` measured from `e_1`, where `P_k = (e_1+…+e_k)/k`.
    fn integrand(&self, lambda: &[f64]) -> f64 {
        let m = lambda.len();
        let mf = m as f64;
        // α_1 = 1 - a, α_i = Σ_{k≥i} λ_k/k (i ≥ 2)
        let mut a = lambda[0];
        let mut tail = 0.0;
        let mut rest_sum = 0.0;
        let mut rest_sq = 0.0;
        for i in (1..m).rev() {
            let k = (i + 1) as f64;
            a += lambda[i] * (1.0 - 1.0 / k);
            tail += lambda[i] / k;
            rest_sum += tail;
            rest_sq += tail * tail;
        }
        // (m)(1-Q) expanded around the vertex so no leading cancellation
        let diff = a - rest_sum;
        let m_one_minus_q =
            2.0 * mf * a + 2.0 * rest_sum - (mf + 1.0) * (a * a + rest_sq) + diff * diff;
        let lo2 = self.cos2 + self.sin2 * (m_one_minus_q / mf).max(0.0);
        let one_minus_s = lambda[0];
        let half_m = 0.5 * mf;
        let ratio = self.slope * one_minus_s / lo2;
        // lo^{-m} (1 - (lo²/hi²)^{m/2})
        -lo2.powf(-half_m) * (-half_m * ratio.ln_1p()).exp_m1()
    }
}

/// Cube coordinates `(u_2, …, u_m, σ)` with `u_1 = σ²`:
/// `λ_1 = u_1(1-u_2)`, `λ_2 = u_1 u_2(1-u_3)`, …, `λ_m = u_1⋯u_m`.
struct SlabCube<'a> {
    slab: &'a Slab,
    m: usize,
}

impl NestedIntegrand for SlabCube<'_> {
    fn depth(&self) -> usize {
        self.m
    }

    fn limits(&self, _level: usize, _outer: &[f64]) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn weight(&self, level: usize, outer: &[f64], x: f64) -> f64 {
        let m = self.m;
        if level + 1 < m {
            // u_{level+2}, Jacobian exponent m - (level + 2)
            return x.powi((m - level - 2) as i32);
        }
        let sigma = x;
        let u1 = sigma * sigma;
        let mut lambda = vec![0.0; m];
        let mut prod = u1;
        for j in 0..m {
            if j + 1 < m {
                let u = outer[j];
                lambda[j] = prod * (1.0 - u);
                prod *= u;
            } else {
                lambda[j] = prod;
            }
        }
        2.0 * sigma.powi(2 * m as i32 - 1) * self.slab.integrand(&lambda)
    }
}
