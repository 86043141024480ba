//! Closed-form bounds on the volume growth `V(τ[n,t]) / V(τ_i[n,t])`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::geometry::{circumradius, ladder};
use crate::linalg::solve;
use crate::quadrature::{QuadratureConfig, VolumeEstimate};
use crate::stable::{atanh, atanh_parts};
use crate::volume::{facet_volume_projective, volume_projective};
use crate::{Error, Result, SimplexParams};

/// All bounds available for one `(n, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthBounds {
    pub lower: f64,
    pub upper: f64,
    pub hm_lower: f64,
    pub hm_upper: f64,
}

impl GrowthBounds {
    pub fn new(params: &SimplexParams) -> Result<Self> {
        let (hm_lower, hm_upper) = hm_bounds(params.n())?;
        Ok(Self {
            lower: lower_bound(params)?,
            upper: upper_bound(params),
            hm_lower,
            hm_upper,
        })
    }

    /// `lower - slack ≤ ratio ≤ upper + slack`.
    pub fn contains(&self, ratio: f64, slack: f64) -> bool {
        self.lower - slack <= ratio && ratio <= self.upper + slack
    }
}

/// Two readings of the `atanh` argument in the lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum LowerBoundForm {
    /// `s√(1-q) / √(1 - s²q)` with `q = (n-1)/(2n)`, which is `tanh d_1`.
    #[default]
    SquareRoot,
    /// `s√(1-q) / (1 - s²q)`, the variant without the square root. The
    /// argument reaches 1 before `t = π/2`, past which this form is undefined.
    NoSquareRoot,
}

fn lower_q(n: usize) -> f64 {
    (n as f64 - 1.0) / (2.0 * n as f64)
}

/// Lower bound on the volume growth, for `n ≥ 3`:
///
/// ```text
/// (n+1) 2^{1-n} √(1-s²q) / (√(1-q) √(n²-s²)) · cos t · atanh(s√(1-q)/√(1-s²q))
/// ```
///
/// with `s = sin t`, `q = (n-1)/(2n)`. At `t = π/2` the factor
/// `cos t · atanh(…)` tends to 0, which is the value returned there.
pub fn lower_bound(params: &SimplexParams) -> Result<f64> {
    lower_bound_with(params, LowerBoundForm::SquareRoot)
}

pub fn lower_bound_with(params: &SimplexParams, form: LowerBoundForm) -> Result<f64> {
    let n = params.n();
    if n < 3 {
        return Err(Error::domain(format!("lower bound needs n ≥ 3, got {n}")));
    }
    let (s, c) = (params.sin_t(), params.cos_t());
    if s == 0.0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let q = lower_q(n);
    let a = 1.0 - s * s * q;
    let prefactor = (nf + 1.0) * 0.5f64.powi(n as i32 - 1) * a.sqrt()
        / ((1.0 - q).sqrt() * (nf * nf - s * s).sqrt());
    let log_term = match form {
        LowerBoundForm::SquareRoot => {
            if params.is_ideal() {
                return Ok(0.0);
            }
            // atanh(tanh d_1), complement computed without cancellation
            circumradius(params, 1)?.value()
        }
        LowerBoundForm::NoSquareRoot => {
            let x = s * (1.0 - q).sqrt() / a;
            if x >= 1.0 {
                return Err(Error::domain(format!(
                    "atanh argument {x} ≥ 1 at t = {} for the variant without square root",
                    params.t()
                )));
            }
            atanh(x)
        }
    };
    Ok(prefactor * c * log_term)
}

/// The lower bound written through the orthoscheme ladder:
/// `(n+1) 2^{1-n} · sinh d_n · cosh d_1 · d_1 / (cosh r_n · sinh d_1)`.
/// Agrees with [`lower_bound`]; used as an internal consistency check.
pub fn lower_bound_from_ladder(params: &SimplexParams) -> Result<f64> {
    let n = params.n();
    if n < 3 {
        return Err(Error::domain(format!("lower bound needs n ≥ 3, got {n}")));
    }
    if params.is_degenerate() || params.is_ideal() {
        return Ok(0.0);
    }
    let lad = ladder(params);
    let (d1, dn, rn) = (lad.d(1), lad.d(n), lad.r(n));
    Ok(
        (n as f64 + 1.0) * 0.5f64.powi(n as i32 - 1) * dn.sinh() * d1.value()
            / (rn.cosh() * d1.tanh()),
    )
}

/// Upper bound on the volume growth:
/// `(1/(n-1)) (1 - X^{(n-1)/2})` with
/// `X = n²(1-s)²(1+s) / ((n+s)²(1+s) - (n²-1)s²(1-s)²)`.
pub fn upper_bound(params: &SimplexParams) -> f64 {
    let nf = params.n() as f64;
    let s = params.sin_t();
    let oms = params.one_minus_sin();
    let x = nf * nf * oms * oms * (1.0 + s)
        / ((nf + s).powi(2) * (1.0 + s) - (nf * nf - 1.0) * s * s * oms * oms);
    -(0.5 * (nf - 1.0) * x.ln()).exp_m1() / (nf - 1.0)
}

/// Reference bounds `((n-2)/(n-1)², 1/(n-1))` for the ideal simplex.
pub fn hm_bounds(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::domain(format!(
            "reference bounds need n ≥ 2, got {n}"
        )));
    }
    let m = n as f64 - 1.0;
    Ok(((m - 1.0) / (m * m), 1.0 / m))
}

/// Volume-to-facet ratio of the Euclidean regular simplex, `(n+1)/n²`.
pub fn euclidean_limit_ratio(n: usize) -> f64 {
    let nf = n as f64;
    (nf + 1.0) / (nf * nf)
}

/// Measured `V(τ[n,t]) / V(τ_i[n,t])` from the projective volume forms, with
/// relative errors added.
pub fn growth_ratio(params: &SimplexParams, cfg: &QuadratureConfig) -> Result<VolumeEstimate> {
    Ok(facet_ratio_parts(params, cfg)?.0)
}

/// `(ratio, V(τ[n,t]), V(τ_i[n,t]))`.
pub(crate) fn facet_ratio_parts(
    params: &SimplexParams,
    cfg: &QuadratureConfig,
) -> Result<(VolumeEstimate, VolumeEstimate, VolumeEstimate)> {
    if params.n() < 3 {
        return Err(Error::domain("growth ratio needs n ≥ 3"));
    }
    if params.is_degenerate() {
        return Err(Error::domain("growth ratio undefined at t = 0"));
    }
    let v = volume_projective(params, cfg)?;
    let f = facet_volume_projective(params, cfg)?;
    Ok((ratio_of(&v, &f), v, f))
}

fn ratio_of(v: &VolumeEstimate, f: &VolumeEstimate) -> VolumeEstimate {
    let value = v.value / f.value;
    VolumeEstimate::new(
        value,
        value.abs() * (v.relative_error() + f.relative_error()),
        v.n_evals + f.n_evals,
        format!("{} ÷ {}", v.method, f.method),
    )
}

/// Default offsets `π/2 - t` for [`limit_audit`]: `10^{-1} … 10^{-6}`.
pub const AUDIT_OFFSETS: [f64; 6] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

/// Limit value claimed for `cos t · atanh(sin t)` as `t → π/2` in the
/// literature this crate checks against.
pub const CLAIMED_PRODUCT_LIMIT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditRow {
    pub t: f64,
    /// `π/2 - t`.
    pub eps: f64,
    /// `cos t · atanh(sin t)`.
    pub product: f64,
    /// `cos t · atanh(tanh d_1)`, the factor appearing in the lower bound.
    pub bound_product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitAudit {
    pub n: usize,
    pub rows: Vec<AuditRow>,
    /// Intercept of the least-squares fit `L + ε(b ln ε + c)` to `product`.
    pub fitted_limit: f64,
    pub fitted_bound_limit: f64,
    pub claimed_limit: f64,
    /// `product` strictly decreases as `t` increases.
    pub monotone_decreasing: bool,
}

impl LimitAudit {
    /// The empirical limit disagrees with the claimed one.
    pub fn conflicts_with_claim(&self) -> bool {
        (self.fitted_limit - self.claimed_limit).abs() > 0.1
    }
}

/// Evaluate `cos t · atanh(sin t)` and its lower-bound counterpart along an
/// increasing sequence of `t` approaching `π/2`, and fit the trend.
pub fn limit_audit(n: usize, t_sequence: &[f64]) -> Result<LimitAudit> {
    if n < 3 {
        return Err(Error::domain("limit audit needs n ≥ 3"));
    }
    if t_sequence.is_empty() {
        return Err(Error::domain("limit audit needs at least one t"));
    }
    if t_sequence.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("t sequence must be increasing"));
    }
    let q = lower_q(n);
    let mut rows = Vec::with_capacity(t_sequence.len());
    for &t in t_sequence {
        let eps = FRAC_PI_2 - t;
        if !(eps > 0.0 && t >= 0.0) {
            return Err(Error::domain(format!("t = {t} must lie in [0, π/2)")));
        }
        // sin t = cos ε, cos t = sin ε, 1 - sin t = 2 sin²(ε/2)
        let (s, c) = (eps.cos(), eps.sin());
        let one_minus_s = 2.0 * (0.5 * eps).sin().powi(2);
        let product = c * atanh_parts(s, one_minus_s);
        let a = 1.0 - s * s * q;
        let x = s * (1.0 - q).sqrt() / a.sqrt();
        let root_a = a.sqrt();
        let co_x = c * c / (root_a * (root_a + s * (1.0 - q).sqrt()));
        rows.push(AuditRow {
            t,
            eps,
            product,
            bound_product: c * atanh_parts(x, co_x),
        });
    }
    let monotone_decreasing = rows.windows(2).all(|w| w[1].product < w[0].product);
    let fitted_limit = fit_intercept(&rows, |r| r.product);
    let fitted_bound_limit = fit_intercept(&rows, |r| r.bound_product);
    Ok(LimitAudit {
        n,
        rows,
        fitted_limit,
        fitted_bound_limit,
        claimed_limit: CLAIMED_PRODUCT_LIMIT,
        monotone_decreasing,
    })
}

/// Intercept of `y ≈ L + b ε ln ε + c ε`; falls back to fewer terms when
/// there are not enough rows.
fn fit_intercept(rows: &[AuditRow], y: impl Fn(&AuditRow) -> f64) -> f64 {
    let basis: &[fn(f64) -> f64] = &[|_| 1.0, |e| e * e.ln(), |e| e];
    let k = rows.len().min(basis.len());
    let mut normal = vec![vec![0.0; k]; k];
    let mut rhs = vec![0.0; k];
    for r in rows {
        let phi: Vec<f64> = basis[..k].iter().map(|b| b(r.eps)).collect();
        for i in 0..k {
            rhs[i] += phi[i] * y(r);
            for j in 0..k {
                normal[i][j] += phi[i] * phi[j];
            }
        }
    }
    solve(normal, rhs).map_or(f64::NAN, |x| x[0])
}
