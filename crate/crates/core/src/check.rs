//! Structural and cross-model invariants for one `(n, t)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use crate::bounds::{growth_ratio, lower_bound, lower_bound_from_ladder, upper_bound};
use crate::geometry::{
    circumradius, gram_closed_form, halfspace_embedding, ladder, HalfspaceEmbedding,
};
use crate::linalg::{norm_sq, sub};
use crate::quadrature::{QuadratureConfig, VolumeEstimate};
use crate::volume::{zn_bounds, VolumeForm, HALFSPACE_MAX_T_OFFSET};
use crate::{Error, Result, SimplexParams};

/// Tolerance for closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Relative floor for cross-model agreement.
pub const AGREEMENT_REL_TOL: f64 = 1e-6;

/// Random points drawn for the height-bound sandwich.
pub const ZN_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub status: Status,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

impl CheckItem {
    fn measured(
        name: &'static str,
        residual: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name,
            status,
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail: detail.into(),
        }
    }

    fn skipped(name: &'static str, why: impl Into<String>) -> Self {
        Self {
            name,
            status: Status::Skipped,
            residual: None,
            tolerance: None,
            detail: why.into(),
        }
    }

    fn failed(name: &'static str, why: impl Into<String>) -> Self {
        Self {
            name,
            status: Status::Fail,
            residual: None,
            tolerance: None,
            detail: why.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub n: usize,
    pub t: f64,
    pub items: Vec<CheckItem>,
    /// Some quadrature ran out of subdivisions.
    pub not_converged: bool,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }
}

/// `max_k |sech² r_{k+1} - sech² d_{k+1} sech² r_k|`.
pub fn ladder_chain_residual(params: &SimplexParams) -> f64 {
    ladder(params)
        .chain_residuals()
        .into_iter()
        .fold(0.0, |m, r| m.max(r.abs()))
}

/// Largest entry of the difference between the computed and closed-form Gram
/// matrices of the projected facet.
pub fn gram_residual(emb: &HalfspaceEmbedding, params: &SimplexParams) -> f64 {
    let closed = gram_closed_form(params);
    emb.gram
        .iter()
        .flatten()
        .zip(closed.iter().flatten())
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

/// Each facet sphere passes through the `n-1` vertices of its facet; the
/// residual compares those distances with `γ = (n + s)/(1 - s)`, relatively.
pub fn gamma_residual(emb: &HalfspaceEmbedding, params: &SimplexParams) -> f64 {
    let n = emb.n;
    let s = params.sin_t();
    let gamma = (n as f64 + s) / params.one_minus_sin();
    let mut worst = (emb.gamma - gamma).abs() / gamma;
    for i in 0..n {
        for (j, vertex) in emb.vertices[..n].iter().enumerate() {
            if j == i {
                continue;
            }
            let (horiz, z) = vertex.split_at(n - 1);
            let d2 = norm_sq(&sub(horiz, &emb.centers[i])) + z[0] * z[0];
            worst = worst.max((d2.sqrt() - gamma).abs() / gamma);
        }
    }
    worst
}

/// `|sin α - tanh r_{n-1}|`.
pub fn sin_alpha_residual(emb: &HalfspaceEmbedding, params: &SimplexParams) -> Result<f64> {
    Ok((emb.sin_alpha - circumradius(params, params.n() - 1)?.tanh()).abs())
}

/// Relative difference between the two expressions of the lower bound.
pub fn lower_bound_identity_residual(params: &SimplexParams) -> Result<f64> {
    let a = lower_bound(params)?;
    let b = lower_bound_from_ladder(params)?;
    Ok(if a == 0.0 {
        b.abs()
    } else {
        (a - b).abs() / a.abs()
    })
}

/// Sample points of the projected facet and check that the height interval
/// is nonempty and its midpoint lies in the simplex. Returns the number of
/// failures and the largest `lo - hi`.
pub fn zn_sandwich(emb: &HalfspaceEmbedding, samples: usize, seed: u64) -> Result<(usize, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = emb.n;
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut lambda = vec![0.0; n];
    for _ in 0..samples {
        let mut total = 0.0;
        for l in lambda.iter_mut() {
            *l = Exp1.sample(&mut rng);
            total += *l;
        }
        let mut point = vec![0.0; n - 1];
        for (l, v) in lambda.iter().zip(&emb.v) {
            for (p, x) in point.iter_mut().zip(v) {
                *p += l / total * x;
            }
        }
        let (lo, hi) = zn_bounds(emb, &point)?;
        worst = worst.max(lo - hi);
        point.push(0.5 * (lo + hi));
        if lo > hi + IDENTITY_TOL || !emb.contains(&point, 1e-10) {
            failures += 1;
        }
    }
    Ok((failures, worst))
}

fn record_volume(
    out: &mut Vec<(VolumeForm, VolumeEstimate)>,
    form: VolumeForm,
    r: Result<VolumeEstimate>,
    nc: &mut bool,
) -> Result<()> {
    match r {
        Ok(v) => out.push((form, v)),
        Err(Error::NotConverged { best, .. }) => {
            *nc = true;
            out.push((form, best));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Largest pairwise relative difference among the given estimates, and the
/// matching tolerance `max(1e-6, combined relative errors)` of that pair.
pub fn max_pairwise_difference(vols: &[(VolumeForm, VolumeEstimate)]) -> (f64, f64) {
    let mut worst = (0.0, AGREEMENT_REL_TOL);
    let mut worst_excess = f64::NEG_INFINITY;
    for (i, (_, a)) in vols.iter().enumerate() {
        for (_, b) in &vols[i + 1..] {
            let scale = a.value.abs().max(b.value.abs());
            let diff = if scale == 0.0 {
                0.0
            } else {
                (a.value - b.value).abs() / scale
            };
            let tol = if scale == 0.0 {
                AGREEMENT_REL_TOL
            } else {
                AGREEMENT_REL_TOL.max((a.error_estimate + b.error_estimate) / scale)
            };
            if diff - tol > worst_excess {
                worst_excess = diff - tol;
                worst = (diff, tol);
            }
        }
    }
    worst
}

/// Run every invariant that applies to `(n, t)`.
pub fn run_checks(params: &SimplexParams, cfg: &QuadratureConfig) -> Result<CheckReport> {
    let n = params.n();
    let mut items = Vec::new();
    let mut not_converged = false;

    let r = ladder_chain_residual(params);
    items.push(CheckItem::measured(
        "ladder_chain",
        r,
        IDENTITY_TOL,
        "cosh r_{k+1} = cosh d_{k+1} cosh r_k",
    ));

    let halfspace_ok = !params.is_degenerate() && params.cos_t() >= HALFSPACE_MAX_T_OFFSET.sin();
    let emb = if halfspace_ok {
        Some(halfspace_embedding(params)?)
    } else {
        None
    };
    let why = if params.is_degenerate() {
        "degenerate t = 0"
    } else {
        "half-space picture undefined at ideal t"
    };
    match &emb {
        Some(e) => {
            items.push(CheckItem::measured(
                "gram_closed_form",
                gram_residual(e, params),
                IDENTITY_TOL,
                "R(n-1) diagonal sin²α, off-diagonal -sin²α/(n-1)",
            ));
            items.push(CheckItem::measured(
                "gamma",
                gamma_residual(e, params),
                IDENTITY_TOL,
                "facet sphere radius (n+s)/(1-s)",
            ));
            items.push(CheckItem::measured(
                "sin_alpha",
                sin_alpha_residual(e, params)?,
                IDENTITY_TOL,
                "sin α = tanh r_{n-1}",
            ));
            let (fails, worst) = zn_sandwich(e, ZN_SAMPLES, cfg.seed)?;
            let mut item = CheckItem::measured(
                "zn_sandwich",
                fails as f64,
                0.0,
                format!("{ZN_SAMPLES} samples, max lo-hi = {worst:.3e}"),
            );
            item.residual = Some(worst.max(0.0));
            items.push(item);
        }
        None => {
            for name in ["gram_closed_form", "gamma", "sin_alpha", "zn_sandwich"] {
                items.push(CheckItem::skipped(name, why));
            }
        }
    }

    if n >= 3 {
        let r = lower_bound_identity_residual(params)?;
        items.push(CheckItem::measured(
            "lower_bound_identity",
            r,
            IDENTITY_TOL,
            "lower bound equals its ladder composition",
        ));
    } else {
        items.push(CheckItem::skipped("lower_bound_identity", "needs n ≥ 3"));
    }

    let mut vols = Vec::new();
    record_volume(
        &mut vols,
        VolumeForm::Projective,
        VolumeForm::Projective.compute(params, cfg),
        &mut not_converged,
    )?;
    record_volume(
        &mut vols,
        VolumeForm::Orthoscheme,
        VolumeForm::Orthoscheme.compute(params, cfg),
        &mut not_converged,
    )?;
    if halfspace_ok {
        record_volume(
            &mut vols,
            VolumeForm::Halfspace,
            VolumeForm::Halfspace.compute(params, cfg),
            &mut not_converged,
        )?;
    }
    let (diff, tol) = max_pairwise_difference(&vols);
    let listed: Vec<String> = vols
        .iter()
        .map(|(f, v)| format!("{}={:.12e}", f.name(), v.value))
        .collect();
    items.push(CheckItem::measured(
        "cross_model",
        diff,
        tol,
        listed.join(" "),
    ));
    if !halfspace_ok {
        items.push(CheckItem::skipped("halfspace_volume", why));
    }

    if n >= 3 && !params.is_degenerate() {
        match growth_ratio(params, cfg) {
            Ok(ratio) => {
                let lo = lower_bound(params)?;
                let hi = upper_bound(params);
                let slack = ratio.error_estimate;
                let excess = (lo - ratio.value).max(ratio.value - hi).max(0.0);
                let mut item = CheckItem::measured(
                    "bounds_sandwich",
                    excess,
                    slack,
                    format!("{lo:.6e} ≤ {:.12e} ≤ {hi:.6e}", ratio.value),
                );
                if excess > slack {
                    item.status = Status::Fail;
                }
                items.push(item);
            }
            Err(Error::NotConverged { .. }) => {
                not_converged = true;
                items.push(CheckItem::failed(
                    "bounds_sandwich",
                    "ratio quadrature did not converge",
                ));
            }
            Err(e) => return Err(e),
        }
    } else {
        items.push(CheckItem::skipped(
            "bounds_sandwich",
            "ratio needs n ≥ 3 and t > 0",
        ));
    }

    Ok(CheckReport {
        n,
        t: params.t(),
        items,
        not_converged,
    })
}
