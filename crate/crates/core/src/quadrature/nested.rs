use super::adaptive::adaptive_core;
use super::{QuadratureConfig, VolumeEstimate};
use crate::{Error, Result};

/// An iterated integral
///
/// ```text
/// ∫_{L_0} w_0(x_0) ∫_{L_1(x_0)} w_1(x_0; x_1) … ∫_{L_{m-1}(x_0..)} w_{m-1}(…) · tail(x) dx
/// ```
///
/// where the limits and weights of level `k` may depend on all outer
/// variables `x_0..x_{k-1}`.
pub trait NestedIntegrand {
    fn depth(&self) -> usize;

    fn limits(&self, level: usize, outer: &[f64]) -> (f64, f64);

    fn weight(&self, _level: usize, _outer: &[f64], _x: f64) -> f64 {
        1.0
    }

    /// Called with all `depth` coordinates.
    fn tail(&self, _point: &[f64]) -> f64 {
        1.0
    }
}

pub type LimitFn<'a> = Box<dyn Fn(f64) -> (f64, f64) + 'a>;

/// Chain of limits where level `k` depends only on the previous variable and
/// the integrand is a product of per-level factors.
pub struct NestedChain<'a> {
    pub outer: (f64, f64),
    /// Limits of levels `1..depth`, as functions of the previous variable.
    pub limits: Vec<LimitFn<'a>>,
    /// One factor per level.
    pub factors: Vec<Box<dyn Fn(f64) -> f64 + 'a>>,
}

impl NestedIntegrand for NestedChain<'_> {
    fn depth(&self) -> usize {
        self.factors.len()
    }

    fn limits(&self, level: usize, outer: &[f64]) -> (f64, f64) {
        if level == 0 {
            self.outer
        } else {
            (self.limits[level - 1])(outer[level - 1])
        }
    }

    fn weight(&self, level: usize, _outer: &[f64], x: f64) -> f64 {
        (self.factors[level])(x)
    }
}

/// Integrate a [`NestedChain`].
pub fn integrate_nested(chain: &NestedChain<'_>, cfg: &QuadratureConfig) -> Result<VolumeEstimate> {
    if chain.factors.is_empty() || chain.limits.len() + 1 != chain.factors.len() {
        return Err(Error::domain(
            "chain needs one factor per level and depth-1 limit functions",
        ));
    }
    integrate_iterated(chain, cfg)
}

/// Integrate any [`NestedIntegrand`].
///
/// Each level gets relative tolerance `rel_tol / depth`. The error reported
/// for a level adds its own Gauss–Kronrod estimate to the integral of the
/// inner levels' error bars. If any level fails to converge the whole
/// integration stops and the failing level index is reported.
pub fn integrate_iterated<I>(integrand: &I, cfg: &QuadratureConfig) -> Result<VolumeEstimate>
where
    I: NestedIntegrand + ?Sized,
{
    cfg.validate()?;
    let depth = integrand.depth();
    if depth == 0 {
        return Err(Error::domain("nested integral needs depth ≥ 1"));
    }
    let ctx = Ctx {
        rule: cfg.rule(),
        rel_tol: cfg.rel_tol / depth as f64,
        cfg,
        depth,
    };
    let mut state = Vec::with_capacity(depth);
    let mut evals = 0u64;
    let tag = format!("nested-gk{}x{}", ctx.rule.points(), depth);
    match level(integrand, 0, &mut state, &ctx, &mut evals) {
        Ok((v, e)) => Ok(VolumeEstimate::new(v, e, evals, tag)),
        Err((lvl, v, e)) => Err(Error::NotConverged {
            level: lvl,
            best: VolumeEstimate::new(v, e, evals, tag),
        }),
    }
}

struct Ctx<'c> {
    rule: super::GaussKronrod,
    rel_tol: f64,
    cfg: &'c QuadratureConfig,
    depth: usize,
}

type LevelResult = std::result::Result<(f64, f64), (usize, f64, f64)>;

fn level<I>(ig: &I, lvl: usize, state: &mut Vec<f64>, ctx: &Ctx<'_>, evals: &mut u64) -> LevelResult
where
    I: NestedIntegrand + ?Sized,
{
    let (lo, hi) = ig.limits(lvl, &state[..lvl]);
    if !(hi > lo) {
        return Ok((0.0, 0.0));
    }
    let last = lvl + 1 == ctx.depth;
    let mut failure: Option<(usize, f64, f64)> = None;
    let mut f = |x: f64| -> (f64, f64) {
        if failure.is_some() {
            return (0.0, 0.0);
        }
        state.truncate(lvl);
        let w = ig.weight(lvl, &state[..lvl], x);
        state.push(x);
        if w == 0.0 {
            return (0.0, 0.0);
        }
        if last {
            *evals += 1;
            return (w * ig.tail(state), 0.0);
        }
        match level(ig, lvl + 1, state, ctx, evals) {
            Ok((v, e)) => (w * v, w.abs() * e),
            Err(fail) => {
                failure = Some(fail);
                (0.0, 0.0)
            }
        }
    };
    let out = adaptive_core(
        &mut f,
        lo,
        hi,
        &ctx.rule,
        ctx.rel_tol,
        ctx.cfg.abs_tol,
        ctx.cfg.max_subdivisions,
        ctx.cfg.precision,
    );
    if let Some(fail) = failure {
        return Err(fail);
    }
    if !out.converged {
        return Err((lvl, out.value, out.total_error()));
    }
    Ok((out.value, out.total_error()))
}
