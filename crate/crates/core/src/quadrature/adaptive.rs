use super::gk::{GaussKronrod, PanelResult};
use super::{Accumulator, Precision, QuadratureConfig, VolumeEstimate};
use crate::{Error, Result};

/// Outcome of one globally adaptive integration.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Panelled {
    pub value: f64,
    /// Discretisation error estimate of this level.
    pub error: f64,
    /// Propagated error bars of the integrand (inner levels).
    pub inner_error: f64,
    pub converged: bool,
}

impl Panelled {
    pub fn total_error(&self) -> f64 {
        self.error + self.inner_error
    }
}

/// QUADPACK-style global adaptivity: repeatedly bisect the panel with the
/// largest error until `Σ err ≤ max(abs_tol, rel_tol·|Σ value|)` or the panel
/// budget runs out.
#[allow(clippy::too_many_arguments)]
pub(crate) fn adaptive_core<F>(
    f: &mut F,
    a: f64,
    b: f64,
    rule: &GaussKronrod,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
    precision: Precision,
) -> Panelled
where
    F: FnMut(f64) -> (f64, f64),
{
    let compensated = precision == Precision::Compensated;
    let mut panels: Vec<(f64, f64, PanelResult)> = vec![(a, b, rule.panel(f, a, b, compensated))];
    loop {
        let mut value = Accumulator::new(precision);
        let mut error = 0.0;
        let mut inner = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            value.add(p.2.value);
            error += p.2.error;
            inner += p.2.inner_error;
            if p.2.error > panels[worst].2.error {
                worst = i;
            }
        }
        let value = value.total();
        let done = |converged| Panelled {
            value,
            error,
            inner_error: inner,
            converged,
        };
        if !error.is_finite() || !value.is_finite() {
            return done(false);
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return done(true);
        }
        if panels.len() >= max_subdivisions {
            return done(false);
        }
        let (lo, hi, _) = panels[worst];
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) || (hi - lo) < 64.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            // panel cannot be refined further in double precision
            return done(false);
        }
        let left = rule.panel(f, lo, mid, compensated);
        let right = rule.panel(f, mid, hi, compensated);
        panels[worst] = (lo, mid, left);
        panels.push((mid, hi, right));
    }
}

/// Integrate `f` over `[a, b]` with the configured Gauss–Kronrod rule.
///
/// The rule never samples the endpoints, so integrable endpoint
/// singularities are tolerated (convergence is slower). On failure the error
/// carries the best estimate reached.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<VolumeEstimate>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(VolumeEstimate::zero("adaptive-gk"));
    }
    let mut evals = 0u64;
    let mut g = |x: f64| {
        evals += 1;
        (f(x), 0.0)
    };
    let rule = cfg.rule();
    let out = adaptive_core(
        &mut g,
        a,
        b,
        &rule,
        cfg.rel_tol,
        cfg.abs_tol,
        cfg.max_subdivisions,
        cfg.precision,
    );
    let est = VolumeEstimate::new(
        out.value,
        out.total_error(),
        evals,
        format!("adaptive-gk{}", rule.points()),
    );
    if out.converged {
        Ok(est)
    } else {
        Err(Error::NotConverged {
            level: 0,
            best: est,
        })
    }
}
