use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use anyhow::{anyhow, Result};
use hypervol::bounds::{
    growth_ratio, hm_bounds, limit_audit, lower_bound, upper_bound, AUDIT_OFFSETS,
};
use hypervol::check::{max_pairwise_difference, run_checks, Status as CheckStatus};
use hypervol::report::{self, Sandwich, SweepRow, CSV_HEADER};
use hypervol::volume::{VolumeForm, HALFSPACE_MAX_T_OFFSET};
use hypervol::{
    ladder as build_ladder, Error, Method, QuadratureConfig, SimplexParams, VolumeEstimate,
};

use crate::args::{
    CheckArgs, Format, LadderArgs, MethodArg, QuadArgs, RatioArgs, SweepArgs, TArg, VolumeArgs,
};

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    NotConverged,
    Violation,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NotConverged => 2,
            Status::Violation => 3,
        }
    }
}

/// 2 for quadrature non-convergence, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NotConverged { .. }) => 2,
        _ => 1,
    }
}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into())
}

fn params(n: usize, t: &TArg) -> Result<SimplexParams> {
    Ok(match (t.t, t.sin_t) {
        (Some(t), None) => SimplexParams::new(n, t)?,
        (None, Some(s)) => SimplexParams::from_sin(n, s)?,
        _ => return Err(usage("give exactly one of --t and --sin-t")),
    })
}

fn quad_config(q: &QuadArgs) -> Result<QuadratureConfig> {
    let mut cfg = QuadratureConfig::default().with_rel_tol(q.tol);
    if let Some(seed) = q.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn estimate_fields(v: &VolumeEstimate) -> String {
    format!(
        "value={} error={:.3e} evals={} method={}",
        sci(v.value),
        v.error_estimate,
        v.n_evals,
        v.method
    )
}

fn halfspace_unavailable(p: &SimplexParams) -> bool {
    p.is_degenerate() || p.cos_t() < HALFSPACE_MAX_T_OFFSET.sin()
}

pub fn volume(a: &VolumeArgs, out: &mut dyn Write) -> Result<Status> {
    let p = params(a.n, &a.t)?;
    let mut cfg = quad_config(&a.quad)?;
    if a.monte_carlo {
        cfg.method = Method::MonteCarlo;
        cfg.mc_samples = a.samples;
        cfg.validate()?;
    }
    let forms: Vec<VolumeForm> = match a.method {
        MethodArg::Projective => vec![VolumeForm::Projective],
        MethodArg::Orthoscheme => vec![VolumeForm::Orthoscheme],
        MethodArg::Halfspace => vec![VolumeForm::Halfspace],
        MethodArg::All => VolumeForm::ALL.to_vec(),
    };
    let all = a.method == MethodArg::All;
    let mut status = Status::Ok;
    let mut computed = Vec::new();
    for form in forms {
        if all && form == VolumeForm::Halfspace && halfspace_unavailable(&p) {
            writeln!(out, "{} skipped: undefined at t = {}", form.name(), p.t())?;
            continue;
        }
        match form.compute(&p, &cfg) {
            Ok(v) => {
                writeln!(out, "{} {}", form.name(), estimate_fields(&v))?;
                computed.push((form, v));
            }
            Err(Error::NotConverged { level, best }) => {
                writeln!(
                    out,
                    "{} {} converged=false level={level}",
                    form.name(),
                    estimate_fields(&best)
                )?;
                computed.push((form, best));
                status = Status::NotConverged;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if all {
        let (diff, _) = max_pairwise_difference(&computed);
        writeln!(out, "max_rel_diff={diff:.3e}")?;
    }
    Ok(status)
}

pub fn ratio(a: &RatioArgs, out: &mut dyn Write) -> Result<Status> {
    let p = params(a.n, &a.t)?;
    let cfg = quad_config(&a.quad)?;
    let (hm_lo, hm_hi) = hm_bounds(p.n())?;
    let lower = lower_bound(&p)?;
    let upper = upper_bound(&p);
    let (r, status) = match growth_ratio(&p, &cfg) {
        Ok(r) => (r, Status::Ok),
        Err(Error::NotConverged { best, .. }) => (best, Status::NotConverged),
        Err(e) => return Err(e.into()),
    };
    let ok = lower - r.error_estimate <= r.value && r.value <= upper + r.error_estimate;
    writeln!(
        out,
        "n={} t={} ratio={} ratio_err={:.3e} lower={} upper={} hm_lower={} hm_upper={} SANDWICH={}",
        p.n(),
        sci(p.t()),
        sci(r.value),
        r.error_estimate,
        sci(lower),
        sci(upper),
        sci(hm_lo),
        sci(hm_hi),
        if ok { "ok" } else { "VIOLATION" }
    )?;
    Ok(if ok {
        status
    } else {
        status.max(Status::Violation)
    })
}

/// Grid points `start + k·step` up to `stop` inclusive (with a little slack
/// for rounding of the step count).
fn t_grid(a: &SweepArgs) -> Result<Vec<f64>> {
    let ts = match (&a.t_list, a.t_start, a.t_stop, a.t_step) {
        (Some(list), None, None, None) => list.clone(),
        (None, Some(start), Some(stop), Some(step)) => {
            if step.is_nan() || step <= 0.0 || stop.is_nan() || stop < start {
                return Err(usage("need t-step > 0 and t-stop ≥ t-start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            (0..count).map(|k| start + k as f64 * step).collect()
        }
        _ => {
            return Err(usage(
                "give either --t-list or all of --t-start, --t-stop, --t-step",
            ))
        }
    };
    if ts.is_empty() {
        return Err(usage("empty t grid"));
    }
    if let Some(bad) = ts.iter().find(|t| !(**t > 0.0 && **t <= FRAC_PI_2 + 1e-9)) {
        return Err(usage(format!(
            "t = {bad} outside (0, π/2]; the ratio is undefined at t = 0"
        )));
    }
    Ok(ts)
}

pub fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<Status> {
    if a.n.is_empty() {
        return Err(usage("empty n list"));
    }
    if let Some(n) = a.n.iter().find(|&&n| n < 3) {
        return Err(usage(format!("sweep needs n ≥ 3, got {n}")));
    }
    let ts = t_grid(a)?;
    let cfg = quad_config(&a.quad)?;
    let mut status = Status::Ok;
    let mut rows: Vec<SweepRow> = Vec::new();
    for r in report::sweep(&a.n, &ts, &cfg) {
        match r {
            Ok(row) => {
                if row.sandwich == Sandwich::Violation {
                    status = status.max(Status::Violation);
                }
                rows.push(row);
            }
            Err(e @ Error::NotConverged { .. }) => {
                eprintln!("warning: {e}");
                status = status.max(Status::NotConverged);
            }
            Err(e) => return Err(e.into()),
        }
    }
    match a.format {
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for row in &rows {
                writeln!(out, "{}", row.csv_line())?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(status)
}

pub fn check(a: &CheckArgs, out: &mut dyn Write) -> Result<Status> {
    let p = params(a.n, &a.t)?;
    let cfg = quad_config(&a.quad)?;
    let report = run_checks(&p, &cfg)?;
    writeln!(out, "check n={} t={}", report.n, sci(report.t))?;
    for item in &report.items {
        let mut line = format!("{:<7} {}", item.status.to_string(), item.name);
        if let Some(r) = item.residual {
            line.push_str(&format!(" residual={r:.3e}"));
        }
        if let Some(t) = item.tolerance {
            line.push_str(&format!(" tol={t:.1e}"));
        }
        line.push_str(&format!(" ({})", item.detail));
        writeln!(out, "{line}")?;
    }
    if a.audit_limits {
        write_audit(p.n().max(3), out)?;
    }
    let failed = report.items.iter().any(|i| i.status == CheckStatus::Fail);
    Ok(if report.not_converged {
        Status::NotConverged
    } else if failed {
        Status::Violation
    } else {
        Status::Ok
    })
}

fn write_audit(n: usize, out: &mut dyn Write) -> Result<()> {
    let ts: Vec<f64> = AUDIT_OFFSETS.iter().map(|e| FRAC_PI_2 - e).collect();
    let audit = limit_audit(n, &ts)?;
    writeln!(
        out,
        "limit audit n={n}: cos t·atanh(sin t) and the lower-bound factor as t → π/2"
    )?;
    writeln!(out, "eps,t,product,bound_product")?;
    for r in &audit.rows {
        writeln!(
            out,
            "{:.1e},{},{},{}",
            r.eps,
            sci(r.t),
            sci(r.product),
            sci(r.bound_product)
        )?;
    }
    writeln!(out, "monotone_decreasing={}", audit.monotone_decreasing)?;
    writeln!(
        out,
        "empirical_limit={:.3e} (least-squares fit)",
        audit.fitted_limit
    )?;
    writeln!(
        out,
        "empirical_bound_factor_limit={:.3e} (least-squares fit)",
        audit.fitted_bound_limit
    )?;
    writeln!(
        out,
        "claimed_limit={} (published claim, not verified here)",
        audit.claimed_limit
    )?;
    if audit.conflicts_with_claim() {
        writeln!(
            out,
            "CONFLICT: the empirical limit disagrees with the claimed limit"
        )?;
    }
    Ok(())
}

pub fn ladder(a: &LadderArgs, out: &mut dyn Write) -> Result<Status> {
    let p = params(a.n, &a.t)?;
    let lad = build_ladder(&p);
    writeln!(out, "k,r_k,tanh_r_k,d_k,tanh_d_k")?;
    for k in 1..=p.n() {
        let (r, d) = (lad.r(k), lad.d(k));
        writeln!(
            out,
            "{k},{},{},{},{}",
            r.value(),
            r.tanh(),
            d.value(),
            d.tanh()
        )?;
    }
    Ok(Status::Ok)
}
