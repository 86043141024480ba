//! Rows of a bound sweep over `(n, t)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{facet_ratio_parts, GrowthBounds};
use crate::quadrature::QuadratureConfig;
use crate::{Result, SimplexParams};

/// Column order of [`SweepRow::csv_line`].
pub const CSV_HEADER: &str =
    "n,t,ratio,ratio_err,lower,upper,hm_lower,hm_upper,v_n,v_facet,sandwich";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sandwich {
    Ok,
    Violation,
}

impl Sandwich {
    pub fn as_str(self) -> &'static str {
        match self {
            Sandwich::Ok => "ok",
            Sandwich::Violation => "violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub t: f64,
    pub ratio: f64,
    pub ratio_err: f64,
    pub lower: f64,
    pub upper: f64,
    pub hm_lower: f64,
    pub hm_upper: f64,
    pub v_n: f64,
    pub v_facet: f64,
    pub sandwich: Sandwich,
}

impl SweepRow {
    /// Floats with 17 significant digits.
    pub fn csv_line(&self) -> String {
        let f = |x: f64| format!("{x:.16e}");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            f(self.t),
            f(self.ratio),
            f(self.ratio_err),
            f(self.lower),
            f(self.upper),
            f(self.hm_lower),
            f(self.hm_upper),
            f(self.v_n),
            f(self.v_facet),
            self.sandwich.as_str()
        )
    }
}

/// Ratio, bounds and the sandwich verdict at one point. The sandwich allows
/// the propagated quadrature error as slack.
pub fn sweep_row(params: &SimplexParams, cfg: &QuadratureConfig) -> Result<SweepRow> {
    let bounds = GrowthBounds::new(params)?;
    let (ratio, v, f) = facet_ratio_parts(params, cfg)?;
    let sandwich = if bounds.contains(ratio.value, ratio.error_estimate) {
        Sandwich::Ok
    } else {
        Sandwich::Violation
    };
    Ok(SweepRow {
        n: params.n(),
        t: params.t(),
        ratio: ratio.value,
        ratio_err: ratio.error_estimate,
        lower: bounds.lower,
        upper: bounds.upper,
        hm_lower: bounds.hm_lower,
        hm_upper: bounds.hm_upper,
        v_n: v.value,
        v_facet: f.value,
        sandwich,
    })
}

/// Every `(n, t)` pair, `n`-major. Cells run in parallel on the current
/// rayon pool; results come back in grid order.
pub fn sweep(n_list: &[usize], t_list: &[f64], cfg: &QuadratureConfig) -> Vec<Result<SweepRow>> {
    let cells: Vec<(usize, f64)> = n_list
        .iter()
        .flat_map(|&n| t_list.iter().map(move |&t| (n, t)))
        .collect();
    cells
        .par_iter()
        .map(|&(n, t)| sweep_row(&SimplexParams::new(n, t)?, cfg))
        .collect()
}
