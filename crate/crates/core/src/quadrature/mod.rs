//! Integration engines.
//!
//! * [`integrate_adaptive`]: globally adaptive Gauss–Kronrod on an interval.
//! * [`integrate_nested`] / [`integrate_iterated`]: iterated integrals whose
//!   limits depend on the outer variables.
//! * [`integrate_simplex_radialpow`]: `∫ (1-|x|²)^{-p}` over a scaled regular
//!   simplex, including the case where the vertices touch the unit sphere.
//! * [`monte_carlo_simplex`]: seeded uniform sampling of a regular simplex,
//!   used as an independent cross-check.

mod adaptive;
mod gk;
mod monte_carlo;
mod nested;
mod simplex;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use adaptive::integrate_adaptive;
pub use gk::GaussKronrod;
pub use monte_carlo::monte_carlo_simplex;
pub use nested::{integrate_iterated, integrate_nested, NestedChain, NestedIntegrand};
pub(crate) use simplex::radialpow_with_complement;
pub use simplex::{euclidean_simplex_volume, integrate_simplex_radialpow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Adaptive,
    MonteCarlo,
}

/// Floating-point accumulation mode for quadrature sums.
///
/// `Compensated` uses Neumaier summation for every rule and panel total. It
/// costs a few flops per node and is meant for high-dimensional runs where
/// many small contributions are added to a large total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    #[default]
    Double,
    Compensated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of panels per one-dimensional integration.
    pub max_subdivisions: usize,
    /// Kronrod points per panel: 15 or 31.
    pub base_order: usize,
    pub method: Method,
    /// Monte Carlo only.
    pub seed: u64,
    /// Monte Carlo only.
    pub mc_samples: usize,
    pub precision: Precision,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 200,
            base_order: 15,
            method: Method::Adaptive,
            seed: 0x5_eed0_f7a0,
            mc_samples: 1_000_000,
            precision: Precision::Double,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= 10.0 * f64::EPSILON) {
            return Err(Error::domain(format!(
                "rel_tol {} below 10·eps",
                self.rel_tol
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain("abs_tol must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        if GaussKronrod::with_points(self.base_order).is_none() {
            return Err(Error::domain(format!(
                "unsupported base_order {} (use 15 or 31)",
                self.base_order
            )));
        }
        if self.method == Method::MonteCarlo && self.mc_samples < 100 {
            return Err(Error::domain("mc_samples must be at least 100"));
        }
        Ok(())
    }

    pub(crate) fn rule(&self) -> GaussKronrod {
        GaussKronrod::with_points(self.base_order).expect("validated")
    }
}

/// A numerical value with its error estimate.
///
/// For Monte Carlo results `error_estimate` is one standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub value: f64,
    pub error_estimate: f64,
    pub n_evals: u64,
    pub method: String,
}

impl VolumeEstimate {
    pub fn new(value: f64, error_estimate: f64, n_evals: u64, method: impl Into<String>) -> Self {
        Self {
            value,
            error_estimate,
            n_evals,
            method: method.into(),
        }
    }

    pub fn zero(method: impl Into<String>) -> Self {
        Self::new(0.0, 0.0, 0, method)
    }

    pub fn relative_error(&self) -> f64 {
        if self.value == 0.0 {
            self.error_estimate
        } else {
            self.error_estimate / self.value.abs()
        }
    }

    /// Multiply by a positive constant.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.error_estimate *= factor.abs();
        self
    }
}

impl fmt::Display for VolumeEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:.16e} ± {:.3e} ({} evals, {})",
            self.value, self.error_estimate, self.n_evals, self.method
        )
    }
}

/// Running sum, optionally Neumaier-compensated.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
    compensated: bool,
}

impl Accumulator {
    pub(crate) fn new(precision: Precision) -> Self {
        Self {
            sum: 0.0,
            comp: 0.0,
            compensated: precision == Precision::Compensated,
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        if !self.compensated {
            self.sum += x;
            return;
        }
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
