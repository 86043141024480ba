//! Volume of `τ[n,t]` by three independent integral forms, plus the facet
//! volume and the half-space formula for quasi-regular simplices.

mod antiderivative;
mod halfspace;
mod orthoscheme;
mod projective;

pub use antiderivative::cosh_power_antiderivative;
pub use halfspace::{
    extrapolate_to_zero, volume_halfspace, volume_halfspace_extrapolated, volume_halfspace_general,
    zn_bounds, QuasiRegularParams, UpperHeight, DEFAULT_IDEAL_OFFSETS, HALFSPACE_MAX_T_OFFSET,
};
pub use orthoscheme::{alpha_chain, volume_orthoscheme, AlphaChain, ORTHOSCHEME_N_MAX};
pub use projective::{facet_volume_projective, volume_projective};

use serde::{Deserialize, Serialize};

use crate::quadrature::{QuadratureConfig, VolumeEstimate};
use crate::{Result, SimplexParams};

/// Which integral form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeForm {
    Projective,
    Orthoscheme,
    Halfspace,
}

impl VolumeForm {
    pub const ALL: [VolumeForm; 3] = [
        VolumeForm::Projective,
        VolumeForm::Orthoscheme,
        VolumeForm::Halfspace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VolumeForm::Projective => "projective",
            VolumeForm::Orthoscheme => "orthoscheme",
            VolumeForm::Halfspace => "halfspace",
        }
    }

    pub fn compute(self, params: &SimplexParams, cfg: &QuadratureConfig) -> Result<VolumeEstimate> {
        match self {
            VolumeForm::Projective => volume_projective(params, cfg),
            VolumeForm::Orthoscheme => volume_orthoscheme(params, cfg),
            VolumeForm::Halfspace => volume_halfspace(params, cfg),
        }
    }
}

impl std::str::FromStr for VolumeForm {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "projective" => Ok(VolumeForm::Projective),
            "orthoscheme" => Ok(VolumeForm::Orthoscheme),
            "halfspace" => Ok(VolumeForm::Halfspace),
            other => Err(crate::Error::domain(format!(
                "unknown volume form `{other}`"
            ))),
        }
    }
}

/// Re-tag an estimate (also the best estimate inside a convergence error).
pub(crate) fn tagged(
    res: Result<VolumeEstimate>,
    prefix: &str,
    factor: f64,
) -> Result<VolumeEstimate> {
    let fix = |mut e: VolumeEstimate| {
        e = e.scaled(factor);
        e.method = format!("{prefix}/{}", e.method);
        e
    };
    match res {
        Ok(e) => Ok(fix(e)),
        Err(crate::Error::NotConverged { level, best }) => Err(crate::Error::NotConverged {
            level,
            best: fix(best),
        }),
        Err(other) => Err(other),
    }
}
