//! Volumes of regular hyperbolic simplices `τ[n,t]`.
//!
//! The simplex `τ[n,t]` is the regular hyperbolic n-simplex whose image in the
//! projective (Cayley–Klein) ball is the Euclidean regular simplex of
//! circumradius `sin t`. Its volume is computed three independent ways:
//!
//! * [`volume::volume_projective`]: the Cayley–Klein volume form over the
//!   scaled Euclidean simplex,
//! * [`volume::volume_orthoscheme`]: `(n+1)!` copies of the fundamental
//!   orthoscheme in hyperbolic orthogonal coordinates,
//! * [`volume::volume_halfspace`]: vertical integration in the upper
//!   half-space model above the projected facet.
//!
//! [`bounds`] evaluates closed-form lower/upper bounds for the ratio of the
//! simplex volume to its facet volume, and [`check`] bundles the structural
//! invariants used by the command line `check` subcommand.

// `!(x > y)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod check;
mod error;
pub mod geometry;
mod linalg;
pub mod quadrature;
pub mod report;
pub mod stable;
pub mod volume;

pub use bounds::GrowthBounds;
pub use error::{Error, Result};
pub use geometry::{
    circumradius, cross_ratio_distance, edge_length, halfspace_embedding, ladder, simplex_vertices,
    HalfspaceEmbedding, HypLength, OrthoschemeLadder, SimplexParams,
};
pub use quadrature::{Method, Precision, QuadratureConfig, VolumeEstimate};
