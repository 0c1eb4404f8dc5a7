//! Willmore flow of tori of revolution, computed as the evolution of closed profile
//! curves in the hyperbolic half-plane.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

// NaN-rejecting `!(a > b)` checks and index loops over coupled arrays are intended.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod diagnostics;
pub mod error;
pub mod flow;
pub mod hcurve;
pub mod initdata;
pub mod report;
mod scalar;
pub mod surface;

pub use error::{Error, Result};
pub use scalar::Real;

pub use diagnostics::{
    clifford_fit, concentration_radius, conformal_class, critical_b, packing_lower_bound,
    sigma_b_energy, CliffordFit, ConcentrationReport,
};
pub use flow::{run, run_many, Flow, FlowConfig, FlowOutcome, FlowState, Integrator, OutcomeKind};
pub use hcurve::{
    elastic_energy, elastica_residual, euclidean_length, hyperbolic_curvature, hyperbolic_length,
    resample_uniform, total_curvature, CurveGeometry, CurveLimits, ProfileCurve, ResampleMethod,
    TotalCurvature,
};
pub use initdata::{generate, CurveShape, CurveSpec};
pub use report::{class_interval, uncovered_length, ClassInterval, DiagnosticsRow, CSV_HEADER};
pub use surface::{
    diameter, flux_identity_residual, identity_suite, surface_quantities,
    willmore_energy_via_elastic, IdentityReport, SurfaceQuantities,
};

pub type Curve = ProfileCurve<f64>;
pub type Curve32 = ProfileCurve<f32>;
pub type Geometry = CurveGeometry<f64>;
pub type Surface = SurfaceQuantities<f64>;
