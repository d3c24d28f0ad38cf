//! RF-EMF dosimetry at the air-skin boundary.
//!
//! The crate computes incident power density from field samples or from a
//! transmitter link budget, converts it to surface Specific Absorption Rate
//! using tissue reflection and penetration depth, and checks the result
//! against configurable exposure-limit profiles.
//!
//! Module map:
//!
//! * [`tissue`]: dielectric tables, Fresnel reflection, penetration depth
//! * [`propagation`]: Poynting vector, plane-wave and link-budget power density
//! * [`dosimetry`]: local SAR, surface SAR, depth profile, absorbed power
//! * [`compliance`]: limit profiles, band classification, metric selection
//! * [`scenario`]: multi-source deployments, exposure maps, mitigation
//! * [`report`]: CSV/SVG emission and run manifests
//! * [`fixtures`]: data files shipped with the crate

pub mod compliance;
pub mod constants;
pub mod dosimetry;
mod error;
pub mod fixtures;
pub mod propagation;
pub mod report;
pub mod scenario;
pub mod tissue;

pub use compliance::{
    check, classify_band, select_metric, Authority, Band, BandClass, ComplianceResult,
    ExposureLevels, FrequencyRange, LimitProfile, LimitRule, Metric, Population,
};
pub use dosimetry::{absorbed_power_per_area, local_sar, sar_depth_profile, surface_sar, SurfaceExposure};
pub use error::{Error, Result};
pub use propagation::{
    field_from_pd, pd_from_field, pd_link_budget, poynting, FieldSample, GainPattern, RadioSource,
};
pub use scenario::{
    evaluate_point, exposure_map, power_control, steer_away, Evaluation, ExposureMap,
    ExposureSample, GridSpec, Point, Registry, Scenario,
};
pub use tissue::{penetration_depth, reflection_coefficient, BoundaryParams, Dielectric, TissueProfile, TissueRow};
