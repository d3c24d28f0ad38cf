//! Specific Absorption Rate.
//!
//! Surface SAR at the air-skin boundary follows from the incident power
//! density, the field reflection amplitude `R`, the penetration depth `δ`
//! and the tissue density `ρ`:
//!
//! ```text
//! SAR₀ = 2·PD·(1 − R²) / (δ·ρ)
//! ```
//!
//! Below the surface the deposited power decays as `exp(−2z/δ)`, so the
//! depth integral of `ρ·SAR(z)` recovers the transmitted power `PD·(1 − R²)`.

use crate::error::{Error, Result};

/// Local SAR `σ|E|²/ρ` at a point inside tissue, W/kg.
pub fn local_sar(conductivity: f64, e_magnitude_rms: f64, mass_density: f64) -> Result<f64> {
    if !(mass_density.is_finite() && mass_density > 0.0) {
        return Err(Error::invalid("mass_density", mass_density, "must be finite and > 0"));
    }
    if !(conductivity.is_finite() && conductivity >= 0.0) {
        return Err(Error::invalid("conductivity", conductivity, "must be finite and >= 0"));
    }
    if !e_magnitude_rms.is_finite() {
        return Err(Error::invalid("e_magnitude_rms", e_magnitude_rms, "must be finite"));
    }
    Ok(conductivity * e_magnitude_rms * e_magnitude_rms / mass_density)
}

/// Exposure at the air-skin boundary. Only constructible through [`surface_sar`],
/// which keeps `sar_surface` consistent with the other fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceExposure {
    pd_incident: f64,
    reflection: f64,
    delta: f64,
    mass_density: f64,
    sar_surface: f64,
}

impl SurfaceExposure {
    /// Incident power density, W/m².
    pub fn pd_incident(&self) -> f64 {
        self.pd_incident
    }

    /// Field reflection amplitude `R`.
    pub fn reflection(&self) -> f64 {
        self.reflection
    }

    /// Penetration depth `δ`, m.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// kg/m³
    pub fn mass_density(&self) -> f64 {
        self.mass_density
    }

    /// W/kg
    pub fn sar_surface(&self) -> f64 {
        self.sar_surface
    }
}

/// Surface SAR `2·pd·(1 − r²)/(δ·ρ)`.
///
/// `r` approaching 1 drives SAR smoothly to 0; `r >= 1` is rejected.
pub fn surface_sar(pd: f64, r: f64, delta: f64, mass_density: f64) -> Result<SurfaceExposure> {
    if !(pd.is_finite() && pd >= 0.0) {
        return Err(Error::invalid("pd", pd, "must be finite and >= 0"));
    }
    if !(0.0..1.0).contains(&r) {
        return Err(Error::invalid("reflection", r, "must be in [0, 1)"));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::invalid("delta", delta, "must be finite and > 0"));
    }
    if !(mass_density.is_finite() && mass_density > 0.0) {
        return Err(Error::invalid("mass_density", mass_density, "must be finite and > 0"));
    }
    let sar_surface = 2.0 * pd * (1.0 - r * r) / (delta * mass_density);
    if !sar_surface.is_finite() {
        return Err(Error::invalid("pd", pd, "surface SAR overflows"));
    }
    Ok(SurfaceExposure {
        pd_incident: pd,
        reflection: r,
        delta,
        mass_density,
        sar_surface,
    })
}

/// SAR at depth `z` metres below the surface, `SAR₀·exp(−2z/δ)`.
pub fn sar_depth_profile(exposure: &SurfaceExposure, z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::invalid("z", z, "depth must be >= 0"));
    }
    Ok(exposure.sar_surface * (-2.0 * z / exposure.delta).exp())
}

/// Power absorbed per unit surface area, W/m².
///
/// This is the depth integral of `ρ·SAR(z)`, i.e. `ρ·SAR₀·δ/2`, which reduces
/// algebraically to the transmitted power `PD·(1 − R²)`; the reduced form is
/// returned so the identity holds without rounding.
pub fn absorbed_power_per_area(exposure: &SurfaceExposure) -> f64 {
    exposure.pd_incident * (1.0 - exposure.reflection * exposure.reflection)
}
