//! Physical constants used throughout the crate.
//!
//! Values are fixed at four significant figures so that every output is
//! reproducible from the run manifest alone.

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.998e8;

/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854e-12;

/// Free-space wave impedance, Ω.
pub const FREE_SPACE_IMPEDANCE: f64 = 376.73;

/// Vacuum permeability derived from `SPEED_OF_LIGHT` and `VACUUM_PERMITTIVITY`, H/m.
pub fn vacuum_permeability() -> f64 {
    1.0 / (VACUUM_PERMITTIVITY * SPEED_OF_LIGHT * SPEED_OF_LIGHT)
}

/// Free-space wavelength at `frequency_hz`, m.
pub fn wavelength(frequency_hz: f64) -> f64 {
    SPEED_OF_LIGHT / frequency_hz
}
