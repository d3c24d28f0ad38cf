//! Data files shipped with the crate.
//!
//! Tissue tables and limit profiles are embedded so that the registry works
//! without a data directory; the files themselves document their sources.

use crate::compliance::LimitProfile;
use crate::tissue::TissueProfile;

/// An embedded data file.
#[derive(Debug, Clone, Copy)]
pub struct EmbeddedFile {
    /// Path relative to the crate's `data/` directory.
    pub path: &'static str,
    pub contents: &'static str,
}

pub const DRY_SKIN: EmbeddedFile = EmbeddedFile {
    path: "tissues/dry-skin.toml",
    contents: include_str!("../data/tissues/dry-skin.toml"),
};

pub const ICNIRP_2020_PUBLIC: EmbeddedFile = EmbeddedFile {
    path: "limits/icnirp2020-public.toml",
    contents: include_str!("../data/limits/icnirp2020-public.toml"),
};

pub const FCC_MPE_GENERAL: EmbeddedFile = EmbeddedFile {
    path: "limits/fcc-mpe-general.toml",
    contents: include_str!("../data/limits/fcc-mpe-general.toml"),
};

/// Calibrated per-generation fixtures for the cross-generation comparison.
pub const GENERATIONS: EmbeddedFile = EmbeddedFile {
    path: "compare/generations.toml",
    contents: include_str!("../data/compare/generations.toml"),
};

pub const TISSUE_FILES: &[EmbeddedFile] = &[DRY_SKIN];
pub const LIMIT_FILES: &[EmbeddedFile] = &[ICNIRP_2020_PUBLIC, FCC_MPE_GENERAL];

pub mod scenarios {
    pub const COMPLIANT: &str = include_str!("../data/scenarios/compliant.toml");
    pub const OVER_LIMIT_4X: &str = include_str!("../data/scenarios/over-limit-4x.toml");
    pub const STEERED_BEAM: &str = include_str!("../data/scenarios/steered-beam.toml");
    pub const MAP_5_SOURCES: &str = include_str!("../data/scenarios/map-5-sources.toml");
}

/// Finds the embedded tissue file defining `name`.
pub fn tissue_file(name: &str) -> Option<EmbeddedFile> {
    TISSUE_FILES
        .iter()
        .copied()
        .find(|f| TissueProfile::from_toml_str(f.contents, f.path).is_ok_and(|t| t.name() == name))
}

/// Finds the embedded limit file defining `name`.
pub fn limit_file(name: &str) -> Option<EmbeddedFile> {
    LIMIT_FILES
        .iter()
        .copied()
        .find(|f| LimitProfile::from_toml_str(f.contents, f.path).is_ok_and(|l| l.name() == name))
}

pub fn builtin_tissues() -> Vec<TissueProfile> {
    TISSUE_FILES
        .iter()
        .map(|f| TissueProfile::from_toml_str(f.contents, f.path).expect("embedded tissue file is valid"))
        .collect()
}

pub fn builtin_limits() -> Vec<LimitProfile> {
    LIMIT_FILES
        .iter()
        .map(|f| LimitProfile::from_toml_str(f.contents, f.path).expect("embedded limit file is valid"))
        .collect()
}

pub fn dry_skin() -> TissueProfile {
    TissueProfile::from_toml_str(DRY_SKIN.contents, DRY_SKIN.path).expect("embedded tissue file is valid")
}
