//! Tissue dielectric tables and the boundary parameters derived from them.
//!
//! A [`TissueProfile`] is a frequency table of relative permittivity,
//! conductivity and mass density. Between table rows, permittivity and
//! conductivity are interpolated linearly in `log10(f)` and density linearly
//! in `f`. The reflection coefficient and penetration depth at the air-skin
//! boundary are derived from the complex permittivity
//!
//! ```text
//! ε* = ε′ − j·σ / (2π f ε₀)
//! ```
//!
//! unless a row supplies them explicitly.

use num_complex::Complex64;
use serde::Deserialize;
use toml::Spanned;

use crate::constants::{SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::error::{line_of, Error, Result};

/// One frequency row of a tissue table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TissueRow {
    pub frequency_hz: f64,
    /// Relative permittivity ε′.
    pub eps_real: f64,
    /// Conductivity σ, S/m.
    pub conductivity: f64,
    /// Mass density ρ, kg/m³.
    pub mass_density: f64,
    /// Penetration depth δ, m. Takes precedence over the derived value.
    pub penetration_depth_override: Option<f64>,
    /// Field reflection amplitude R. Takes precedence over the derived value.
    pub reflection_override: Option<f64>,
}

impl TissueRow {
    pub fn new(frequency_hz: f64, eps_real: f64, conductivity: f64, mass_density: f64) -> Self {
        TissueRow {
            frequency_hz,
            eps_real,
            conductivity,
            mass_density,
            penetration_depth_override: None,
            reflection_override: None,
        }
    }

    /// Checks the per-row invariants, naming the offending field on failure.
    fn validate(&self) -> std::result::Result<(), (&'static str, f64, &'static str)> {
        let r = self;
        if !(r.frequency_hz.is_finite() && r.frequency_hz > 0.0) {
            return Err(("frequency_hz", r.frequency_hz, "must be finite and > 0"));
        }
        if !(r.eps_real.is_finite() && r.eps_real >= 1.0) {
            return Err(("eps_real", r.eps_real, "must be finite and >= 1"));
        }
        if !(r.conductivity.is_finite() && r.conductivity >= 0.0) {
            return Err(("sigma_s_per_m", r.conductivity, "must be finite and >= 0"));
        }
        if !(r.mass_density.is_finite() && r.mass_density > 0.0) {
            return Err(("density_kg_per_m3", r.mass_density, "must be finite and > 0"));
        }
        if let Some(d) = r.penetration_depth_override {
            if !(d.is_finite() && d > 0.0) {
                return Err(("delta_m", d, "must be finite and > 0"));
            }
        }
        if let Some(refl) = r.reflection_override {
            if !(refl.is_finite() && refl > 0.0 && refl < 1.0) {
                return Err(("reflection", refl, "must be finite and in (0, 1)"));
            }
        }
        Ok(())
    }
}

/// Interpolated dielectric parameters at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dielectric {
    pub eps_real: f64,
    pub conductivity: f64,
    pub mass_density: f64,
}

/// The three tissue quantities surface SAR needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryParams {
    pub reflection: f64,
    pub penetration_depth: f64,
    pub mass_density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TissueProfile {
    name: String,
    rows: Vec<TissueRow>,
}

/// Position of a frequency within the table.
enum Bracket {
    At(usize),
    Between { lo: usize, log_t: f64, lin_t: f64 },
}

impl TissueProfile {
    pub fn new(name: impl Into<String>, rows: Vec<TissueRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("rows", 0.0, "a tissue table needs at least one row"));
        }
        for row in &rows {
            row.validate()
                .map_err(|(name, value, reason)| Error::invalid(name, value, reason))?;
        }
        for pair in rows.windows(2) {
            if pair[1].frequency_hz <= pair[0].frequency_hz {
                return Err(Error::invalid(
                    "frequency_hz",
                    pair[1].frequency_hz,
                    "rows must be strictly increasing in frequency",
                ));
            }
        }
        Ok(TissueProfile {
            name: name.into(),
            rows,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rows(&self) -> &[TissueRow] {
        &self.rows
    }

    /// `(min, max)` frequency covered by the table.
    pub fn span(&self) -> (f64, f64) {
        (self.rows[0].frequency_hz, self.rows[self.rows.len() - 1].frequency_hz)
    }

    fn bracket(&self, frequency_hz: f64) -> Result<Bracket> {
        let (min_hz, max_hz) = self.span();
        if !(frequency_hz >= min_hz && frequency_hz <= max_hz) {
            return Err(Error::FrequencyOutOfRange {
                frequency_hz,
                min_hz,
                max_hz,
            });
        }
        // First row with frequency >= f.
        let hi = self.rows.partition_point(|r| r.frequency_hz < frequency_hz);
        if self.rows[hi].frequency_hz == frequency_hz {
            return Ok(Bracket::At(hi));
        }
        let lo = hi - 1;
        let (f0, f1) = (self.rows[lo].frequency_hz, self.rows[hi].frequency_hz);
        Ok(Bracket::Between {
            lo,
            log_t: (frequency_hz.log10() - f0.log10()) / (f1.log10() - f0.log10()),
            lin_t: (frequency_hz - f0) / (f1 - f0),
        })
    }

    /// Dielectric parameters at `frequency_hz`.
    pub fn lookup(&self, frequency_hz: f64) -> Result<Dielectric> {
        Ok(match self.bracket(frequency_hz)? {
            Bracket::At(i) => {
                let r = &self.rows[i];
                Dielectric {
                    eps_real: r.eps_real,
                    conductivity: r.conductivity,
                    mass_density: r.mass_density,
                }
            }
            Bracket::Between { lo, log_t, lin_t } => {
                let (a, b) = (&self.rows[lo], &self.rows[lo + 1]);
                Dielectric {
                    eps_real: lerp(a.eps_real, b.eps_real, log_t),
                    conductivity: lerp(a.conductivity, b.conductivity, log_t),
                    mass_density: lerp(a.mass_density, b.mass_density, lin_t),
                }
            }
        })
    }

    /// Reflection coefficient, penetration depth and density at `frequency_hz`.
    ///
    /// Row overrides win over derived values. Between two rows that both carry
    /// an override, the override is interpolated in `log10(f)`; otherwise the
    /// value is derived from the interpolated dielectric parameters.
    pub fn boundary(&self, frequency_hz: f64) -> Result<BoundaryParams> {
        let bracket = self.bracket(frequency_hz)?;
        let d = self.lookup(frequency_hz)?;
        let (refl_override, depth_override) = match bracket {
            Bracket::At(i) => (
                self.rows[i].reflection_override,
                self.rows[i].penetration_depth_override,
            ),
            Bracket::Between { lo, log_t, .. } => {
                let (a, b) = (&self.rows[lo], &self.rows[lo + 1]);
                let both = |x: Option<f64>, y: Option<f64>| Some(lerp(x?, y?, log_t));
                (
                    both(a.reflection_override, b.reflection_override),
                    both(a.penetration_depth_override, b.penetration_depth_override),
                )
            }
        };
        let reflection = match refl_override {
            Some(r) => r,
            None => reflection_coefficient(d.eps_real, d.conductivity, frequency_hz)?,
        };
        let penetration_depth = match depth_override {
            Some(delta) => delta,
            None => penetration_depth(d.eps_real, d.conductivity, frequency_hz)?,
        };
        Ok(BoundaryParams {
            reflection,
            penetration_depth,
            mass_density: d.mass_density,
        })
    }

    /// Parses a tissue fixture file.
    ///
    /// ```toml
    /// [tissue]
    /// name = "dry-skin"
    ///
    /// [[tissue.row]]
    /// frequency_hz = 28e9
    /// eps_real = 16.552
    /// sigma_s_per_m = 25.8241
    /// density_kg_per_m3 = 1000.0
    /// # delta_m = 9.0e-4      (optional override)
    /// # reflection = 0.68     (optional override)
    /// ```
    ///
    /// `origin` is used in error messages, typically the file path.
    pub fn from_toml_str(src: &str, origin: &str) -> Result<Self> {
        let file: TissueFile = toml::from_str(src).map_err(|e| Error::from_toml(origin, src, e))?;
        let raw = file.tissue;
        if raw.row.is_empty() {
            return Err(Error::config(origin, None, "key `tissue.row`: at least one row is required"));
        }
        let mut rows = Vec::with_capacity(raw.row.len());
        let mut prev: Option<f64> = None;
        for r in &raw.row {
            let row = TissueRow {
                frequency_hz: *r.frequency_hz.get_ref(),
                eps_real: *r.eps_real.get_ref(),
                conductivity: *r.sigma_s_per_m.get_ref(),
                mass_density: *r.density_kg_per_m3.get_ref(),
                penetration_depth_override: r.delta_m.as_ref().map(|s| *s.get_ref()),
                reflection_override: r.reflection.as_ref().map(|s| *s.get_ref()),
            };
            if let Err((key, value, reason)) = row.validate() {
                let pos = r.span_of(key);
                return Err(Error::config(
                    origin,
                    Some(line_of(src, pos)),
                    format!("key `{key}` = {value} {reason}"),
                ));
            }
            if let Some(p) = prev {
                if row.frequency_hz <= p {
                    return Err(Error::config(
                        origin,
                        Some(line_of(src, r.frequency_hz.span().start)),
                        format!(
                            "key `frequency_hz` = {}: rows must be strictly increasing in frequency",
                            row.frequency_hz
                        ),
                    ));
                }
            }
            prev = Some(row.frequency_hz);
            rows.push(row);
        }
        TissueProfile::new(raw.name, rows)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TissueFile {
    tissue: RawTissue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTissue {
    name: String,
    #[serde(default)]
    #[allow(dead_code)]
    source: Option<String>,
    #[serde(default)]
    row: Vec<RawRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    frequency_hz: Spanned<f64>,
    eps_real: Spanned<f64>,
    sigma_s_per_m: Spanned<f64>,
    density_kg_per_m3: Spanned<f64>,
    delta_m: Option<Spanned<f64>>,
    reflection: Option<Spanned<f64>>,
}

impl RawRow {
    fn span_of(&self, key: &str) -> usize {
        let s = match key {
            "frequency_hz" => &self.frequency_hz,
            "eps_real" => &self.eps_real,
            "sigma_s_per_m" => &self.sigma_s_per_m,
            "density_kg_per_m3" => &self.density_kg_per_m3,
            "delta_m" => self.delta_m.as_ref().unwrap_or(&self.frequency_hz),
            "reflection" => self.reflection.as_ref().unwrap_or(&self.frequency_hz),
            _ => &self.frequency_hz,
        };
        s.span().start
    }
}

fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a + (b - a) * t
}

fn check_medium(eps_real: f64, conductivity: f64, frequency_hz: f64) -> Result<()> {
    if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
        return Err(Error::invalid("frequency_hz", frequency_hz, "must be finite and > 0"));
    }
    if !(eps_real.is_finite() && eps_real >= 1.0) {
        return Err(Error::invalid("eps_real", eps_real, "must be finite and >= 1"));
    }
    if !(conductivity.is_finite() && conductivity >= 0.0) {
        return Err(Error::invalid("conductivity", conductivity, "must be finite and >= 0"));
    }
    Ok(())
}

/// Complex relative permittivity `ε′ − j·σ/(ωε₀)`.
pub fn complex_permittivity(eps_real: f64, conductivity: f64, frequency_hz: f64) -> Complex64 {
    let omega = 2.0 * std::f64::consts::PI * frequency_hz;
    Complex64::new(eps_real, -conductivity / (omega * VACUUM_PERMITTIVITY))
}

/// Normal-incidence field reflection amplitude `|(1 − √ε*)/(1 + √ε*)|`.
pub fn reflection_coefficient(eps_real: f64, conductivity: f64, frequency_hz: f64) -> Result<f64> {
    check_medium(eps_real, conductivity, frequency_hz)?;
    let n = complex_permittivity(eps_real, conductivity, frequency_hz).sqrt();
    let one = Complex64::new(1.0, 0.0);
    Ok((one - n).norm() / (one + n).norm())
}

/// E-field 1/e penetration depth `1/α`, `α = (2πf/c)·|Im √ε*|`, in metres.
pub fn penetration_depth(eps_real: f64, conductivity: f64, frequency_hz: f64) -> Result<f64> {
    check_medium(eps_real, conductivity, frequency_hz)?;
    if conductivity == 0.0 {
        return Err(Error::LosslessMedium);
    }
    let n = complex_permittivity(eps_real, conductivity, frequency_hz).sqrt();
    let k0 = 2.0 * std::f64::consts::PI * frequency_hz / SPEED_OF_LIGHT;
    Ok(1.0 / (k0 * n.im.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_rows() -> TissueProfile {
        TissueProfile::new(
            "t",
            vec![TissueRow::new(1e9, 40.0, 1.0, 1000.0), TissueRow::new(4e9, 30.0, 3.0, 1100.0)],
        )
        .unwrap()
    }

    #[test]
    fn lookup_at_rows_is_verbatim() {
        let t = two_rows();
        let d = t.lookup(4e9).unwrap();
        assert_eq!((d.eps_real, d.conductivity, d.mass_density), (30.0, 3.0, 1100.0));
        let d = t.lookup(1e9).unwrap();
        assert_eq!((d.eps_real, d.conductivity, d.mass_density), (40.0, 1.0, 1000.0));
    }

    #[test]
    fn lookup_outside_span_errors() {
        let t = two_rows();
        assert!(matches!(t.lookup(0.5e9), Err(Error::FrequencyOutOfRange { .. })));
        assert!(matches!(t.lookup(5e9), Err(Error::FrequencyOutOfRange { .. })));
        assert!(matches!(t.lookup(f64::NAN), Err(Error::FrequencyOutOfRange { .. })));
    }

    #[test]
    fn geometric_midpoint_gives_mean_dielectrics() {
        let t = two_rows();
        let d = t.lookup((1e9f64 * 4e9).sqrt()).unwrap();
        assert!((d.eps_real - 35.0).abs() < 1e-12);
        assert!((d.conductivity - 2.0).abs() < 1e-12);
        // density is linear in f, so at 2 GHz it sits a third of the way along
        assert!((d.mass_density - (1000.0 + 100.0 / 3.0)).abs() < 1e-9);
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        assert!(TissueProfile::new("x", vec![]).is_err());
        let r = TissueRow::new(1e9, 0.5, 1.0, 1000.0);
        assert!(TissueProfile::new("x", vec![r]).is_err());
        let r = TissueRow::new(1e9, 10.0, -1.0, 1000.0);
        assert!(TissueProfile::new("x", vec![r]).is_err());
        let r = TissueRow::new(1e9, 10.0, 1.0, 0.0);
        assert!(TissueProfile::new("x", vec![r]).is_err());
        let a = TissueRow::new(2e9, 10.0, 1.0, 1000.0);
        let b = TissueRow::new(1e9, 10.0, 1.0, 1000.0);
        assert!(TissueProfile::new("x", vec![a, b]).is_err());
        let mut r = TissueRow::new(1e9, 10.0, 1.0, 1000.0);
        r.reflection_override = Some(1.0);
        assert!(TissueProfile::new("x", vec![r]).is_err());
    }

    #[test]
    fn matched_medium_does_not_reflect() {
        for f in [1e6, 1e9, 28e9, 1e12] {
            assert_eq!(reflection_coefficient(1.0, 0.0, f).unwrap(), 0.0);
        }
    }

    #[test]
    fn reflection_rejects_invalid_inputs() {
        assert!(reflection_coefficient(0.5, 1.0, 1e9).is_err());
        assert!(reflection_coefficient(10.0, -1.0, 1e9).is_err());
        assert!(reflection_coefficient(10.0, 1.0, 0.0).is_err());
        assert!(reflection_coefficient(f64::NAN, 1.0, 1e9).is_err());
        assert!(reflection_coefficient(10.0, f64::INFINITY, 1e9).is_err());
    }

    #[test]
    fn lossless_medium_has_no_depth() {
        assert_eq!(penetration_depth(16.6, 0.0, 28e9), Err(Error::LosslessMedium));
    }

    #[test]
    fn overrides_pass_through() {
        let mut a = TissueRow::new(1e9, 40.0, 1.0, 1000.0);
        a.reflection_override = Some(0.5);
        a.penetration_depth_override = Some(2e-3);
        let b = TissueRow::new(2e9, 38.0, 1.2, 1000.0);
        let t = TissueProfile::new("o", vec![a, b]).unwrap();
        let p = t.boundary(1e9).unwrap();
        assert_eq!(p.reflection, 0.5);
        assert_eq!(p.penetration_depth, 2e-3);
        // only one side has an override, so the midpoint is derived
        let mid = t.boundary(1.5e9).unwrap();
        let d = t.lookup(1.5e9).unwrap();
        assert_eq!(
            mid.reflection,
            reflection_coefficient(d.eps_real, d.conductivity, 1.5e9).unwrap()
        );
    }

    #[test]
    fn toml_errors_name_key_and_line() {
        let src = "[tissue]\nname = \"x\"\n\n[[tissue.row]]\nfrequency_hz = 1e9\neps_real = 40.0\nsigma_s_per_m = -2.0\ndensity_kg_per_m3 = 1000.0\n";
        let err = TissueProfile::from_toml_str(src, "x.toml").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("sigma_s_per_m"), "{msg}");
        assert!(msg.contains("x.toml:7"), "{msg}");

        let src = "[tissue]\nname = \"x\"\n[[tissue.row]]\nfrequency_hz = 1e9\neps_real = 40.0\nsigma = 2.0\n";
        let msg = TissueProfile::from_toml_str(src, "y.toml").unwrap_err().to_string();
        assert!(msg.contains("sigma"), "{msg}");
        assert!(msg.contains("y.toml:"), "{msg}");
    }

    #[test]
    fn toml_rejects_unsorted_rows() {
        let src = "[tissue]\nname = \"x\"\n[[tissue.row]]\nfrequency_hz = 2e9\neps_real = 40.0\nsigma_s_per_m = 1.0\ndensity_kg_per_m3 = 1000\n[[tissue.row]]\nfrequency_hz = 1e9\neps_real = 40.0\nsigma_s_per_m = 1.0\ndensity_kg_per_m3 = 1000\n";
        let msg = TissueProfile::from_toml_str(src, "z.toml").unwrap_err().to_string();
        assert!(msg.contains("z.toml:9"), "{msg}");
        assert!(msg.contains("frequency_hz"), "{msg}");
    }
}
