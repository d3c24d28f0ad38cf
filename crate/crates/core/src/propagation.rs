//! Incident power density.
//!
//! Three routes are provided:
//!
//! * [`poynting`]: from complex E and H phasors (near field)
//! * [`pd_from_field`]: from the RMS electric field magnitude of a plane wave
//! * [`pd_link_budget`]: from transmit power and antenna gain at a distance
//!
//! All field magnitudes are RMS, so the time-average power density of a
//! phasor pair is `|Re(E × H*)|` with no factor of one half.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::FREE_SPACE_IMPEDANCE;
use crate::error::{Error, Result};

pub type Vector3 = [Complex64; 3];

/// Plan-view position, metres.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance_to(&self, other: Point) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    /// Angle of the ray from `self` to `other`, radians in (−π, π].
    pub fn bearing_to(&self, other: Point) -> f64 {
        (other.y - self.y).atan2(other.x - self.x)
    }
}

/// Complex RMS phasors of the electric (V/m) and magnetic (A/m) field at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    e_field: Vector3,
    h_field: Vector3,
}

impl FieldSample {
    pub fn new(e_field: Vector3, h_field: Vector3) -> Result<Self> {
        for c in e_field.iter().chain(h_field.iter()) {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::invalid("field component", f64::NAN, "must be finite"));
            }
        }
        Ok(FieldSample { e_field, h_field })
    }

    /// Far-field plane wave travelling along `direction`: `H = r̂ × E / η₀`.
    ///
    /// `direction` need not be normalised but must be non-zero.
    pub fn plane_wave(e_field: Vector3, direction: [f64; 3]) -> Result<Self> {
        let norm = direction.iter().map(|d| d * d).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::invalid("direction", norm, "must be a finite non-zero vector"));
        }
        let r = direction.map(|d| Complex64::new(d / norm, 0.0));
        let h = cross(&r, &e_field).map(|c| c / FREE_SPACE_IMPEDANCE);
        FieldSample::new(e_field, h)
    }

    pub fn e_field(&self) -> &Vector3 {
        &self.e_field
    }

    pub fn h_field(&self) -> &Vector3 {
        &self.h_field
    }
}

fn cross(a: &Vector3, b: &Vector3) -> Vector3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Complex Poynting vector and the power density it carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poynting {
    /// `E × H*`, W/m².
    pub vector: Vector3,
    /// Time-average power density `|Re(E × H*)|`, W/m².
    pub power_density: f64,
}

pub fn poynting(sample: &FieldSample) -> Poynting {
    let h_conj = sample.h_field.map(|c| c.conj());
    let vector = cross(&sample.e_field, &h_conj);
    let power_density = vector.iter().map(|c| c.re * c.re).sum::<f64>().sqrt();
    Poynting {
        vector,
        power_density,
    }
}

/// Plane-wave power density `|E|²/η₀` from the RMS field magnitude.
pub fn pd_from_field(e_magnitude_rms: f64) -> Result<f64> {
    if !(e_magnitude_rms.is_finite() && e_magnitude_rms >= 0.0) {
        return Err(Error::invalid("e_magnitude_rms", e_magnitude_rms, "must be finite and >= 0"));
    }
    Ok(e_magnitude_rms * e_magnitude_rms / FREE_SPACE_IMPEDANCE)
}

/// RMS field magnitude `√(PD·η₀)` of a plane wave carrying `pd`.
pub fn field_from_pd(pd: f64) -> Result<f64> {
    if !(pd.is_finite() && pd >= 0.0) {
        return Err(Error::invalid("pd", pd, "must be finite and >= 0"));
    }
    Ok((pd * FREE_SPACE_IMPEDANCE).sqrt())
}

/// Far-field power density of an isotropic equivalent radiator, `EIRP/(4πd²)`.
///
/// Accepts `eirp_w = 0`, unlike [`RadioSource`].
pub fn pd_from_eirp(eirp_w: f64, distance_m: f64) -> Result<f64> {
    if !(eirp_w.is_finite() && eirp_w >= 0.0) {
        return Err(Error::invalid("eirp_w", eirp_w, "must be finite and >= 0"));
    }
    if distance_m.is_nan() || distance_m <= 0.0 {
        return Err(Error::ZeroDistance { distance_m });
    }
    if !distance_m.is_finite() {
        return Err(Error::invalid("distance_m", distance_m, "must be finite"));
    }
    Ok(eirp_w / (4.0 * PI * distance_m * distance_m))
}

/// Azimuthal antenna gain pattern. Gains are linear, not dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPattern", into = "RawPattern")]
pub enum GainPattern {
    Isotropic,
    /// Parabolic-in-dB sector beam, `−min(12(Δφ/θ₃dB)², 30)` dB relative to peak.
    Sector {
        boresight_rad: f64,
        half_power_beamwidth_rad: f64,
        peak_gain: f64,
    },
    /// Steerable beam, `peak·max(cos(φ − steer), 0)ⁿ + 10⁻³`.
    SteeredBeam {
        steer_rad: f64,
        exponent: f64,
        peak_gain: f64,
    },
}

impl GainPattern {
    /// Maximum sidelobe attenuation of the sector pattern, dB.
    pub const SECTOR_MAX_ATTENUATION_DB: f64 = 30.0;
    /// Additive gain floor of the steered pattern.
    pub const STEERED_FLOOR: f64 = 1e-3;

    pub fn validate(&self) -> Result<()> {
        match *self {
            GainPattern::Isotropic => Ok(()),
            GainPattern::Sector {
                boresight_rad,
                half_power_beamwidth_rad,
                peak_gain,
            } => {
                if !boresight_rad.is_finite() {
                    return Err(Error::invalid("boresight_rad", boresight_rad, "must be finite"));
                }
                if !(half_power_beamwidth_rad > 0.0 && half_power_beamwidth_rad <= 2.0 * PI) {
                    return Err(Error::invalid(
                        "half_power_beamwidth_rad",
                        half_power_beamwidth_rad,
                        "must be in (0, 2π]",
                    ));
                }
                check_peak(peak_gain)
            }
            GainPattern::SteeredBeam {
                steer_rad,
                exponent,
                peak_gain,
            } => {
                if !steer_rad.is_finite() {
                    return Err(Error::invalid("steer_rad", steer_rad, "must be finite"));
                }
                if !(exponent.is_finite() && exponent >= 0.0) {
                    return Err(Error::invalid("exponent", exponent, "must be finite and >= 0"));
                }
                check_peak(peak_gain)
            }
        }
    }

    /// Linear gain toward azimuth `phi`.
    pub fn gain(&self, phi: f64) -> f64 {
        match *self {
            GainPattern::Isotropic => 1.0,
            GainPattern::Sector {
                boresight_rad,
                half_power_beamwidth_rad,
                peak_gain,
            } => {
                let off = wrap_angle(phi - boresight_rad) / half_power_beamwidth_rad;
                let atten_db = (12.0 * off * off).min(Self::SECTOR_MAX_ATTENUATION_DB);
                peak_gain * 10f64.powf(-atten_db / 10.0)
            }
            GainPattern::SteeredBeam {
                steer_rad,
                exponent,
                peak_gain,
            } => peak_gain * (phi - steer_rad).cos().max(0.0).powf(exponent) + Self::STEERED_FLOOR,
        }
    }

    pub fn peak_gain(&self) -> f64 {
        match *self {
            GainPattern::Isotropic => 1.0,
            GainPattern::Sector { peak_gain, .. } => peak_gain,
            GainPattern::SteeredBeam { peak_gain, .. } => peak_gain + Self::STEERED_FLOOR,
        }
    }

    /// Pointing angle, or `None` for an isotropic pattern.
    pub fn pointing(&self) -> Option<f64> {
        match *self {
            GainPattern::Isotropic => None,
            GainPattern::Sector { boresight_rad, .. } => Some(boresight_rad),
            GainPattern::SteeredBeam { steer_rad, .. } => Some(steer_rad),
        }
    }

    /// The same pattern pointed at `angle_rad`; `None` for an isotropic pattern.
    pub fn pointed_at(&self, angle_rad: f64) -> Option<GainPattern> {
        let mut out = *self;
        match &mut out {
            GainPattern::Isotropic => return None,
            GainPattern::Sector { boresight_rad, .. } => *boresight_rad = angle_rad,
            GainPattern::SteeredBeam { steer_rad, .. } => *steer_rad = angle_rad,
        }
        Some(out)
    }
}

/// Flat table form of a pattern, as written in scenario files.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPattern {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    boresight_rad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    half_power_beamwidth_rad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    steer_rad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    peak_gain: Option<f64>,
}

impl TryFrom<RawPattern> for GainPattern {
    type Error = String;

    fn try_from(raw: RawPattern) -> std::result::Result<Self, String> {
        let allowed: &[&str] = match raw.kind.as_str() {
            "isotropic" => &[],
            "sector" => &["boresight_rad", "half_power_beamwidth_rad", "peak_gain"],
            "steered" => &["steer_rad", "exponent", "peak_gain"],
            other => return Err(format!("unknown pattern kind `{other}`, expected isotropic, sector or steered")),
        };
        let present = [
            ("boresight_rad", raw.boresight_rad),
            ("half_power_beamwidth_rad", raw.half_power_beamwidth_rad),
            ("steer_rad", raw.steer_rad),
            ("exponent", raw.exponent),
            ("peak_gain", raw.peak_gain),
        ];
        for (key, value) in present {
            let wanted = allowed.contains(&key);
            match (wanted, value) {
                (false, Some(_)) => return Err(format!("key `{key}` is not valid for a {} pattern", raw.kind)),
                (true, None) => return Err(format!("key `{key}` is required for a {} pattern", raw.kind)),
                _ => {}
            }
        }
        let pattern = match raw.kind.as_str() {
            "isotropic" => GainPattern::Isotropic,
            "sector" => GainPattern::Sector {
                boresight_rad: raw.boresight_rad.unwrap_or_default(),
                half_power_beamwidth_rad: raw.half_power_beamwidth_rad.unwrap_or_default(),
                peak_gain: raw.peak_gain.unwrap_or_default(),
            },
            _ => GainPattern::SteeredBeam {
                steer_rad: raw.steer_rad.unwrap_or_default(),
                exponent: raw.exponent.unwrap_or_default(),
                peak_gain: raw.peak_gain.unwrap_or_default(),
            },
        };
        pattern.validate().map_err(|e| e.to_string())?;
        Ok(pattern)
    }
}

impl From<GainPattern> for RawPattern {
    fn from(p: GainPattern) -> Self {
        match p {
            GainPattern::Isotropic => RawPattern {
                kind: "isotropic".into(),
                ..Default::default()
            },
            GainPattern::Sector {
                boresight_rad,
                half_power_beamwidth_rad,
                peak_gain,
            } => RawPattern {
                kind: "sector".into(),
                boresight_rad: Some(boresight_rad),
                half_power_beamwidth_rad: Some(half_power_beamwidth_rad),
                peak_gain: Some(peak_gain),
                ..Default::default()
            },
            GainPattern::SteeredBeam {
                steer_rad,
                exponent,
                peak_gain,
            } => RawPattern {
                kind: "steered".into(),
                steer_rad: Some(steer_rad),
                exponent: Some(exponent),
                peak_gain: Some(peak_gain),
                ..Default::default()
            },
        }
    }
}

fn check_peak(peak_gain: f64) -> Result<()> {
    if !(peak_gain.is_finite() && peak_gain > 0.0) {
        return Err(Error::invalid("peak_gain", peak_gain, "must be finite and > 0"));
    }
    Ok(())
}

/// Wraps an angle into [−π, π).
pub fn wrap_angle(a: f64) -> f64 {
    (a + PI).rem_euclid(2.0 * PI) - PI
}

/// One transmitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioSource {
    position: Point,
    power_w: f64,
    gain: GainPattern,
    frequency_hz: f64,
    duty_factor: f64,
}

impl RadioSource {
    pub fn new(
        position: Point,
        power_w: f64,
        gain: GainPattern,
        frequency_hz: f64,
        duty_factor: f64,
    ) -> Result<Self> {
        if !(position.x.is_finite() && position.y.is_finite()) {
            return Err(Error::invalid("position", f64::NAN, "must be finite"));
        }
        if !(power_w.is_finite() && power_w > 0.0) {
            return Err(Error::invalid("power_w", power_w, "must be finite and > 0"));
        }
        if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
            return Err(Error::invalid("frequency_hz", frequency_hz, "must be finite and > 0"));
        }
        if !(duty_factor > 0.0 && duty_factor <= 1.0) {
            return Err(Error::invalid("duty_factor", duty_factor, "must be in (0, 1]"));
        }
        gain.validate()?;
        Ok(RadioSource {
            position,
            power_w,
            gain,
            frequency_hz,
            duty_factor,
        })
    }

    /// Isotropic, always-on source.
    pub fn isotropic(position: Point, power_w: f64, frequency_hz: f64) -> Result<Self> {
        RadioSource::new(position, power_w, GainPattern::Isotropic, frequency_hz, 1.0)
    }

    pub fn position(&self) -> Point {
        self.position
    }

    pub fn power_w(&self) -> f64 {
        self.power_w
    }

    pub fn gain(&self) -> &GainPattern {
        &self.gain
    }

    pub fn frequency_hz(&self) -> f64 {
        self.frequency_hz
    }

    pub fn duty_factor(&self) -> f64 {
        self.duty_factor
    }

    /// Peak EIRP `P_T · max G`, W.
    pub fn peak_eirp_w(&self) -> f64 {
        self.power_w * self.gain.peak_gain()
    }

    /// Copy with transmit power multiplied by `scale`.
    pub fn scaled(&self, scale: f64) -> Result<Self> {
        RadioSource::new(
            self.position,
            self.power_w * scale,
            self.gain,
            self.frequency_hz,
            self.duty_factor,
        )
    }

    pub fn with_gain(&self, gain: GainPattern) -> Result<Self> {
        RadioSource::new(self.position, self.power_w, gain, self.frequency_hz, self.duty_factor)
    }
}

/// Link-budget power density `duty · P_T · G(φ) / (4πd²)` at distance `d` and azimuth `phi`.
pub fn pd_link_budget(source: &RadioSource, d: f64, phi: f64) -> Result<f64> {
    if d.is_nan() || d <= 0.0 {
        return Err(Error::ZeroDistance { distance_m: d });
    }
    if !d.is_finite() {
        return Err(Error::invalid("distance_m", d, "must be finite"));
    }
    Ok(source.duty_factor * source.power_w * source.gain.gain(phi) / (4.0 * PI * d * d))
}
