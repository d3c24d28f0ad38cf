//! Exposure limits, band classification and metric selection.

use std::fmt;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::error::{line_of, Error, Result};

/// Regulatory body whose metric-selection rule applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Authority {
    Icnirp,
    Fcc,
}

impl Authority {
    /// Highest frequency (inclusive) at which SAR is the assessment metric.
    pub fn sar_ceiling_hz(self) -> f64 {
        match self {
            Authority::Fcc => 6e9,
            Authority::Icnirp => 10e9,
        }
    }
}

impl fmt::Display for Authority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Authority::Icnirp => "ICNIRP",
            Authority::Fcc => "FCC",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Sar,
    Pd,
}

impl Metric {
    pub fn unit(self) -> &'static str {
        match self {
            Metric::Sar => "W/kg",
            Metric::Pd => "W/m²",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Sar => "SAR",
            Metric::Pd => "PD",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Population {
    #[default]
    General,
    Occupational,
}

impl Population {
    pub fn as_str(self) -> &'static str {
        match self {
            Population::General => "general",
            Population::Occupational => "occupational",
        }
    }
}

/// FCC switches to power density above 6 GHz, ICNIRP above 10 GHz; both
/// thresholds belong to the SAR side.
pub fn select_metric(frequency_hz: f64, authority: Authority) -> Metric {
    if frequency_hz <= authority.sar_ceiling_hz() {
        Metric::Sar
    } else {
        Metric::Pd
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Band {
    Low,
    Mid,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrequencyRange {
    Fr1,
    Fr2,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BandClass {
    pub band: Band,
    pub fr: FrequencyRange,
}

pub const MID_BAND_MIN_HZ: f64 = 1e9;
pub const MID_BAND_MAX_HZ: f64 = 6e9;
pub const FR1_HZ: (f64, f64) = (450e6, 6e9);
pub const FR2_HZ: (f64, f64) = (24.25e9, 52.6e9);

/// 5G band and frequency range of `frequency_hz`. Both ends of the mid band
/// and of each frequency range are inclusive.
pub fn classify_band(frequency_hz: f64) -> BandClass {
    let band = if frequency_hz < MID_BAND_MIN_HZ {
        Band::Low
    } else if frequency_hz <= MID_BAND_MAX_HZ {
        Band::Mid
    } else {
        Band::High
    };
    let within = |(lo, hi): (f64, f64)| frequency_hz >= lo && frequency_hz <= hi;
    let fr = if within(FR1_HZ) {
        FrequencyRange::Fr1
    } else if within(FR2_HZ) {
        FrequencyRange::Fr2
    } else {
        FrequencyRange::None
    };
    BandClass { band, fr }
}

/// One frequency-ranged limit. Covers `[f_min_hz, f_max_hz)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitRule {
    pub f_min_hz: f64,
    pub f_max_hz: f64,
    pub metric: Metric,
    /// W/kg for SAR, W/m² for PD.
    pub limit: f64,
    pub population: Population,
    /// Mass or area averaging the source document prescribes, e.g. `"10 g"`.
    /// Values computed here are unaveraged.
    pub averaging: Option<String>,
}

impl LimitRule {
    pub fn covers(&self, frequency_hz: f64) -> bool {
        frequency_hz >= self.f_min_hz && frequency_hz < self.f_max_hz
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitProfile {
    name: String,
    rules: Vec<LimitRule>,
}

impl LimitProfile {
    pub fn new(name: impl Into<String>, rules: Vec<LimitRule>) -> Result<Self> {
        for r in &rules {
            validate_rule(r).map_err(|(name, value, reason)| Error::invalid(name, value, reason))?;
        }
        if let Some((i, j)) = find_overlap(&rules) {
            return Err(Error::config(
                "limit profile",
                None,
                format!("{} overlaps {}", describe(&rules[i], i, None), describe(&rules[j], j, None)),
            ));
        }
        Ok(LimitProfile {
            name: name.into(),
            rules,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rules(&self) -> &[LimitRule] {
        &self.rules
    }

    /// Index of the rule covering `frequency_hz` for `population`.
    pub fn rule_index(&self, frequency_hz: f64, population: Population) -> Result<usize> {
        self.rules
            .iter()
            .position(|r| r.population == population && r.covers(frequency_hz))
            .ok_or_else(|| Error::NoRuleForFrequency {
                profile: self.name.clone(),
                population: population.as_str(),
                frequency_hz,
            })
    }

    /// Parses a limit-profile file.
    ///
    /// ```toml
    /// name = "icnirp2020-public"
    ///
    /// [[rule]]
    /// f_min_hz = 100e3
    /// f_max_hz = 6e9
    /// metric = "sar"
    /// limit = 2.0
    /// population = "general"
    /// averaging = "10 g"   # optional
    /// ```
    pub fn from_toml_str(src: &str, origin: &str) -> Result<Self> {
        let raw: RawProfile = toml::from_str(src).map_err(|e| Error::from_toml(origin, src, e))?;
        let mut rules = Vec::with_capacity(raw.rule.len());
        let mut lines = Vec::with_capacity(raw.rule.len());
        for spanned in &raw.rule {
            let line = line_of(src, spanned.span().start);
            let r = spanned.get_ref();
            let rule = LimitRule {
                f_min_hz: r.f_min_hz,
                f_max_hz: r.f_max_hz,
                metric: r.metric,
                limit: r.limit,
                population: r.population,
                averaging: r.averaging.clone(),
            };
            if let Err((key, value, reason)) = validate_rule(&rule) {
                return Err(Error::config(
                    origin,
                    Some(line),
                    format!("key `{key}` = {value} {reason}"),
                ));
            }
            rules.push(rule);
            lines.push(line);
        }
        if let Some((i, j)) = find_overlap(&rules) {
            return Err(Error::config(
                origin,
                Some(lines[j]),
                format!(
                    "{} overlaps {}",
                    describe(&rules[i], i, Some(lines[i])),
                    describe(&rules[j], j, Some(lines[j]))
                ),
            ));
        }
        LimitProfile::new(raw.name, rules)
    }
}

fn validate_rule(r: &LimitRule) -> std::result::Result<(), (&'static str, f64, &'static str)> {
    if !(r.f_min_hz.is_finite() && r.f_min_hz >= 0.0) {
        return Err(("f_min_hz", r.f_min_hz, "must be finite and >= 0"));
    }
    if r.f_max_hz.is_nan() || r.f_min_hz.is_nan() || r.f_max_hz <= r.f_min_hz {
        return Err(("f_max_hz", r.f_max_hz, "must exceed f_min_hz"));
    }
    if !(r.limit.is_finite() && r.limit > 0.0) {
        return Err(("limit", r.limit, "must be finite and > 0"));
    }
    Ok(())
}

fn find_overlap(rules: &[LimitRule]) -> Option<(usize, usize)> {
    for (j, b) in rules.iter().enumerate() {
        for (i, a) in rules[..j].iter().enumerate() {
            if a.population == b.population && a.f_min_hz < b.f_max_hz && b.f_min_hz < a.f_max_hz {
                return Some((i, j));
            }
        }
    }
    None
}

fn describe(r: &LimitRule, index: usize, line: Option<usize>) -> String {
    let at = line.map(|l| format!(" (line {l})")).unwrap_or_default();
    format!(
        "rule #{}{at} [{}, {}) Hz {} {}",
        index + 1,
        r.f_min_hz,
        r.f_max_hz,
        r.metric,
        r.population.as_str()
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    name: String,
    #[serde(default)]
    #[allow(dead_code)]
    source: Option<String>,
    #[serde(default)]
    rule: Vec<Spanned<RawRule>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    f_min_hz: f64,
    f_max_hz: f64,
    metric: Metric,
    limit: f64,
    #[serde(default)]
    population: Population,
    averaging: Option<String>,
}

/// Measured exposure quantities at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExposureLevels {
    pub pd_w_per_m2: f64,
    pub sar_w_per_kg: f64,
}

impl ExposureLevels {
    pub fn value(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Sar => self.sar_w_per_kg,
            Metric::Pd => self.pd_w_per_m2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplianceResult {
    pub metric_used: Metric,
    pub measured: f64,
    pub limit: f64,
    /// `10·log10(limit/measured)`, clamped to ±[`MARGIN_CAP_DB`].
    pub margin_db: f64,
    pub compliant: bool,
    /// Index of the applied rule within its profile.
    pub rule_index: usize,
}

/// Bound on reported margins; a zero measurement reports `+MARGIN_CAP_DB`.
pub const MARGIN_CAP_DB: f64 = 300.0;

pub fn margin_db(measured: f64, limit: f64) -> f64 {
    if measured <= 0.0 {
        return MARGIN_CAP_DB;
    }
    let m = (10.0 * (limit / measured).log10()).clamp(-MARGIN_CAP_DB, MARGIN_CAP_DB);
    if measured > limit {
        // keep the sign consistent with the comparison when the ratio rounds to 1
        m.min(-f64::MIN_POSITIVE)
    } else {
        m.max(0.0)
    }
}

/// Compares `levels` against the rule that `profile` applies at `frequency_hz`
/// for the general public.
pub fn check(levels: &ExposureLevels, profile: &LimitProfile, frequency_hz: f64) -> Result<ComplianceResult> {
    check_for(levels, profile, frequency_hz, Population::General)
}

pub fn check_for(
    levels: &ExposureLevels,
    profile: &LimitProfile,
    frequency_hz: f64,
    population: Population,
) -> Result<ComplianceResult> {
    let rule_index = profile.rule_index(frequency_hz, population)?;
    Ok(check_rule(levels, &profile.rules[rule_index], rule_index))
}

pub(crate) fn check_rule(levels: &ExposureLevels, rule: &LimitRule, rule_index: usize) -> ComplianceResult {
    let measured = levels.value(rule.metric);
    ComplianceResult {
        metric_used: rule.metric,
        measured,
        limit: rule.limit,
        margin_db: margin_db(measured, rule.limit),
        compliant: measured <= rule.limit,
        rule_index,
    }
}
