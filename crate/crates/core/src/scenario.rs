//! Multi-source deployments: point evaluation, exposure maps and mitigation.
//!
//! Power densities from distinct transmitters add incoherently. Surface SAR
//! is computed per source with the tissue parameters at that source's
//! frequency and then summed. When sources span several frequencies, every
//! applicable limit rule is checked and the one with the smallest margin is
//! reported.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compliance::{check_rule, Authority, ComplianceResult, ExposureLevels, LimitProfile, Population};
use crate::dosimetry::surface_sar;
use crate::error::{Error, Result};
use crate::fixtures;
pub use crate::propagation::Point;
use crate::propagation::{pd_link_budget, wrap_angle, GainPattern, RadioSource};
use crate::tissue::{BoundaryParams, TissueProfile};

/// Rectangular evaluation grid. Both bounds are included when they fall on
/// a multiple of `step` from the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub step: f64,
}

impl GridSpec {
    /// Refuses grids larger than this many points.
    pub const MAX_POINTS: usize = 50_000_000;

    /// Number of columns and rows.
    pub fn dimensions(&self) -> Result<(usize, usize)> {
        let g = self;
        if !(g.step.is_finite() && g.step > 0.0) {
            return Err(Error::invalid("step", g.step, "grid step must be finite and > 0"));
        }
        for (name, v) in [("x_min", g.x_min), ("x_max", g.x_max), ("y_min", g.y_min), ("y_max", g.y_max)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, v, "grid bound must be finite"));
            }
        }
        if g.x_max < g.x_min || g.y_max < g.y_min {
            return Err(Error::EmptyGrid);
        }
        let count = |lo: f64, hi: f64| ((hi - lo) / g.step + 1e-9).floor() as usize + 1;
        let (nx, ny) = (count(g.x_min, g.x_max), count(g.y_min, g.y_max));
        if nx.saturating_mul(ny) > Self::MAX_POINTS {
            return Err(Error::invalid("step", g.step, "grid has too many points"));
        }
        Ok((nx, ny))
    }

    /// Point at column `i`, row `j`.
    pub fn point(&self, i: usize, j: usize) -> Point {
        Point::new(self.x_min + i as f64 * self.step, self.y_min + j as f64 * self.step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Point(Point),
    Grid(GridSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    sources: Vec<RadioSource>,
    tissue: Arc<TissueProfile>,
    limits: Arc<LimitProfile>,
    authority: Authority,
    population: Population,
    evaluation: Evaluation,
}

impl Scenario {
    pub fn new(
        sources: Vec<RadioSource>,
        tissue: Arc<TissueProfile>,
        limits: Arc<LimitProfile>,
        authority: Authority,
        evaluation: Evaluation,
    ) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::invalid("sources", 0.0, "a scenario needs at least one source"));
        }
        match evaluation {
            Evaluation::Grid(g) => {
                g.dimensions()?;
            }
            Evaluation::Point(p) => {
                if !(p.x.is_finite() && p.y.is_finite()) {
                    return Err(Error::invalid("point", f64::NAN, "must be finite"));
                }
            }
        }
        Ok(Scenario {
            sources,
            tissue,
            limits,
            authority,
            population: Population::General,
            evaluation,
        })
    }

    pub fn with_population(mut self, population: Population) -> Self {
        self.population = population;
        self
    }

    pub fn with_evaluation(self, evaluation: Evaluation) -> Result<Self> {
        let population = self.population;
        Ok(Scenario::new(self.sources, self.tissue, self.limits, self.authority, evaluation)?
            .with_population(population))
    }

    pub fn sources(&self) -> &[RadioSource] {
        &self.sources
    }

    pub fn tissue(&self) -> &TissueProfile {
        &self.tissue
    }

    pub fn limits(&self) -> &LimitProfile {
        &self.limits
    }

    pub fn authority(&self) -> Authority {
        self.authority
    }

    pub fn population(&self) -> Population {
        self.population
    }

    pub fn evaluation(&self) -> Evaluation {
        self.evaluation
    }

    /// Copy with every source's transmit power multiplied by `scale`.
    pub fn scaled(&self, scale: f64) -> Result<Self> {
        let sources = self.sources.iter().map(|s| s.scaled(scale)).collect::<Result<_>>()?;
        Ok(Scenario {
            sources,
            ..self.clone()
        })
    }

    /// Copy with extra sources appended.
    pub fn with_additional_sources(&self, extra: &[RadioSource]) -> Self {
        let mut out = self.clone();
        out.sources.extend_from_slice(extra);
        out
    }

    /// Serializable form referring to tissue and limits by name.
    pub fn to_file(&self) -> ScenarioFile {
        let (point, grid) = match self.evaluation {
            Evaluation::Point(p) => (Some(p), None),
            Evaluation::Grid(g) => (None, Some(g)),
        };
        ScenarioFile {
            tissue: self.tissue.name().to_owned(),
            limits: self.limits.name().to_owned(),
            authority: self.authority,
            population: self.population,
            source: self
                .sources
                .iter()
                .map(|s| SourceEntry {
                    position: [s.position().x, s.position().y],
                    power_w: Some(s.power_w()),
                    eirp_w: None,
                    frequency_hz: s.frequency_hz(),
                    duty_factor: s.duty_factor(),
                    pattern: *s.gain(),
                })
                .collect(),
            point,
            grid,
        }
    }
}

/// Exposure at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExposureSample {
    pub point: Point,
    /// Incoherent sum of per-source power densities, W/m².
    pub pd_total: f64,
    /// Sum of per-source surface SAR, W/kg.
    pub sar_surface: f64,
    /// Source contributing the largest power density (lowest index on ties).
    pub dominant_source: usize,
    /// Most restrictive applicable rule.
    pub compliance: ComplianceResult,
}

impl ExposureSample {
    pub fn levels(&self) -> ExposureLevels {
        ExposureLevels {
            pd_w_per_m2: self.pd_total,
            sar_w_per_kg: self.sar_surface,
        }
    }
}

/// Per-source tissue parameters and the rules that apply to the scenario,
/// resolved once before evaluating any points.
struct Prepared<'a> {
    scn: &'a Scenario,
    boundary: Vec<BoundaryParams>,
    rules: Vec<usize>,
}

impl<'a> Prepared<'a> {
    fn new(scn: &'a Scenario) -> Result<Self> {
        let boundary = scn
            .sources
            .iter()
            .map(|s| scn.tissue.boundary(s.frequency_hz()))
            .collect::<Result<Vec<_>>>()?;
        let mut rules = Vec::new();
        for s in &scn.sources {
            let idx = scn.limits.rule_index(s.frequency_hz(), scn.population)?;
            if !rules.contains(&idx) {
                rules.push(idx);
            }
        }
        Ok(Prepared {
            scn,
            boundary,
            rules,
        })
    }

    fn levels(&self, p: Point) -> Result<(ExposureLevels, usize)> {
        let mut pd_total = 0.0;
        let mut sar_total = 0.0;
        let mut dominant = (0, f64::NEG_INFINITY);
        for (i, (src, b)) in self.scn.sources.iter().zip(&self.boundary).enumerate() {
            let d = src.position().distance_to(p);
            if d == 0.0 {
                return Err(Error::SourceCollocation { source_index: i });
            }
            let pd = pd_link_budget(src, d, src.position().bearing_to(p))?;
            let sar = surface_sar(pd, b.reflection, b.penetration_depth, b.mass_density)?.sar_surface();
            pd_total += pd;
            sar_total += sar;
            if pd > dominant.1 {
                dominant = (i, pd);
            }
        }
        Ok((
            ExposureLevels {
                pd_w_per_m2: pd_total,
                sar_w_per_kg: sar_total,
            },
            dominant.0,
        ))
    }

    fn results(&self, levels: &ExposureLevels) -> impl Iterator<Item = ComplianceResult> + '_ {
        let levels = *levels;
        self.rules
            .iter()
            .map(move |&i| check_rule(&levels, &self.scn.limits.rules()[i], i))
    }

    fn sample(&self, p: Point) -> Result<ExposureSample> {
        let (levels, dominant_source) = self.levels(p)?;
        let compliance = self
            .results(&levels)
            .reduce(|best, r| if r.margin_db < best.margin_db { r } else { best })
            .expect("scenario has at least one source");
        Ok(ExposureSample {
            point: p,
            pd_total: levels.pd_w_per_m2,
            sar_surface: levels.sar_w_per_kg,
            dominant_source,
            compliance,
        })
    }
}

/// Evaluates the scenario's sources at `p`.
pub fn evaluate_point(scn: &Scenario, p: Point) -> Result<ExposureSample> {
    Prepared::new(scn)?.sample(p)
}

/// Grid evaluation result, row-major by `y` then `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExposureMap {
    pub columns: usize,
    pub rows: usize,
    pub samples: Vec<ExposureSample>,
    /// Grid points that coincide with a source and were left out.
    pub skipped: Vec<Point>,
}

/// Evaluates every grid point, in parallel on the current rayon pool.
///
/// Output order and values do not depend on the number of threads.
pub fn exposure_map(scn: &Scenario) -> Result<ExposureMap> {
    let grid = match scn.evaluation {
        Evaluation::Grid(g) => g,
        Evaluation::Point(_) => {
            return Err(Error::invalid("evaluation", f64::NAN, "scenario has no grid"));
        }
    };
    let (nx, ny) = grid.dimensions()?;
    let prepared = Prepared::new(scn)?;
    let evaluated: Vec<Result<ExposureSample>> = (0..nx * ny)
        .into_par_iter()
        .map(|k| prepared.sample(grid.point(k % nx, k / nx)))
        .collect();
    let mut samples = Vec::with_capacity(evaluated.len());
    let mut skipped = Vec::new();
    for (k, r) in evaluated.into_iter().enumerate() {
        match r {
            Ok(s) => samples.push(s),
            Err(Error::SourceCollocation { .. }) => skipped.push(grid.point(k % nx, k / nx)),
            Err(e) => return Err(e),
        }
    }
    Ok(ExposureMap {
        columns: nx,
        rows: ny,
        samples,
        skipped,
    })
}

/// Largest uniform power multiplier `s ∈ (0, 1]` keeping `protected` compliant.
///
/// Every metric is linear in transmit power, so `s` is the smallest
/// `limit/measured` ratio over the applicable rules. The closed form is then
/// adjusted by a few ulps so that re-evaluating the scaled scenario agrees.
pub fn power_control(scn: &Scenario, protected: Point) -> Result<f64> {
    let prepared = Prepared::new(scn)?;
    let (levels, _) = prepared.levels(protected)?;
    let ratio = prepared
        .results(&levels)
        .map(|r| if r.measured > 0.0 { r.limit / r.measured } else { f64::INFINITY })
        .fold(f64::INFINITY, f64::min);
    if ratio >= 1.0 {
        return Ok(1.0);
    }
    let compliant_at = |s: f64| -> Result<bool> {
        Ok(evaluate_point(&scn.scaled(s)?, protected)?.compliance.compliant)
    };
    let mut s = ratio;
    for _ in 0..64 {
        if compliant_at(s)? {
            break;
        }
        s = s.next_down();
    }
    for _ in 0..4 {
        let up = s.next_up();
        if up > 1.0 || !compliant_at(up)? {
            break;
        }
        s = up;
    }
    Ok(s)
}

/// Points source `source_index` directly away from `protected`.
pub fn steer_away(scn: &Scenario, source_index: usize, protected: Point) -> Result<Scenario> {
    let src = scn.sources.get(source_index).ok_or(Error::NoSuchSource {
        source_index,
        count: scn.sources.len(),
    })?;
    if src.position() == protected {
        return Err(Error::SourceCollocation { source_index });
    }
    let away = wrap_angle(src.position().bearing_to(protected) + PI);
    let pattern = src
        .gain()
        .pointed_at(away)
        .ok_or(Error::NotSteerable { source_index })?;
    let mut out = scn.clone();
    out.sources[source_index] = src.with_gain(pattern)?;
    Ok(out)
}

/// One `[[source]]` entry of a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceEntry {
    pub position: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_w: Option<f64>,
    /// Peak EIRP; converted to transmit power using the pattern's peak gain.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eirp_w: Option<f64>,
    pub frequency_hz: f64,
    #[serde(default = "one")]
    pub duty_factor: f64,
    #[serde(default = "isotropic")]
    pub pattern: GainPattern,
}

fn one() -> f64 {
    1.0
}

fn isotropic() -> GainPattern {
    GainPattern::Isotropic
}

fn is_general(p: &Population) -> bool {
    *p == Population::General
}

/// On-disk scenario description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub tissue: String,
    pub limits: String,
    pub authority: Authority,
    #[serde(default, skip_serializing_if = "is_general")]
    pub population: Population,
    pub source: Vec<SourceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

impl ScenarioFile {
    pub fn from_toml_str(src: &str, origin: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::from_toml(origin, src, e))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("scenario files serialize to TOML")
    }
}

/// Named tissue tables and limit profiles that scenario files refer to.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    tissues: BTreeMap<String, Arc<TissueProfile>>,
    limits: BTreeMap<String, Arc<LimitProfile>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    /// Registry preloaded with the data files shipped in the crate.
    pub fn builtin() -> Self {
        let mut r = Registry::empty();
        for t in fixtures::builtin_tissues() {
            r.add_tissue(t);
        }
        for l in fixtures::builtin_limits() {
            r.add_limits(l);
        }
        r
    }

    /// Adds or replaces a tissue by name.
    pub fn add_tissue(&mut self, tissue: TissueProfile) -> Arc<TissueProfile> {
        let t = Arc::new(tissue);
        self.tissues.insert(t.name().to_owned(), t.clone());
        t
    }

    /// Adds or replaces a limit profile by name.
    pub fn add_limits(&mut self, limits: LimitProfile) -> Arc<LimitProfile> {
        let l = Arc::new(limits);
        self.limits.insert(l.name().to_owned(), l.clone());
        l
    }

    pub fn tissue(&self, name: &str) -> Result<Arc<TissueProfile>> {
        self.tissues.get(name).cloned().ok_or_else(|| Error::UnknownName {
            kind: "tissue",
            name: name.to_owned(),
        })
    }

    pub fn limits(&self, name: &str) -> Result<Arc<LimitProfile>> {
        self.limits.get(name).cloned().ok_or_else(|| Error::UnknownName {
            kind: "limit profile",
            name: name.to_owned(),
        })
    }

    pub fn tissue_names(&self) -> impl Iterator<Item = &str> {
        self.tissues.keys().map(String::as_str)
    }

    pub fn limit_names(&self) -> impl Iterator<Item = &str> {
        self.limits.keys().map(String::as_str)
    }

    /// Resolves names and validates every source. `origin` labels errors.
    pub fn resolve(&self, file: &ScenarioFile, origin: &str) -> Result<Scenario> {
        let tissue = self.tissue(&file.tissue)?;
        let limits = self.limits(&file.limits)?;
        let sources = file
            .source
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let power_w = match (e.power_w, e.eirp_w) {
                    (Some(p), None) => p,
                    (None, Some(eirp)) => eirp / e.pattern.peak_gain(),
                    _ => {
                        return Err(Error::config(
                            origin,
                            None,
                            format!("source #{}: exactly one of `power_w` or `eirp_w` is required", i + 1),
                        ))
                    }
                };
                let position = Point::new(e.position[0], e.position[1]);
                RadioSource::new(position, power_w, e.pattern, e.frequency_hz, e.duty_factor)
                    .map_err(|err| Error::config(origin, None, format!("source #{}: {err}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let evaluation = match (file.point, file.grid) {
            (Some(p), None) => Evaluation::Point(p),
            (None, Some(g)) => Evaluation::Grid(g),
            _ => {
                return Err(Error::config(origin, None, "exactly one of `[point]` or `[grid]` is required"));
            }
        };
        Ok(Scenario::new(sources, tissue, limits, file.authority, evaluation)?.with_population(file.population))
    }

    /// Parses and resolves scenario TOML.
    pub fn load_scenario(&self, src: &str, origin: &str) -> Result<Scenario> {
        self.resolve(&ScenarioFile::from_toml_str(src, origin)?, origin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compliance::Metric;

    fn registry() -> Registry {
        Registry::builtin()
    }

    fn single(power_w: f64, pattern: GainPattern, at: Point) -> Scenario {
        let r = registry();
        let src = RadioSource::new(Point::default(), power_w, pattern, 28e9, 1.0).unwrap();
        Scenario::new(
            vec![src],
            r.tissue("dry-skin").unwrap(),
            r.limits("icnirp2020-public").unwrap(),
            Authority::Icnirp,
            Evaluation::Point(at),
        )
        .unwrap()
    }

    #[test]
    fn calibration_round_trip_5g() {
        let scn = single(0.133615836, GainPattern::Isotropic, Point::new(0.1, 0.0));
        let s = evaluate_point(&scn, Point::new(0.1, 0.0)).unwrap();
        assert!((s.pd_total - 1.06328).abs() < 1e-4, "{}", s.pd_total);
        assert!((s.sar_surface - 1.24).abs() / 1.24 < 1e-6, "{}", s.sar_surface);
        assert_eq!(s.compliance.metric_used, Metric::Pd);
    }

    #[test]
    fn collocated_point_errors() {
        let scn = single(1.0, GainPattern::Isotropic, Point::new(1.0, 0.0));
        assert_eq!(
            evaluate_point(&scn, Point::default()),
            Err(Error::SourceCollocation { source_index: 0 })
        );
    }

    #[test]
    fn duplicated_source_doubles_pd() {
        let scn = single(1.0, GainPattern::Isotropic, Point::new(1.0, 0.0));
        let p = Point::new(0.3, -0.4);
        let one = evaluate_point(&scn, p).unwrap();
        let two = evaluate_point(&scn.with_additional_sources(scn.sources()), p).unwrap();
        assert_eq!(two.pd_total, 2.0 * one.pd_total);
        assert_eq!(two.dominant_source, 0);
    }

    #[test]
    fn back_lobe_is_at_floor() {
        let beam = GainPattern::SteeredBeam { steer_rad: PI, exponent: 64.0, peak_gain: 10.0 };
        let p = Point::new(1.0, 0.0);
        let away = evaluate_point(&single(1.0, beam, p), p).unwrap();
        let toward = GainPattern::SteeredBeam { steer_rad: 0.0, exponent: 64.0, peak_gain: 10.0 };
        let at = evaluate_point(&single(1.0, toward, p), p).unwrap();
        let expected = 1.0 * GainPattern::STEERED_FLOOR / (4.0 * PI);
        assert!((away.pd_total - expected).abs() < 1e-15);
        assert!(10.0 * (at.pd_total / away.pd_total).log10() > 30.0);
    }

    #[test]
    fn grid_dimensions() {
        let g = GridSpec { x_min: -10.0, x_max: 9.9, y_min: -10.0, y_max: 9.9, step: 0.1 };
        assert_eq!(g.dimensions().unwrap(), (200, 200));
        let g = GridSpec { x_min: 0.0, x_max: 0.0, y_min: 0.0, y_max: 0.0, step: 1.0 };
        assert_eq!(g.dimensions().unwrap(), (1, 1));
        let g = GridSpec { x_min: 1.0, x_max: 0.0, y_min: 0.0, y_max: 0.0, step: 1.0 };
        assert_eq!(g.dimensions(), Err(Error::EmptyGrid));
        let g = GridSpec { x_min: 0.0, x_max: 1.0, y_min: 0.0, y_max: 1.0, step: 0.0 };
        assert!(matches!(g.dimensions(), Err(Error::InvalidParameter { .. })));
    }

    #[test]
    fn map_skips_collocated_points() {
        let g = GridSpec { x_min: -1.0, x_max: 1.0, y_min: -1.0, y_max: 1.0, step: 1.0 };
        let scn = single(1.0, GainPattern::Isotropic, Point::default())
            .with_evaluation(Evaluation::Grid(g))
            .unwrap();
        let map = exposure_map(&scn).unwrap();
        assert_eq!(map.samples.len(), 8);
        assert_eq!(map.skipped, vec![Point::default()]);
        assert_eq!(map.samples[0].point, Point::new(-1.0, -1.0));
        assert_eq!(map.samples[1].point, Point::new(0.0, -1.0));
    }

    #[test]
    fn map_requires_grid() {
        let scn = single(1.0, GainPattern::Isotropic, Point::new(1.0, 0.0));
        assert!(exposure_map(&scn).is_err());
    }

    #[test]
    fn power_control_cases() {
        let p = Point::new(1.0, 0.0);
        let ok = single(1.0, GainPattern::Isotropic, p);
        assert_eq!(power_control(&ok, p).unwrap(), 1.0);

        // 80π W at 1 m gives 20 W/m², twice the 10 W/m² limit
        let twice = single(80.0 * PI, GainPattern::Isotropic, p);
        let s = power_control(&twice, p).unwrap();
        assert!((s - 0.5).abs() < 1e-12);
        assert!(evaluate_point(&twice.scaled(s).unwrap(), p).unwrap().compliance.compliant);
    }

    #[test]
    fn steer_away_cases() {
        let p = Point::new(0.0, 2.0);
        let iso = single(1.0, GainPattern::Isotropic, p);
        assert_eq!(steer_away(&iso, 0, p), Err(Error::NotSteerable { source_index: 0 }));
        assert!(matches!(steer_away(&iso, 3, p), Err(Error::NoSuchSource { .. })));

        let beam = GainPattern::SteeredBeam { steer_rad: PI / 2.0, exponent: 16.0, peak_gain: 10.0 };
        let scn = single(1.0, beam, p);
        let once = steer_away(&scn, 0, p).unwrap();
        let twice = steer_away(&once, 0, p).unwrap();
        assert_eq!(once, twice);
        let before = evaluate_point(&scn, p).unwrap().pd_total;
        let after = evaluate_point(&once, p).unwrap().pd_total;
        assert!(10.0 * (before / after).log10() >= 20.0);
    }

    #[test]
    fn scenario_file_round_trip() {
        let r = registry();
        let scn = r.load_scenario(fixtures::scenarios::MAP_5_SOURCES, "map").unwrap();
        assert_eq!(scn.sources().len(), 5);
        let text = scn.to_file().to_toml_string();
        let again = r.load_scenario(&text, "again").unwrap();
        assert_eq!(scn, again);
    }

    #[test]
    fn scenario_file_strictness() {
        let r = registry();
        let bad = fixtures::scenarios::COMPLIANT.replace("power_w", "powr_w");
        let msg = r.load_scenario(&bad, "typo.toml").unwrap_err().to_string();
        assert!(msg.contains("powr_w") && msg.contains("typo.toml:"), "{msg}");

        let bad = fixtures::scenarios::COMPLIANT.replace("kind = \"isotropic\"", "kind = \"isotropic\"\nexponent = 2.0");
        assert!(r.load_scenario(&bad, "x").is_err());

        let both = fixtures::scenarios::COMPLIANT.replace("power_w = 1.0", "power_w = 1.0\neirp_w = 1.0");
        let msg = r.load_scenario(&both, "both.toml").unwrap_err().to_string();
        assert!(msg.contains("eirp_w"), "{msg}");

        let unknown = fixtures::scenarios::COMPLIANT.replace("dry-skin", "wet-skin");
        assert!(matches!(r.load_scenario(&unknown, "x"), Err(Error::UnknownName { .. })));
    }
}
