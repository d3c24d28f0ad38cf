//! Tabular and graphical output.
//!
//! CSV numbers use Rust's shortest round-trip `Display` form, so identical
//! inputs always give identical bytes. SVG charts are emitted directly from
//! the same rows the CSV holds.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constants::{FREE_SPACE_IMPEDANCE, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY};
use crate::dosimetry::{sar_depth_profile, surface_sar, SurfaceExposure};
use crate::error::{Error, Result};
use crate::propagation::pd_from_eirp;
use crate::scenario::{ExposureMap, Registry};

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_num(v: f64) -> String {
    format!("{v}")
}

/// Comma-separated table with a header row and LF line endings.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// One `[[generation]]` entry of a comparison config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerationEntry {
    pub name: String,
    pub frequency_hz: f64,
    pub eirp_w: f64,
    pub distance_m: f64,
    pub tissue: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareConfig {
    #[serde(default)]
    pub generation: Vec<GenerationEntry>,
}

impl CompareConfig {
    pub fn from_toml_str(src: &str, origin: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::from_toml(origin, src, e))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub generation: String,
    pub frequency_hz: f64,
    pub exposure: SurfaceExposure,
}

impl CompareRow {
    pub fn sar_w_per_kg(&self) -> f64 {
        self.exposure.sar_surface()
    }

    pub fn delta_mm(&self) -> f64 {
        self.exposure.delta() * 1e3
    }
}

/// Surface exposure for each configured generation.
pub fn compare(config: &CompareConfig, registry: &Registry) -> Result<Vec<CompareRow>> {
    if config.generation.is_empty() {
        return Err(Error::config("compare", None, "no generations configured"));
    }
    config
        .generation
        .iter()
        .map(|g| {
            let tissue = registry.tissue(&g.tissue)?;
            let b = tissue.boundary(g.frequency_hz)?;
            let pd = pd_from_eirp(g.eirp_w, g.distance_m)?;
            Ok(CompareRow {
                generation: g.name.clone(),
                frequency_hz: g.frequency_hz,
                exposure: surface_sar(pd, b.reflection, b.penetration_depth, b.mass_density)?,
            })
        })
        .collect()
}

pub fn compare_csv(rows: &[CompareRow]) -> CsvTable {
    let mut t = CsvTable::new(&["generation", "frequency_hz", "sar_w_per_kg", "delta_mm"]);
    for r in rows {
        t.push(vec![
            r.generation.clone(),
            fmt_num(r.frequency_hz),
            fmt_num(r.sar_w_per_kg()),
            fmt_num(r.delta_mm()),
        ]);
    }
    t
}

/// `(depth m, SAR W/kg)` at `0, step, 2·step, …` up to `max_depth_m`.
pub fn depth_profile(exposure: &SurfaceExposure, max_depth_m: f64, step_m: f64) -> Result<Vec<(f64, f64)>> {
    if !(step_m.is_finite() && step_m > 0.0) {
        return Err(Error::invalid("step", step_m, "must be finite and > 0"));
    }
    if !(max_depth_m.is_finite() && max_depth_m > 0.0) {
        return Err(Error::invalid("max_depth", max_depth_m, "must be finite and > 0"));
    }
    let n = (max_depth_m / step_m + 1e-9).floor() as usize;
    if n > 10_000_000 {
        return Err(Error::invalid("step", step_m, "profile has too many rows"));
    }
    (0..=n)
        .map(|i| {
            let z = i as f64 * step_m;
            Ok((z, sar_depth_profile(exposure, z)?))
        })
        .collect()
}

pub fn profile_csv(rows: &[(f64, f64)]) -> CsvTable {
    let mut t = CsvTable::new(&["depth_mm", "sar_w_per_kg"]);
    for &(z, sar) in rows {
        t.push(vec![fmt_num(z * 1e3), fmt_num(sar)]);
    }
    t
}

pub fn map_csv(map: &ExposureMap) -> CsvTable {
    let mut t = CsvTable::new(&["x_m", "y_m", "pd_w_per_m2", "sar_w_per_kg", "margin_db", "dominant_source"]);
    for s in &map.samples {
        t.push(vec![
            fmt_num(s.point.x),
            fmt_num(s.point.y),
            fmt_num(s.pd_total),
            fmt_num(s.sar_surface),
            fmt_num(s.compliance.margin_db),
            s.dominant_source.to_string(),
        ]);
    }
    t
}

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 400.0;
const PAD_L: f64 = 80.0;
const PAD_R: f64 = 20.0;
const PAD_T: f64 = 40.0;
const PAD_B: f64 = 60.0;

fn svg_open(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_W}" height="{SVG_H}" viewBox="0 0 {SVG_W} {SVG_H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{SVG_W}" height="{SVG_H}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        SVG_W / 2.0,
        escape(title)
    );
}

fn svg_axes(out: &mut String, x_label: &str, y_label: &str) {
    let (x0, y0, x1, y1) = (PAD_L, SVG_H - PAD_B, SVG_W - PAD_R, PAD_T);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        SVG_H - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Bar chart on a logarithmic value axis; non-positive values draw no bar.
pub fn bar_chart_svg(title: &str, y_label: &str, bars: &[(String, f64)]) -> String {
    let mut out = String::new();
    svg_open(&mut out, title);
    svg_axes(&mut out, "", y_label);
    let logs: Vec<f64> = bars.iter().filter(|b| b.1 > 0.0).map(|b| b.1.log10()).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min).floor();
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil();
    let (lo, hi) = if logs.is_empty() {
        (0.0, 1.0)
    } else if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    };
    let plot_h = SVG_H - PAD_B - PAD_T;
    let y_of = |l: f64| SVG_H - PAD_B - (l - lo) / (hi - lo) * plot_h;
    let mut decade = lo;
    while decade <= hi {
        let y = y_of(decade);
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{y:.2}" x2="{:.1}" y2="{y:.2}" stroke="#ddd"/>"##,
            PAD_L,
            SVG_W - PAD_R
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.2}" text-anchor="end">1e{}</text>"#,
            PAD_L - 6.0,
            y + 4.0,
            decade as i64
        );
        decade += 1.0;
    }
    let slot = (SVG_W - PAD_L - PAD_R) / bars.len().max(1) as f64;
    for (i, (label, v)) in bars.iter().enumerate() {
        let x = PAD_L + slot * (i as f64 + 0.2);
        let w = slot * 0.6;
        if *v > 0.0 {
            let top = y_of(v.log10());
            let _ = writeln!(
                out,
                r##"<rect x="{x:.2}" y="{top:.2}" width="{w:.2}" height="{:.2}" fill="#4a78b5"><title>{}</title></rect>"##,
                SVG_H - PAD_B - top,
                fmt_num(*v)
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                x + w / 2.0,
                top - 4.0,
                fmt_num(*v)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.1}" text-anchor="middle">{}</text>"#,
            x + w / 2.0,
            SVG_H - PAD_B + 16.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Line plot with linear axes.
pub fn line_plot_svg(title: &str, x_label: &str, y_label: &str, points: &[(f64, f64)]) -> String {
    let mut out = String::new();
    svg_open(&mut out, title);
    svg_axes(&mut out, x_label, y_label);
    let (mut x_max, mut y_max) = (0.0f64, 0.0f64);
    for &(x, y) in points {
        x_max = x_max.max(x);
        y_max = y_max.max(y);
    }
    let x_max = if x_max > 0.0 { x_max } else { 1.0 };
    let y_max = if y_max > 0.0 { y_max } else { 1.0 };
    let (plot_w, plot_h) = (SVG_W - PAD_L - PAD_R, SVG_H - PAD_B - PAD_T);
    let sx = |x: f64| PAD_L + x / x_max * plot_w;
    let sy = |y: f64| SVG_H - PAD_B - y / y_max * plot_h;
    for k in 0..=4 {
        let f = k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(f * x_max),
            SVG_H - PAD_B + 16.0,
            fmt_num(f * x_max)
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.2}" text-anchor="end">{}</text>"#,
            PAD_L - 6.0,
            sy(f * y_max) + 4.0,
            fmt_num(f * y_max)
        );
    }
    let mut poly = String::new();
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            poly.push(' ');
        }
        let _ = write!(poly, "{:.2},{:.2}", sx(x), sy(y));
    }
    let _ = writeln!(
        out,
        r##"<polyline points="{poly}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##
    );
    out.push_str("</svg>\n");
    out
}

/// Fixed constants recorded in every manifest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantsBlock {
    pub speed_of_light_m_per_s: f64,
    pub vacuum_permittivity_f_per_m: f64,
    pub free_space_impedance_ohm: f64,
}

impl Default for ConstantsBlock {
    fn default() -> Self {
        ConstantsBlock {
            speed_of_light_m_per_s: SPEED_OF_LIGHT,
            vacuum_permittivity_f_per_m: VACUUM_PERMITTIVITY,
            free_space_impedance_ohm: FREE_SPACE_IMPEDANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: impl Into<String>, bytes: &[u8]) -> Self {
        FileDigest {
            path: path.into(),
            sha256: sha256_hex(bytes),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Provenance sidecar written next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments as given, excluding the program name.
    pub arguments: Vec<String>,
    pub constants: ConstantsBlock,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    pub fn new(command: &str, arguments: Vec<String>) -> Self {
        RunManifest {
            tool: "emfdose".to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            arguments,
            constants: ConstantsBlock::default(),
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}
