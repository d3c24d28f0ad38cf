//! Subcommand implementations.

use std::path::Path;

use anyhow::{bail, Context, Result};
use emfdose::compliance::check_for;
use emfdose::constants::wavelength;
use emfdose::fixtures;
use emfdose::propagation::pd_from_eirp;
use emfdose::report::{
    bar_chart_svg, compare, compare_csv, depth_profile, fmt_num, line_plot_svg, map_csv, profile_csv, CompareConfig,
};
use emfdose::scenario::ScenarioFile;
use emfdose::{
    classify_band, evaluate_point, exposure_map, field_from_pd, pd_from_field, power_control, select_metric,
    steer_away, surface_sar, Authority, FrequencyRange, Evaluation, ExposureLevels, ExposureMap, ExposureSample, Metric, Point,
    Population, Scenario, SurfaceExposure,
};

use crate::output::{Catalog, Run};
use crate::{CommonArgs, CompareArgs, MapArgs, MitigateArgs, Outcome, PdArgs, ProfileArgs, SarArgs, ScenarioArgs, Strategy};

const DEFAULT_TISSUE: &str = "dry-skin";
const NEAR_FIELD_WAVELENGTHS: f64 = 10.0;

fn require(flag: &str, value: f64, ok: bool, reason: &str) -> Result<f64> {
    if !ok || value.is_nan() {
        bail!("invalid value for {flag}: {value} ({reason})");
    }
    Ok(value)
}

fn positive(flag: &str, value: f64) -> Result<f64> {
    require(flag, value, value.is_finite() && value > 0.0, "must be finite and > 0")
}

fn non_negative(flag: &str, value: f64) -> Result<f64> {
    require(flag, value, value.is_finite() && value >= 0.0, "must be finite and >= 0")
}

fn duty(value: f64) -> Result<f64> {
    require("--duty-factor", value, value > 0.0 && value <= 1.0, "must be in (0, 1]")
}

/// Time-averaged EIRP toward the exposed point from `--eirp-w` or
/// `--power-w`·`--gain`, scaled by `--duty-factor`.
fn effective_eirp(eirp_w: Option<f64>, power_w: Option<f64>, gain: f64, duty_factor: f64) -> Result<f64> {
    let duty_factor = duty(duty_factor)?;
    let peak = match (eirp_w, power_w) {
        (Some(e), None) => non_negative("--eirp-w", e)?,
        (None, Some(p)) => non_negative("--power-w", p)? * positive("--gain", gain)?,
        (None, None) => bail!("one of --eirp-w or --power-w is required"),
        (Some(_), Some(_)) => bail!("--eirp-w and --power-w are mutually exclusive"),
    };
    Ok(peak * duty_factor)
}

fn link_budget_pd(eirp: f64, distance_m: f64) -> Result<f64> {
    let d = positive("--distance-m", distance_m)?;
    Ok(pd_from_eirp(eirp, d)?)
}

fn near_field_advisory(frequency_hz: f64, distance_m: f64) {
    let lambda = wavelength(frequency_hz);
    if distance_m < NEAR_FIELD_WAVELENGTHS * lambda {
        eprintln!(
            "note: distance {} m is within {} wavelengths ({} m); the far-field power density may not hold",
            fmt_num(distance_m),
            NEAR_FIELD_WAVELENGTHS,
            fmt_num(NEAR_FIELD_WAVELENGTHS * lambda)
        );
    }
}

fn tissue_name(common: &CommonArgs) -> &str {
    common.tissue.as_deref().unwrap_or(DEFAULT_TISSUE)
}

/// Surface exposure at `frequency_hz` for an incident power density.
fn exposure_for(
    catalog: &Catalog,
    common: &CommonArgs,
    run: &mut Run,
    pd: f64,
    frequency_hz: f64,
) -> Result<SurfaceExposure> {
    let tissue = catalog.use_tissue(tissue_name(common), run)?;
    let b = tissue.boundary(frequency_hz).context("--freq-hz")?;
    Ok(surface_sar(pd, b.reflection, b.penetration_depth, b.mass_density)?)
}

fn band_label(frequency_hz: f64) -> String {
    let class = classify_band(frequency_hz);
    let fr = match class.fr {
        FrequencyRange::Fr1 => "FR1",
        FrequencyRange::Fr2 => "FR2",
        FrequencyRange::None => "outside FR1/FR2",
    };
    format!("{:?} band, {fr}", class.band)
}

pub fn sar(a: SarArgs, args: Vec<String>) -> Result<Outcome> {
    let mut run = Run::new("sar", args, &a.common);
    let catalog = Catalog::load(&a.common)?;
    let s = &a.source;
    let f = positive("--freq-hz", s.freq_hz)?;
    let eirp = effective_eirp(s.eirp_w, s.power_w, s.gain, s.duty_factor)?;
    let pd = link_budget_pd(eirp, s.distance_m)?;
    let e = exposure_for(&catalog, &a.common, &mut run, pd, f)?;
    near_field_advisory(f, s.distance_m);

    println!("frequency_hz      {} ({})", fmt_num(f), band_label(f));
    println!("pd_w_per_m2       {}", fmt_num(e.pd_incident()));
    println!("reflection        {}", fmt_num(e.reflection()));
    println!("delta_mm          {}", fmt_num(e.delta() * 1e3));
    println!("sar_w_per_kg      {}", fmt_num(e.sar_surface()));
    for auth in [Authority::Icnirp, Authority::Fcc] {
        println!("{:<18}{}", format!("metric_{}", auth.to_string().to_lowercase()), select_metric(f, auth));
    }

    let mut outcome = Outcome::Done;
    if let Some(name) = catalog.user_limits() {
        let limits = catalog.use_limits(name, &mut run)?;
        let levels = ExposureLevels {
            pd_w_per_m2: e.pd_incident(),
            sar_w_per_kg: e.sar_surface(),
        };
        let r = check_for(&levels, &limits, f, Population::General)?;
        warn_rule(&limits.rules()[r.rule_index], r.rule_index, f, None);
        println!(
            "limit             {} {} {} ({})",
            r.metric_used,
            fmt_num(r.limit),
            r.metric_used.unit(),
            limits.name()
        );
        println!("margin_db         {}", fmt_num(r.margin_db));
        println!("status            {}", status(r.compliant));
        outcome = if r.compliant { Outcome::Compliant } else { Outcome::NonCompliant };
    }

    if let Some(path) = &a.common.csv {
        let mut t = emfdose::report::CsvTable::new(&[
            "frequency_hz",
            "distance_m",
            "pd_w_per_m2",
            "reflection",
            "delta_mm",
            "sar_w_per_kg",
        ]);
        t.push(vec![
            fmt_num(f),
            fmt_num(s.distance_m),
            fmt_num(e.pd_incident()),
            fmt_num(e.reflection()),
            fmt_num(e.delta() * 1e3),
            fmt_num(e.sar_surface()),
        ]);
        run.write_output(path, &t.render())?;
    }
    run.finish()?;
    Ok(outcome)
}

pub fn pd(a: PdArgs, args: Vec<String>) -> Result<Outcome> {
    let mut run = Run::new("pd", args, &a.common);
    let pd = match a.e_rms {
        Some(e) => pd_from_field(non_negative("--e-rms", e)?)?,
        None => {
            let eirp = effective_eirp(a.eirp_w, a.power_w, a.gain, a.duty_factor)?;
            let d = a
                .distance_m
                .context("--distance-m is required with --eirp-w or --power-w")?;
            link_budget_pd(eirp, d)?
        }
    };
    if let (Some(f), Some(d)) = (a.freq_hz, a.distance_m) {
        near_field_advisory(positive("--freq-hz", f)?, d);
    }
    let e_rms = field_from_pd(pd)?;
    println!("pd_w_per_m2       {}", fmt_num(pd));
    println!("e_rms_v_per_m     {}", fmt_num(e_rms));
    if let Some(path) = &a.common.csv {
        let mut t = emfdose::report::CsvTable::new(&["pd_w_per_m2", "e_rms_v_per_m"]);
        t.push(vec![fmt_num(pd), fmt_num(e_rms)]);
        run.write_output(path, &t.render())?;
    }
    run.finish()?;
    Ok(Outcome::Done)
}

pub fn profile(a: ProfileArgs, args: Vec<String>) -> Result<Outcome> {
    let mut run = Run::new("profile", args, &a.common);
    let catalog = Catalog::load(&a.common)?;
    let f = positive("--freq-hz", a.freq_hz)?;
    let pd = match a.pd_w_per_m2 {
        Some(pd) => non_negative("--pd-w-per-m2", pd)?,
        None => {
            let eirp = effective_eirp(a.eirp_w, a.power_w, a.gain, a.duty_factor)?;
            let d = a
                .distance_m
                .context("--distance-m is required with --eirp-w or --power-w")?;
            link_budget_pd(eirp, d)?
        }
    };
    let e = exposure_for(&catalog, &a.common, &mut run, pd, f)?;
    let delta_mm = e.delta() * 1e3;
    let max_mm = match a.max_depth_mm {
        Some(v) => positive("--max-depth-mm", v)?,
        None => 10.0 * delta_mm,
    };
    let step_mm = match a.step_mm {
        Some(v) => positive("--step-mm", v)?,
        None => delta_mm / 100.0,
    };
    let rows = depth_profile(&e, max_mm * 1e-3, step_mm * 1e-3)?;
    let csv = profile_csv(&rows).render();
    match &a.common.csv {
        Some(path) => {
            run.write_output(path, &csv)?;
            println!("rows              {}", rows.len());
            println!("delta_mm          {}", fmt_num(delta_mm));
            println!("sar_w_per_kg      {} at surface", fmt_num(e.sar_surface()));
        }
        None => print!("{csv}"),
    }
    if let Some(path) = &a.common.svg {
        let points: Vec<(f64, f64)> = rows.iter().map(|&(z, s)| (z * 1e3, s)).collect();
        let title = format!("SAR against depth at {} GHz", fmt_num(f / 1e9));
        run.write_output(path, &line_plot_svg(&title, "depth (mm)", "SAR (W/kg)", &points))?;
    }
    run.finish()?;
    Ok(Outcome::Done)
}

pub fn compare_cmd(a: CompareArgs, args: Vec<String>) -> Result<Outcome> {
    let mut run = Run::new("compare", args, &a.common);
    let catalog = Catalog::load(&a.common)?;
    let config = match &a.config {
        Some(path) => {
            let text = run.read_input(path, "--config")?;
            CompareConfig::from_toml_str(&text, &path.display().to_string())?
        }
        None => {
            let f = fixtures::GENERATIONS;
            run.record_builtin(f);
            CompareConfig::from_toml_str(f.contents, f.path)?
        }
    };
    for g in &config.generation {
        catalog.use_tissue(&g.tissue, &mut run)?;
    }
    let rows = compare(&config, &catalog.registry)?;
    let csv = compare_csv(&rows).render();
    print!("{csv}");
    if let Some(path) = &a.common.csv {
        run.write_output(path, &csv)?;
    }
    if let Some(path) = &a.common.svg {
        let bars: Vec<(String, f64)> = rows.iter().map(|r| (r.generation.clone(), r.sar_w_per_kg())).collect();
        run.write_output(path, &bar_chart_svg("Surface SAR by generation", "SAR (W/kg)", &bars))?;
    }
    run.finish()?;
    Ok(Outcome::Done)
}


/// Loads a scenario file, applying `--tissue` and `--limits` overrides.
fn load_scenario(path: &Path, common: &CommonArgs, run: &mut Run) -> Result<(Scenario, Catalog)> {
    let catalog = Catalog::load(common)?;
    let text = run.read_input(path, "scenario")?;
    let origin = path.display().to_string();
    let mut file = ScenarioFile::from_toml_str(&text, &origin)?;
    if let Some(t) = &common.tissue {
        file.tissue = t.clone();
    }
    if let Some(l) = catalog.user_limits() {
        file.limits = l.to_owned();
    }
    catalog.use_tissue(&file.tissue, run)?;
    catalog.use_limits(&file.limits, run)?;
    let scn = catalog.registry.resolve(&file, &origin)?;
    Ok((scn, catalog))
}

fn status(compliant: bool) -> &'static str {
    if compliant {
        "COMPLIANT"
    } else {
        "NON-COMPLIANT"
    }
}

fn warn_rule(rule: &emfdose::LimitRule, index: usize, frequency_hz: f64, authority: Option<Authority>) {
    if rule.metric == Metric::Sar {
        if let Some(avg) = &rule.averaging {
            eprintln!(
                "warning: rule #{} requires {avg} averaging; the surface SAR reported here is a local peak",
                index + 1
            );
        }
    }
    if let Some(auth) = authority {
        let expected = select_metric(frequency_hz, auth);
        if expected != rule.metric {
            eprintln!(
                "warning: rule #{} applies {} at {} Hz but {auth} guidance selects {expected}",
                index + 1,
                rule.metric,
                fmt_num(frequency_hz)
            );
        }
    }
}

/// Emits warnings for every rule the scenario's sources fall under.
fn warn_scenario(scn: &Scenario) {
    let mut seen = Vec::new();
    for s in scn.sources() {
        let f = s.frequency_hz();
        if let Ok(i) = scn.limits().rule_index(f, scn.population()) {
            let metric = scn.limits().rules()[i].metric;
            let key = (i, select_metric(f, scn.authority()) == metric);
            if !seen.contains(&key) {
                seen.push(key);
                warn_rule(&scn.limits().rules()[i], i, f, Some(scn.authority()));
            }
        }
    }
}

fn evaluate_all(scn: &Scenario) -> Result<ExposureMap> {
    match scn.evaluation() {
        Evaluation::Point(p) => Ok(ExposureMap {
            columns: 1,
            rows: 1,
            samples: vec![evaluate_point(scn, p)?],
            skipped: Vec::new(),
        }),
        Evaluation::Grid(_) => Ok(exposure_map(scn)?),
    }
}

fn sample_line(s: &ExposureSample) -> String {
    let c = &s.compliance;
    format!(
        "x_m={} y_m={} metric={} measured={} limit={} {} margin_db={} {}",
        fmt_num(s.point.x),
        fmt_num(s.point.y),
        c.metric_used,
        fmt_num(c.measured),
        fmt_num(c.limit),
        c.metric_used.unit(),
        fmt_num(c.margin_db),
        status(c.compliant)
    )
}

pub fn check(a: ScenarioArgs, args: Vec<String>) -> Result<Outcome> {
    let mut run = Run::new("check", args, &a.common);
    let (scn, _) = load_scenario(&a.scenario, &a.common, &mut run)?;
    warn_scenario(&scn);
    let map = evaluate_all(&scn)?;
    for s in &map.samples {
        println!("{}", sample_line(s));
    }
    for p in &map.skipped {
        println!("x_m={} y_m={} skipped (collocated with a source)", fmt_num(p.x), fmt_num(p.y));
    }
    let failing = map.samples.iter().filter(|s| !s.compliance.compliant).count();
    let worst = map
        .samples
        .iter()
        .map(|s| s.compliance.margin_db)
        .fold(f64::INFINITY, f64::min);
    println!(
        "result: {} ({} of {} points over limit, worst margin {} dB)",
        status(failing == 0),
        failing,
        map.samples.len(),
        fmt_num(worst)
    );
    if let Some(path) = &a.common.csv {
        run.write_output(path, &map_csv(&map).render())?;
    }
    run.finish()?;
    Ok(if failing == 0 { Outcome::Compliant } else { Outcome::NonCompliant })
}

pub fn map(a: MapArgs, args: Vec<String>) -> Result<Outcome> {
    let mut run = Run::new("map", args, &a.common);
    let (scn, _) = load_scenario(&a.scenario, &a.common, &mut run)?;
    if !matches!(scn.evaluation(), Evaluation::Grid(_)) {
        bail!("scenario {} has no [grid]; use `check` for a single point", a.scenario.display());
    }
    warn_scenario(&scn);
    let result = match a.threads {
        Some(0) => bail!("invalid value for --threads: 0 (must be >= 1)"),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("creating thread pool")?
            .install(|| exposure_map(&scn)),
        None => exposure_map(&scn),
    };
    let map = result?;
    let csv = map_csv(&map).render();
    match &a.common.csv {
        Some(path) => {
            run.write_output(path, &csv)?;
            let failing = map.samples.iter().filter(|s| !s.compliance.compliant).count();
            let peak = map.samples.iter().map(|s| s.pd_total).fold(0.0, f64::max);
            println!("grid              {} x {}", map.columns, map.rows);
            println!("points            {}", map.samples.len());
            println!("skipped           {}", map.skipped.len());
            println!("peak_pd_w_per_m2  {}", fmt_num(peak));
            println!("over_limit        {failing}");
        }
        None => print!("{csv}"),
    }
    run.finish()?;
    Ok(Outcome::Done)
}

fn parse_point(s: &str) -> Result<Point> {
    let (x, y) = s
        .split_once(',')
        .with_context(|| format!("invalid value for --at: `{s}` (expected X,Y)"))?;
    let parse = |v: &str| -> Result<f64> {
        let v: f64 = v
            .trim()
            .parse()
            .with_context(|| format!("invalid value for --at: `{s}` (expected X,Y)"))?;
        require("--at", v, v.is_finite(), "coordinates must be finite")
    };
    Ok(Point::new(parse(x)?, parse(y)?))
}

pub fn mitigate(a: MitigateArgs, args: Vec<String>) -> Result<Outcome> {
    let mut run = Run::new("mitigate", args, &a.common);
    let (scn, _) = load_scenario(&a.scenario, &a.common, &mut run)?;
    let protected = match (&a.at, scn.evaluation()) {
        (Some(s), _) => parse_point(s)?,
        (None, Evaluation::Point(p)) => p,
        (None, Evaluation::Grid(_)) => bail!("scenario has a [grid]; give the protected point with --at X,Y"),
    };
    let before = evaluate_point(&scn, protected)?;
    let mitigated = match a.strategy {
        Strategy::PowerControl => {
            let s = power_control(&scn, protected)?;
            println!("strategy          power-control");
            println!("scale             {}", fmt_num(s));
            scn.scaled(s)?
        }
        Strategy::SteerAway => {
            let out = steer_away(&scn, a.source, protected)?;
            let pointing = out.sources()[a.source].gain().pointing().unwrap_or(f64::NAN);
            println!("strategy          steer-away");
            println!("source            {}", a.source);
            println!("pointing_rad      {}", fmt_num(pointing));
            out
        }
    };
    let after = evaluate_point(&mitigated, protected)?;
    println!("before            {}", sample_line(&before));
    println!("after             {}", sample_line(&after));
    run.write_output(&a.out, &mitigated.to_file().to_toml_string())?;
    run.finish()?;
    Ok(Outcome::Done)
}
