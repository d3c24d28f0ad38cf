use emfdose::compliance::{check_for, margin_db};
use emfdose::fixtures;
use emfdose::{classify_band, select_metric, Authority, Band, ExposureLevels, Metric, Population};
use proptest::prelude::*;

/// Smallest frequency at which `select_metric` reports PD, located by bisection.
fn switch_point(authority: Authority) -> f64 {
    let (mut lo, mut hi) = (1e6, 1e11);
    assert_eq!(select_metric(lo, authority), Metric::Sar);
    assert_eq!(select_metric(hi, authority), Metric::Pd);
    while hi - lo > 0.5 {
        let mid = 0.5 * (lo + hi);
        if select_metric(mid, authority) == Metric::Sar {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[test]
fn metric_switches_at_configured_thresholds() {
    assert!((switch_point(Authority::Fcc) - 6e9).abs() <= 1.0);
    assert!((switch_point(Authority::Icnirp) - 10e9).abs() <= 1.0);
}

#[test]
fn metric_has_single_discontinuity() {
    for authority in [Authority::Fcc, Authority::Icnirp] {
        let metrics: Vec<Metric> = (0..2000)
            .map(|i| select_metric(10f64.powf(6.0 + 5.0 * i as f64 / 2000.0), authority))
            .collect();
        let changes = metrics.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1);
    }
}

#[test]
fn shipped_profiles_parse() {
    let profiles = fixtures::builtin_limits();
    let names: Vec<&str> = profiles.iter().map(|p| p.name()).collect();
    assert_eq!(names, ["icnirp2020-public", "fcc-mpe-general"]);
    let icnirp = &profiles[0];
    let sar = icnirp.rules()[icnirp.rule_index(2e9, Population::General).unwrap()].clone();
    assert_eq!((sar.metric, sar.limit), (Metric::Sar, 2.0));
    let pd = icnirp.rules()[icnirp.rule_index(28e9, Population::General).unwrap()].clone();
    assert_eq!((pd.metric, pd.limit), (Metric::Pd, 10.0));
}

proptest! {
    #[test]
    fn band_partition(f in 1.0f64..1e12) {
        let c = classify_band(f);
        let expected = if f < 1e9 { Band::Low } else if f <= 6e9 { Band::Mid } else { Band::High };
        prop_assert_eq!(c.band, expected);
    }

    #[test]
    fn compliant_iff_margin_non_negative(measured in 0.0f64..100.0, limit in 1e-3f64..100.0) {
        let m = margin_db(measured, limit);
        prop_assert_eq!(measured <= limit, m >= 0.0);
    }

    #[test]
    fn non_compliance_persists_at_higher_power(pd in 1e-3f64..100.0, k in 1.0f64..1e3) {
        let profile = &fixtures::builtin_limits()[0];
        let at = |p: f64| check_for(&ExposureLevels { pd_w_per_m2: p, sar_w_per_kg: 0.0 }, profile, 28e9, Population::General).unwrap();
        if !at(pd).compliant {
            prop_assert!(!at(pd * k).compliant);
        }
    }
}
