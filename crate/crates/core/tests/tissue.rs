use emfdose::constants::vacuum_permeability;
use emfdose::fixtures;
use emfdose::{penetration_depth, reflection_coefficient, TissueProfile, TissueRow};
use proptest::prelude::*;

// Reference values below were evaluated independently with 30-digit
// complex arithmetic (mpmath) from the same formulas and constants.

#[test]
fn reflection_at_28_ghz() {
    let r = reflection_coefficient(16.6, 25.8, 28e9).unwrap();
    assert!((r - 0.681_231_752_065_366).abs() < 1e-12, "{r}");
}

#[test]
fn depth_at_28_ghz() {
    let d = penetration_depth(16.6, 25.8, 28e9).unwrap();
    assert!((d - 9.208_037_439_114_064e-4).abs() < 1e-15, "{d}");
    let d = penetration_depth(16.552, 25.8241, 28e9).unwrap();
    assert!((d - 9.191_285_298_732_286e-4).abs() < 1e-15, "{d}");
}

#[test]
fn conductivity_sweep_increases_reflection() {
    let expected = [
        (10.0, 0.622_656_538_809_833_7),
        (1e3, 0.945_071_362_207_305_7),
        (1e5, 0.994_433_323_478_153_7),
    ];
    let mut prev = 0.0;
    for (sigma, want) in expected {
        let r = reflection_coefficient(16.6, sigma, 28e9).unwrap();
        assert!((r - want).abs() < 1e-12, "sigma {sigma}: {r}");
        assert!(r > prev);
        prev = r;
    }
}

#[test]
fn good_conductor_limit() {
    let (eps, f) = (10.0, 1e9);
    let gc = |sigma: f64| (1.0 / (std::f64::consts::PI * f * vacuum_permeability() * sigma)).sqrt();
    let d1 = penetration_depth(eps, 1e6, f).unwrap();
    let d2 = penetration_depth(eps, 2e6, f).unwrap();
    assert!((d1 / gc(1e6) - 1.0).abs() < 1e-6, "{d1} {}", gc(1e6));
    assert!((d2 / gc(2e6) - 1.0).abs() < 1e-6);
    assert!((d2 / d1 - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
}

#[test]
fn interpolation_between_2_and_28_ghz() {
    // dry-skin parametric-model values at 2 GHz and 28 GHz
    let t = TissueProfile::new(
        "two-row",
        vec![
            TissueRow::new(2e9, 38.568, 1.2654, 1000.0),
            TissueRow::new(28e9, 16.552, 25.8241, 1000.0),
        ],
    )
    .unwrap();
    // hand evaluation: t = log10(10/2)/log10(28/2) = 0.6098533345119622
    let d = t.lookup(10e9).unwrap();
    assert!((d.eps_real - 25.141_468_987_384_64).abs() < 1e-10, "{}", d.eps_real);
    assert!((d.conductivity - 16.242_605_086_278_93).abs() < 1e-10, "{}", d.conductivity);
    assert_eq!(d.mass_density, 1000.0);
}

#[test]
fn dry_skin_depth_decreases_with_frequency() {
    let t = fixtures::dry_skin();
    let depths: Vec<f64> = t
        .rows()
        .iter()
        .map(|r| t.boundary(r.frequency_hz).unwrap().penetration_depth)
        .collect();
    assert!(depths.windows(2).all(|w| w[0] > w[1]), "{depths:?}");
    let (lo, hi) = t.span();
    assert_eq!((lo, hi), (0.9e9, 28e9));
}

#[test]
fn dry_skin_knots_are_exact() {
    let t = fixtures::dry_skin();
    for r in t.rows() {
        let d = t.lookup(r.frequency_hz).unwrap();
        assert_eq!(d.eps_real, r.eps_real);
        assert_eq!(d.conductivity, r.conductivity);
        assert_eq!(d.mass_density, r.mass_density);
    }
}

proptest! {
    #[test]
    fn reflection_is_bounded(
        eps in 1.0f64..100.0,
        sigma in 0.0f64..1e4,
        f in 1e6f64..3e11,
    ) {
        let r = reflection_coefficient(eps, sigma, f).unwrap();
        prop_assert!((0.0..1.0).contains(&r));
    }

    #[test]
    fn reflection_monotone_in_conductivity(
        eps in 1.0f64..100.0,
        f in 1e6f64..3e11,
        mut sigmas in prop::collection::vec(0.0f64..1e4, 2..12),
    ) {
        sigmas.sort_by(f64::total_cmp);
        let rs: Vec<f64> = sigmas.iter().map(|&s| reflection_coefficient(eps, s, f).unwrap()).collect();
        for w in rs.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-15);
        }
    }

    #[test]
    fn depth_is_finite_positive(eps in 1.0f64..100.0, sigma in 1e-3f64..1e4, f in 1e6f64..3e11) {
        let d = penetration_depth(eps, sigma, f).unwrap();
        prop_assert!(d.is_finite() && d > 0.0);
    }

    #[test]
    fn interpolation_stays_between_rows(u in 0.0f64..1.0) {
        let t = fixtures::dry_skin();
        let rows = t.rows();
        let (lo, hi) = t.span();
        let f = lo * (hi / lo).powf(u);
        let d = t.lookup(f).unwrap();
        let i = rows.partition_point(|r| r.frequency_hz <= f).clamp(1, rows.len() - 1);
        let (a, b) = (&rows[i - 1], &rows[i]);
        let between = |x: f64, p: f64, q: f64| x >= p.min(q) - 1e-12 && x <= p.max(q) + 1e-12;
        prop_assert!(between(d.eps_real, a.eps_real, b.eps_real));
        prop_assert!(between(d.conductivity, a.conductivity, b.conductivity));
    }
}
