use plasmon_core::dispersion::{
    classify_regime, debroglie_coefficients, debroglie_wavenumbers, dispersion_gap, plasmon_energy,
    regime_components, Regime,
};
use plasmon_core::model::BeamParameters;
use plasmon_core::Complex64;
use proptest::prelude::*;

fn beam(gamma: f64, mu: f64, xi: f64) -> BeamParameters {
    BeamParameters::new(gamma, mu, xi, 0.0).unwrap()
}

fn residual(k: Complex64, energy: f64, xi: f64) -> f64 {
    let big = k * k + xi * xi;
    (big * big - 2.0 * energy * big + 1.0).norm()
}

proptest! {
    #[test]
    fn branches_solve_screened_dispersion(gamma in 0.0f64..6.0, mu in 0.0f64..2.0, xi in 0.0f64..2.0) {
        let b = beam(gamma, mu, xi);
        let p = debroglie_wavenumbers(&b);
        let scale = 1.0 + b.energy().abs().powi(2);
        prop_assert!(residual(p.k1, b.energy(), xi) <= 1e-10 * scale);
        prop_assert!(residual(p.k2, b.energy(), xi) <= 1e-10 * scale);
        for k in [p.k1, p.k2] {
            if k.im == 0.0 && k.re > 0.0 {
                let e = plasmon_energy(k.re, xi).unwrap();
                prop_assert!((e - b.energy()).abs() <= 1e-10 * b.energy());
            }
        }
    }

    #[test]
    fn regime_closed_forms_match(gamma in 1e-3f64..5.0, mu in 0.0f64..2.0, xi in 0.0f64..0.99) {
        let p = debroglie_wavenumbers(&beam(gamma, mu, xi));
        let c = regime_components(gamma, mu, xi).unwrap();
        prop_assert!((c.k1() - p.k1).norm() <= 1e-10);
        prop_assert!((c.k2() - p.k2).norm() <= 1e-10);
    }
}

#[test]
fn unclassified_when_strongly_screened() {
    let p = debroglie_wavenumbers(&beam(2.0, 0.0, 1.2));
    assert!(p.regime.is_none());
    assert!(residual(p.k1, 2.0, 1.2) < 1e-12);
    let p = debroglie_wavenumbers(&beam(2.0, 0.0, 0.5));
    assert_eq!(p.regime.unwrap().regime, Regime::BothReal);
}

#[test]
fn sub_sqrt2_speeds_give_unit_modulus() {
    let p = debroglie_wavenumbers(&beam(1.0, 0.0, 0.0));
    assert!((p.k1.norm() - 1.0).abs() < 1e-14 && (p.k2.norm() - 1.0).abs() < 1e-14);
    assert!(p.k1.im != 0.0 && p.k2.im != 0.0);
    assert!((p.k1 - p.k2.conj()).norm() < 1e-15);
}

#[test]
fn fast_beam_single_particle_limit() {
    let p = debroglie_wavenumbers(&beam(1e3, 0.0, 0.0));
    assert!((p.k2.re / 1e3 - 1.0).abs() < 1e-6);
    assert!(p.k1.norm() < 1e-2);
}

#[test]
fn gap_matches_numeric_minimum() {
    for xi in [0.0, 0.3, 0.9, 1.0, 1.3, 2.0] {
        let numeric = (0..=200_000)
            .map(|i| i as f64 * 2e-5)
            .filter_map(|k| plasmon_energy(k, xi).ok())
            .fold(f64::INFINITY, f64::min);
        assert!((numeric - dispersion_gap(xi)).abs() < 1e-9, "xi={xi}: {numeric}");
    }
}

/// Branch values jump by O(√δ) across the edges where the discriminant or a
/// squared wavenumber changes sign, and are smooth across γ = √μ.
#[test]
fn continuity_across_regime_edges() {
    let (mu, xi) = (0.39, 0.5);
    let edges = {
        let w = classify_regime(1.0, mu, xi).unwrap().window;
        [(w.chemical, true), (w.low, false), (w.high, false)]
    };
    for (edge, smooth) in edges {
        for delta in [1e-8, 1e-10] {
            let left = debroglie_wavenumbers(&beam(edge - delta, mu, xi));
            let right = debroglie_wavenumbers(&beam(edge + delta, mu, xi));
            let jump = (left.k1 - right.k1).norm().max((left.k2 - right.k2).norm());
            let bound = if smooth { 1e-6 } else { 10.0 * delta.sqrt() };
            assert!(jump <= bound, "edge {edge}, delta {delta}: jump {jump:e}");
        }
    }
}

#[test]
fn classical_coefficients() {
    for gamma in [100.0, 300.0, 1e3] {
        let c = debroglie_coefficients(&beam(gamma, 1e-6, 0.0)).unwrap();
        assert!(c.chi1.norm() <= 1e-3);
        assert!((c.chi2.re - 1.0).abs() <= 1e-3 && c.chi2.im == 0.0);
    }
}

#[test]
fn classification_partitions_speeds() {
    let (mu, xi) = (0.73, 0.37);
    let w = classify_regime(1.0, mu, xi).unwrap().window;
    let mut last = Regime::SubChemical;
    let order = [
        Regime::SubChemical,
        Regime::OscillatoryConjugate,
        Regime::BothReal,
        Regime::WaveEvanescent,
    ];
    for i in 1..4000 {
        let g = i as f64 * 1e-3;
        let r = classify_regime(g, mu, xi).unwrap().regime;
        let pos = |r: Regime| order.iter().position(|&o| o == r).unwrap();
        assert!(pos(r) >= pos(last));
        last = r;
    }
    assert_eq!(last, Regime::WaveEvanescent);
    assert!(classify_regime(w.high, mu, xi).unwrap().on_boundary);
}
