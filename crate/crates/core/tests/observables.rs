//! Normalized densities and entropies: normalization, closed forms, scaling
//! laws and the sign structure of the entropy densities.

use std::f64::consts::PI;

use hylleraas_entropy::observables::{
    bbm_bound, entropy_density, report, shannon_entropy, Analysis, Space,
};
use hylleraas_entropy::quadrature::QuadratureSpec;
use hylleraas_entropy::wavefunction::{IonSpec, Mode};

fn analyses() -> Vec<(IonSpec, Mode, Analysis)> {
    let spec = QuadratureSpec::default();
    IonSpec::registry()
        .into_iter()
        .flat_map(|ion| Mode::BOTH.map(|m| (ion.clone(), m)))
        .map(|(ion, m)| {
            let a = Analysis::new(&ion, m, &spec).unwrap();
            (ion, m, a)
        })
        .collect()
}

#[test]
fn every_profile_is_normalized_and_non_negative() {
    let spec = QuadratureSpec::default();
    for (ion, mode, a) in analyses() {
        for space in [Space::Position, Space::Momentum] {
            let d = a.profile(space);
            let total = d.total(&spec).unwrap();
            assert!(
                (total - 1.0).abs() < 1e-9,
                "{} {mode} {space}: {total}",
                ion.name
            );
            let scale = d.natural_scale();
            assert!((0..400).all(|i| d.density(f64::from(i) * 0.05 * scale) >= 0.0));
        }
    }
}

#[test]
fn origin_values_of_the_hydrogenic_profiles() {
    let spec = QuadratureSpec::default();
    for (name, rho0, gamma0) in [
        ("H-", 1.0 / PI, 8.0 / (PI * PI)),
        ("He", 8.0 / PI, 1.0 / (PI * PI)),
        ("B3+", 125.0 / PI, 8.0 / (125.0 * PI * PI)),
    ] {
        let a = Analysis::new(&IonSpec::lookup(name).unwrap(), Mode::Uncorrelated, &spec).unwrap();
        assert!(
            (a.position.density(0.0) - rho0).abs() < 1e-12 * rho0,
            "{name}"
        );
        assert!(
            (a.momentum.density(0.0) - gamma0).abs() < 1e-9 * gamma0,
            "{name}"
        );
    }
}

#[test]
fn correlated_h_minus_position_origin() {
    let a = Analysis::new(
        &IonSpec::lookup("H-").unwrap(),
        Mode::Correlated,
        &QuadratureSpec::default(),
    )
    .unwrap();
    assert!((a.position.density(0.0) - 0.2641).abs() < 1e-3);
}

#[test]
fn uncorrelated_scaling_laws() {
    let spec = QuadratureSpec::default();
    let reports: Vec<_> = IonSpec::registry()
        .iter()
        .map(|ion| report(ion, Mode::Uncorrelated, &spec).unwrap())
        .collect();
    let (s_rho1, s_gamma1) = (reports[0].s_rho, reports[0].s_gamma);
    for r in &reports {
        let ln_z = f64::from(r.z).ln();
        assert!((r.s_rho - (s_rho1 - 3.0 * ln_z)).abs() < 1e-9, "{}", r.ion);
        assert!(
            (r.s_gamma - (s_gamma1 + 3.0 * ln_z)).abs() < 1e-9,
            "{}",
            r.ion
        );
        assert!((r.sum - reports[0].sum).abs() < 1e-9, "{}", r.ion);
    }
    assert!((reports[0].s_rho - 4.1447).abs() < 1e-4);
    assert!((reports[0].s_gamma - 2.4219).abs() < 1e-4);
    assert!((reports[0].sum - 6.5666).abs() < 1e-4);
    assert!((reports[3].s_rho - -0.0142).abs() < 1e-4);
}

#[test]
fn bbm_margin_is_non_negative() {
    assert!((bbm_bound() - 6.4342).abs() < 1e-4);
    let spec = QuadratureSpec::default();
    for (ion, mode, a) in analyses() {
        let r = a.report(&spec).unwrap();
        assert!(r.bbm_margin >= 0.0, "{} {mode}: {}", ion.name, r.bbm_margin);
        assert_eq!(r.sum, r.s_rho + r.s_gamma);
    }
}

#[test]
fn correlated_position_entropies_match_reference() {
    let spec = QuadratureSpec::default();
    for (name, s_rhoc) in [
        ("H-", 4.6362),
        ("He", 2.4494),
        ("Li+", 1.1234),
        ("Be2+", 0.1956),
        ("B3+", -0.5123),
    ] {
        let r = report(&IonSpec::lookup(name).unwrap(), Mode::Correlated, &spec).unwrap();
        assert!((r.s_rho - s_rhoc).abs() < 2e-3, "{name}: {}", r.s_rho);
    }
}

#[test]
fn h_minus_entropy_density_is_positive() {
    let a = Analysis::new(
        &IonSpec::lookup("H-").unwrap(),
        Mode::Correlated,
        &QuadratureSpec::default(),
    )
    .unwrap();
    assert_eq!(entropy_density(&a.position, 0.0), 0.0);
    for i in 1..=400 {
        let r = f64::from(i) * 0.05;
        assert!(entropy_density(&a.position, r) > 0.0, "r = {r}");
    }
}

#[test]
fn helium_entropy_density_is_negative_near_nucleus() {
    let a = Analysis::new(
        &IonSpec::lookup("He").unwrap(),
        Mode::Uncorrelated,
        &QuadratureSpec::default(),
    )
    .unwrap();
    for r in [0.01, 0.05, 0.1] {
        assert!(entropy_density(&a.position, r) < 0.0, "r = {r}");
    }
    assert!(entropy_density(&a.position, 2.0) > 0.0);
}

#[test]
fn entropy_is_stable_under_tighter_tolerance() {
    let ion = IonSpec::lookup("Li+").unwrap();
    let spec = QuadratureSpec::default();
    let a = Analysis::new(&ion, Mode::Correlated, &spec).unwrap();
    for space in [Space::Position, Space::Momentum] {
        let loose = shannon_entropy(a.profile(space), &spec).unwrap();
        let tight = shannon_entropy(a.profile(space), &spec.with_rel_tol(1e-12)).unwrap();
        assert!((loose - tight).abs() < 1e-8, "{space}: {loose} vs {tight}");
    }
}
