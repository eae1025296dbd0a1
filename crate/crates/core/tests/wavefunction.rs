//! Reduced wave function construction against scalar transcriptions, the
//! momentum-integral representation of F and G, and the r12 double
//! quadrature.

use std::f64::consts::PI;

use hylleraas_entropy::acceptance::oracles;
use hylleraas_entropy::expr::Param;
use hylleraas_entropy::radial::ParameterBinding;
use hylleraas_entropy::wavefunction::{
    bracket, build_f, build_g, build_psi1, build_psi2, build_reduced, IonSpec, Mode,
};
use hylleraas_entropy::Error;

fn binding(z: f64, a: f64, b: f64) -> ParameterBinding {
    ParameterBinding::new(z, a, b, 1).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

#[test]
fn psi1_at_origin_without_correlation() {
    let b = ParameterBinding::new(2.0, 0.0, 0.0, 0).unwrap();
    let psi1 = build_psi1(&b).unwrap();
    assert!(rel(psi1.value_at_zero(&b).unwrap(), PI) < 1e-15);
    assert_eq!(psi1.len(), 1);
}

#[test]
fn psi1_matches_transcription() {
    let b = binding(1.0, 0.58, 0.06);
    let psi1 = build_psi1(&b).unwrap();
    // the two constant e^{-Zr} pieces share a canonical term
    let exponents: Vec<_> = psi1
        .terms()
        .iter()
        .map(|t| (t.exponent.z, t.exponent.a, t.exponent.b))
        .collect();
    assert_eq!(exponents.len(), 3);
    for e in [(1, 0, 0), (1, -1, 0), (1, 1, 0)] {
        assert!(exponents.contains(&e), "{exponents:?}");
    }
    let expected = 2.0
        * PI
        * (-1.0f64).exp()
        * (1.0 / 0.42f64.powi(3) + 1.0 / 1.58f64.powi(3) + 2.0 * 0.58f64.cosh());
    assert!(rel(psi1.evaluate(&b, 1.0).unwrap(), expected) < 1e-12);
    for r in [0.0, 0.3, 2.0, 7.0] {
        assert!(rel(psi1.evaluate(&b, r).unwrap(), oracles::psi1(1.0, 0.58, r)) < 1e-12);
    }
}

#[test]
fn f_matches_momentum_integral() {
    let b = binding(2.0, 0.72, 0.2);
    let f = build_f(&b).unwrap();
    for r in [0.3, 1.0, 2.5] {
        let oracle = oracles::f_by_momentum_integral(2.0, 0.72, 0.2, r).unwrap();
        let err = rel(f.evaluate(&b, r).unwrap(), oracle);
        assert!(err < 1e-6, "r = {r}: rel {err:e}");
    }
}

#[test]
fn g_matches_momentum_integral() {
    let b = binding(1.0, 0.58, 0.06);
    let g = build_g(&b).unwrap();
    for r in [0.5, 2.0, 5.0] {
        let oracle = oracles::g_by_momentum_integral(1.0, 0.58, 0.06, r).unwrap();
        let err = rel(g.evaluate(&b, r).unwrap(), oracle);
        assert!(err < 1e-6, "r = {r}: rel {err:e}");
    }
}

#[test]
fn f_and_g_are_finite_at_origin() {
    for ion in IonSpec::registry() {
        let b = ion.binding(Mode::Correlated).unwrap();
        for f in [build_f(&b).unwrap(), build_g(&b).unwrap()] {
            let bound = f.bind(&b).unwrap();
            assert!(bound.poles_cancel(), "{}", ion.name);
            let origin = bound.value_at_zero().unwrap();
            assert!(rel(bound.eval(1e-7), origin) < 1e-6, "{}", ion.name);
        }
    }
}

#[test]
fn g_equals_f_without_a() {
    let b = binding(1.7, 0.0, 0.3);
    let (f, g) = (build_f(&b).unwrap(), build_g(&b).unwrap());
    for r in [0.01, 0.5, 1.0, 4.0, 12.0] {
        assert!(
            rel(g.evaluate(&b, r).unwrap(), f.evaluate(&b, r).unwrap()) < 1e-12,
            "r = {r}"
        );
    }
}

#[test]
fn mixed_derivative_order_is_irrelevant() {
    for ion in IonSpec::registry() {
        let b = ion.binding(Mode::Correlated).unwrap();
        for shift in [-1, 0, 1] {
            let zbb = bracket(shift)
                .differentiate(Param::Z)
                .differentiate(Param::B)
                .differentiate(Param::B);
            let bbz = bracket(shift)
                .differentiate(Param::B)
                .differentiate(Param::B)
                .differentiate(Param::Z);
            let bzb = bracket(shift)
                .differentiate(Param::B)
                .differentiate(Param::Z)
                .differentiate(Param::B);
            for r in [0.1, 1.0, 3.0] {
                let v = zbb.evaluate(&b, r).unwrap();
                assert!(rel(bbz.evaluate(&b, r).unwrap(), v) < 1e-10);
                assert!(rel(bzb.evaluate(&b, r).unwrap(), v) < 1e-10);
            }
        }
    }
}

#[test]
fn psi2_matches_double_quadrature() {
    for (z, a, b, r) in [(1.0, 0.58, 0.06, 1.5), (2.0, 0.72, 0.2, 0.5)] {
        let binding = binding(z, a, b);
        let psi2 = build_psi2(&binding).unwrap().evaluate(&binding, r).unwrap();
        let oracle = oracles::psi2_by_double_quadrature(z, a, b, r).unwrap();
        assert!(rel(psi2, oracle) < 1e-6, "Z = {z}: {psi2} vs {oracle}");
    }
}

#[test]
fn psi2_vanishes_without_correlation() {
    let b = ParameterBinding::new(2.0, 0.0, 0.2, 0).unwrap();
    assert!(build_psi2(&b).unwrap().is_empty());
}

#[test]
fn degenerate_denominators_are_rejected() {
    // Z = b
    let f = build_f(&binding(1.0, 0.5, 1.0));
    assert!(matches!(f, Err(Error::DegenerateParameter { .. })), "{f:?}");
    // Z - a = b
    let g = build_g(&binding(1.0, 0.5, 0.5));
    assert!(matches!(g, Err(Error::DegenerateParameter { .. })), "{g:?}");
    assert!(build_f(&binding(1.0, 0.5, 0.5)).is_ok());
}

#[test]
fn uncorrelated_is_single_hydrogenic_term() {
    for ion in IonSpec::registry() {
        let wf = build_reduced(&ion, Mode::Uncorrelated).unwrap();
        let terms = wf.body.bind(&wf.binding).unwrap();
        let [t] = terms.terms() else {
            panic!("{}: {} terms", ion.name, terms.terms().len())
        };
        assert_eq!(t.power, 0);
        assert_eq!(t.alpha, f64::from(ion.z));
        assert!(t.coeff > 0.0);
    }
}

#[test]
fn correlated_bodies_are_compact_and_decaying() {
    for ion in IonSpec::registry() {
        let wf = build_reduced(&ion, Mode::Correlated).unwrap();
        assert!(wf.body.len() <= 40, "{}: {} terms", ion.name, wf.body.len());
        let bound = wf.body.bind(&wf.binding).unwrap();
        assert!(bound.value_at_zero().unwrap().is_finite());
        let smallest = bound
            .terms()
            .iter()
            .map(|t| t.alpha)
            .fold(f64::INFINITY, f64::min);
        assert!(
            (smallest - (f64::from(ion.z) - ion.a)).abs() < 1e-12,
            "{}: {smallest}",
            ion.name
        );
    }
}

#[test]
fn registry_parameters_and_aliases() {
    let names: Vec<_> = IonSpec::registry()
        .into_iter()
        .map(|i| (i.name, i.z, i.a, i.b))
        .collect();
    assert_eq!(names[0], ("H-".to_string(), 1, 0.58, 0.06));
    assert_eq!(names[4], ("B3+".to_string(), 5, 1.1, 0.67));
    assert_eq!(IonSpec::lookup("be++").unwrap().z, 4);
    assert!(matches!(IonSpec::lookup("Ne"), Err(Error::UnknownIon(_))));
    assert!(IonSpec::new("x", 1, 1.0, 0.1).is_err());
}
