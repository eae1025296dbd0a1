//! Closed-form momentum transforms against the sine-transform oracle,
//! Plancherel, limits and the large-p decay of the physical functions.

use std::f64::consts::PI;

use hylleraas_entropy::acceptance::oracles::sine_transform;
use hylleraas_entropy::expr::CoefficientExpr;
use hylleraas_entropy::fourier::{evaluate_momentum, transform, MomentumFunction, MomentumTerm};
use hylleraas_entropy::quadrature::{integrate_semi_infinite, QuadratureSpec};
use hylleraas_entropy::radial::{LinearExponent, ParameterBinding, RadialFunction, RadialTerm};
use hylleraas_entropy::wavefunction::{build_reduced, IonSpec, Mode};
use hylleraas_entropy::Error;
use proptest::prelude::*;

fn single(power: i32, alpha: f64) -> MomentumFunction {
    MomentumFunction::new(vec![MomentumTerm {
        coeff: 1.0,
        power,
        alpha,
    }])
    .unwrap()
}

#[test]
fn second_power_term_matches_sine_transform() {
    // (1 - i)^-4 is real, so the transform vanishes at p = α = 1
    let oracle = sine_transform(2, 1.0, 1.0).unwrap();
    let value = single(2, 1.0).eval(1.0);
    assert!(
        (value - oracle.value).abs() <= 1e-9 * oracle.absolute,
        "{value} vs {oracle:?}"
    );
    let oracle = sine_transform(2, 1.0, 0.7).unwrap();
    assert!((single(2, 1.0).eval(0.7) - oracle.value).abs() <= 1e-9 * oracle.value.abs());
}

#[test]
fn high_powers_match_sine_transform() {
    for power in [4, 6] {
        for (alpha, p) in [(1.3, 0.4), (0.8, 2.5)] {
            let oracle = sine_transform(power, alpha, p).unwrap();
            let value = single(power, alpha).eval(p);
            assert!(
                (value - oracle.value).abs() <= 1e-8 * oracle.value.abs(),
                "n = {power}: {value} vs {oracle:?}"
            );
        }
    }
}

#[test]
fn transform_rejects_steep_poles() {
    let f = RadialFunction::single(1, -2, LinearExponent::new(1, 0, 0));
    let b = ParameterBinding::new(1.0, 0.0, 0.0, 0).unwrap();
    assert!(matches!(
        transform(&f, &b),
        Err(Error::UnsupportedShape { power: -2 })
    ));
}

#[test]
fn transform_rejects_growing_terms() {
    let f = RadialFunction::single(1, 0, LinearExponent::new(0, -1, 1));
    let b = ParameterBinding::new(2.0, 0.7, 0.2, 1).unwrap();
    assert!(matches!(
        transform(&f, &b),
        Err(Error::NonPositiveExponent { .. })
    ));
}

#[test]
fn physical_transforms_decay_like_fourth_power() {
    for ion in IonSpec::registry() {
        for mode in Mode::BOTH {
            let wf = build_reduced(&ion, mode).unwrap();
            let phi = transform(&wf.body, &wf.binding).unwrap();
            let scaled: Vec<f64> = (0..=40)
                .map(|i| 10f64.powf(2.0 + f64::from(i) / 20.0))
                .map(|p| p.powi(4) * phi.eval(p).abs())
                .collect();
            let max = scaled.iter().copied().fold(0.0, f64::max);
            assert!(
                max.is_finite() && max <= 2.0 * scaled[0],
                "{} {mode}: {max:e} vs {:e}",
                ion.name,
                scaled[0]
            );
            assert!(phi.eval(1e6).abs() < 1e-12 * phi.eval(0.0).abs());
        }
    }
}

fn radial_function() -> impl Strategy<Value = RadialFunction> {
    prop::collection::vec((-5i64..=5, 0i32..=3, 1i32..=3, 0i32..=2), 1..5).prop_map(|terms| {
        RadialFunction::from_terms(terms.into_iter().map(|(c, n, kz, kb)| {
            RadialTerm::new(
                CoefficientExpr::integer(c),
                n,
                LinearExponent::new(kz, 0, kb),
            )
        }))
    })
}

fn binding() -> impl Strategy<Value = ParameterBinding> {
    (0.5f64..3.0, 0.0f64..1.0).prop_map(|(z, b)| ParameterBinding::new(z, 0.0, b, 0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn origin_limit_is_continuous(coeff in -3.0f64..3.0, power in -1i32..=5, alpha in 0.2f64..5.0) {
        prop_assume!(coeff.abs() > 1e-3);
        let phi = MomentumFunction::new(vec![MomentumTerm { coeff, power, alpha }]).unwrap();
        let (at0, near0) = (evaluate_momentum(&phi, 0.0), evaluate_momentum(&phi, 1e-6));
        prop_assert!((at0 - near0).abs() <= 1e-8 * at0.abs(), "{at0} vs {near0}");
    }

    #[test]
    fn transform_is_linear(f in radial_function(), g in radial_function(), b in binding(), p in 0.0f64..20.0) {
        let sum = transform(&f.add(&g), &b).unwrap().eval(p);
        let parts = transform(&f, &b).unwrap().eval(p) + transform(&g, &b).unwrap().eval(p);
        // relative to the undivided magnitudes, since f + g may cancel
        let magnitude = transform(&f, &b).unwrap().eval(p).abs() + transform(&g, &b).unwrap().eval(p).abs();
        prop_assert!((sum - parts).abs() <= 1e-12 * magnitude, "{sum} vs {parts}");
    }

    #[test]
    fn plancherel(f in radial_function(), b in binding()) {
        prop_assume!(!f.is_empty());
        let bound = f.bind(&b).unwrap();
        let phi = transform(&f, &b).unwrap();
        let spec = QuadratureSpec::default().with_rel_tol(1e-12).with_abs_tol(0.0);
        let position = integrate_semi_infinite(|r| { let v = bound.eval(r); 4.0 * PI * r * r * v * v }, &spec.with_scale(1.0 / b.z)).unwrap().value;
        let momentum = integrate_semi_infinite(|p| { let v = phi.eval(p); 4.0 * PI * p * p * v * v }, &spec.with_scale(b.z)).unwrap().value;
        let momentum = momentum / (2.0 * PI).powi(3);
        prop_assert!((position - momentum).abs() <= 1e-8 * position, "{position} vs {momentum}");
    }

    #[test]
    fn sine_transform_oracle_agrees(power in -1i32..=3, alpha in 0.3f64..4.0, p in 0.05f64..12.0) {
        let oracle = sine_transform(power, alpha, p).unwrap();
        let value = single(power, alpha).eval(p);
        let denom = if oracle.value.abs() > 1e-6 * oracle.absolute { oracle.value.abs() } else { oracle.absolute };
        prop_assert!((value - oracle.value).abs() <= 1e-7 * denom, "{value} vs {oracle:?}");
    }
}
