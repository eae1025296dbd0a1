//! Closed-form spherical Fourier transform of radial term sums.
//!
//! For a term `c r^n e^{-αr}` with `n >= -1`,
//!
//! ```text
//! ∫ r^n e^{-αr} e^{ip·r} d³r = 4π (n+1)! Im[(α − ip)^{-(n+2)}] / p
//! ```
//!
//! which reproduces the tabulated `n = −1, 0, 1` cases `4π/(α²+p²)`,
//! `8πα/(α²+p²)²` and `8π(3α²−p²)/(α²+p²)³`. At `p = 0` the limit is
//! `4π (n+2)! / α^{n+3}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::radial::{factorial, BoundRadial, ParameterBinding, RadialFunction, EPS_CANCEL};

/// One momentum-space term, the transform of `coeff · r^power · e^{-alpha r}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumTerm {
    pub coeff: f64,
    pub power: i32,
    pub alpha: f64,
}

impl MomentumTerm {
    pub fn eval(&self, p: f64) -> f64 {
        let k = self.power + 2;
        if p == 0.0 {
            return 4.0 * PI * self.coeff * factorial((k) as u32) / self.alpha.powi(k + 1);
        }
        let z = Complex64::new(self.alpha, -p).powi(-k);
        4.0 * PI * self.coeff * factorial((self.power + 1) as u32) * z.im / p
    }
}

/// Momentum-space wave function `φ(p)` as a sum of transformed terms.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumFunction {
    terms: Vec<MomentumTerm>,
    /// The `1/r` coefficients sum to zero, so their `4π/p²` tails cancel.
    poles_cancel: bool,
}

impl MomentumFunction {
    pub fn new(terms: Vec<MomentumTerm>) -> Result<Self> {
        for t in &terms {
            if t.power < -1 {
                return Err(Error::UnsupportedShape { power: t.power });
            }
            if t.alpha.is_nan() || t.alpha <= 0.0 {
                return Err(Error::NonPositiveExponent {
                    power: t.power,
                    alpha: t.alpha,
                });
            }
        }
        let poles = terms.iter().filter(|t| t.power == -1);
        let residual: f64 = poles.clone().map(|t| t.coeff).sum();
        let scale = poles.map(|t| (t.coeff * t.alpha).abs()).fold(0.0, f64::max);
        let poles_cancel = scale > 0.0 && residual.abs() <= EPS_CANCEL * scale;
        Ok(Self {
            terms,
            poles_cancel,
        })
    }

    pub fn terms(&self) -> &[MomentumTerm] {
        &self.terms
    }

    /// `φ(p)` for `p >= 0`.
    ///
    /// With cancelling `1/r` coefficients the `n = −1` group is summed as
    /// `−4π Σ c α² / (p² (α² + p²))`, which drops the exactly cancelling
    /// `4π Σ c / p²` part and keeps full relative accuracy at large `p`.
    pub fn eval(&self, p: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                if t.power == -1 && self.poles_cancel && p > 0.0 {
                    let a2 = t.alpha * t.alpha;
                    -4.0 * PI * t.coeff * a2 / (p * p * (a2 + p * p))
                } else {
                    t.eval(p)
                }
            })
            .sum()
    }
}

/// Term-by-term transform of a bound radial function.
pub fn transform_bound(f: &BoundRadial) -> Result<MomentumFunction> {
    MomentumFunction::new(
        f.terms()
            .iter()
            .map(|t| MomentumTerm {
                coeff: t.coeff,
                power: t.power,
                alpha: t.alpha,
            })
            .collect(),
    )
}

pub fn transform(f: &RadialFunction, binding: &ParameterBinding) -> Result<MomentumFunction> {
    transform_bound(&f.bind(binding)?)
}

pub fn evaluate_momentum(phi: &MomentumFunction, p: f64) -> f64 {
    phi.eval(p)
}
