//! Exact algebra for radial functions `Σ_j C_j(θ) r^{n_j} e^{-α_j(θ) r}`.
//!
//! Coefficients are [`CoefficientExpr`] trees over `θ = (Z, a, b)` and the
//! exponents are integer combinations of the same parameters, so sums,
//! products and parameter derivatives are carried out exactly. Binding a
//! function to numeric parameters yields a [`BoundRadial`] for fast repeated
//! evaluation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{CoefficientExpr, Param, SymbolValues};

/// Relative tolerance for the cancellation of `1/r` coefficients at the origin.
pub const EPS_CANCEL: f64 = 1e-9;

/// Numeric values of `(Z, a, b, λ)` for one physical configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterBinding {
    pub z: f64,
    pub a: f64,
    pub b: f64,
    pub lambda: u8,
}

impl ParameterBinding {
    /// Validates `Z > 0`, `0 <= a < Z`, `b >= 0` and `λ ∈ {0, 1}`.
    pub fn new(z: f64, a: f64, b: f64, lambda: u8) -> Result<Self> {
        if !(z.is_finite() && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "non-finite parameter in (Z={z}, a={a}, b={b})"
            )));
        }
        if z <= 0.0 {
            return Err(Error::InvalidParameters(format!("Z > 0 violated: Z = {z}")));
        }
        if a < 0.0 {
            return Err(Error::InvalidParameters(format!(
                "a >= 0 violated: a = {a}"
            )));
        }
        if b < 0.0 {
            return Err(Error::InvalidParameters(format!(
                "b >= 0 violated: b = {b}"
            )));
        }
        if a >= z {
            return Err(Error::InvalidParameters(format!(
                "a < Z violated: a = {a}, Z = {z}"
            )));
        }
        if lambda > 1 {
            return Err(Error::InvalidParameters(format!(
                "lambda must be 0 or 1, got {lambda}"
            )));
        }
        Ok(Self { z, a, b, lambda })
    }

    pub fn value(&self, param: Param) -> f64 {
        match param {
            Param::Z => self.z,
            Param::A => self.a,
            Param::B => self.b,
        }
    }
}

impl SymbolValues for ParameterBinding {
    fn value(&self, param: Param) -> f64 {
        ParameterBinding::value(self, param)
    }
}

/// `α(θ) = cZ·Z + ca·a + cb·b` with integer coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LinearExponent {
    pub z: i32,
    pub a: i32,
    pub b: i32,
}

impl LinearExponent {
    pub const ZERO: LinearExponent = LinearExponent { z: 0, a: 0, b: 0 };

    pub const fn new(z: i32, a: i32, b: i32) -> Self {
        Self { z, a, b }
    }

    pub fn coefficient(&self, param: Param) -> i32 {
        match param {
            Param::Z => self.z,
            Param::A => self.a,
            Param::B => self.b,
        }
    }

    pub fn bind(&self, binding: &ParameterBinding) -> f64 {
        f64::from(self.z) * binding.z
            + f64::from(self.a) * binding.a
            + f64::from(self.b) * binding.b
    }
}

impl std::ops::Add for LinearExponent {
    type Output = LinearExponent;

    fn add(self, rhs: Self) -> Self {
        LinearExponent::new(self.z + rhs.z, self.a + rhs.a, self.b + rhs.b)
    }
}

/// `coeff · r^power · e^{-exponent·r}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTerm {
    pub coeff: CoefficientExpr,
    pub power: i32,
    pub exponent: LinearExponent,
}

impl RadialTerm {
    pub fn new(coeff: impl Into<CoefficientExpr>, power: i32, exponent: LinearExponent) -> Self {
        Self {
            coeff: coeff.into(),
            power,
            exponent,
        }
    }
}

/// A finite sum of [`RadialTerm`]s, kept canonical: at most one term per
/// `(power, exponent)` pair, sorted by that key. The zero function has no terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialFunction {
    terms: Vec<RadialTerm>,
}

impl RadialFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = RadialTerm>) -> Self {
        let mut merged: BTreeMap<(i32, LinearExponent), CoefficientExpr> = BTreeMap::new();
        for term in terms {
            merged
                .entry((term.power, term.exponent))
                .and_modify(|c| *c = c.add(&term.coeff))
                .or_insert(term.coeff);
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((power, exponent), coeff)| RadialTerm {
                coeff,
                power,
                exponent,
            })
            .collect();
        Self { terms }
    }

    pub fn single(coeff: impl Into<CoefficientExpr>, power: i32, exponent: LinearExponent) -> Self {
        Self::from_terms([RadialTerm::new(coeff, power, exponent)])
    }

    pub fn terms(&self) -> &[RadialTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, factor: &CoefficientExpr) -> Self {
        Self::from_terms(self.terms.iter().map(|t| RadialTerm {
            coeff: factor.mul(&t.coeff),
            ..t.clone()
        }))
    }

    pub fn multiply(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|f| {
            other.terms.iter().map(move |g| RadialTerm {
                coeff: f.coeff.mul(&g.coeff),
                power: f.power + g.power,
                exponent: f.exponent + g.exponent,
            })
        }))
    }

    /// Exact partial derivative: `∂θ[C r^n e^{-E r}] = C' r^n e^{-E r} − C (∂E/∂θ) r^{n+1} e^{-E r}`.
    pub fn differentiate(&self, param: Param) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|t| {
            let from_coeff = RadialTerm {
                coeff: t.coeff.derivative(param),
                ..t.clone()
            };
            let slope = t.exponent.coefficient(param);
            let from_exponent = RadialTerm {
                coeff: CoefficientExpr::integer(-i64::from(slope)).mul(&t.coeff),
                power: t.power + 1,
                exponent: t.exponent,
            };
            [from_coeff, from_exponent]
        }))
    }

    /// Binds every coefficient and exponent to numbers.
    pub fn bind(&self, binding: &ParameterBinding) -> Result<BoundRadial> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(BoundTerm {
                    coeff: t.coeff.eval(binding)?,
                    power: t.power,
                    alpha: t.exponent.bind(binding),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BoundRadial::new(terms))
    }

    pub fn evaluate(&self, binding: &ParameterBinding, r: f64) -> Result<f64> {
        Ok(self.bind(binding)?.eval(r))
    }

    pub fn value_at_zero(&self, binding: &ParameterBinding) -> Result<f64> {
        self.bind(binding)?.value_at_zero()
    }

    pub fn moment_integral(&self, binding: &ParameterBinding, extra_power: i32) -> Result<f64> {
        self.bind(binding)?.moment_integral(extra_power)
    }
}

/// Numeric term `coeff · r^power · e^{-alpha·r}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundTerm {
    pub coeff: f64,
    pub power: i32,
    pub alpha: f64,
}

/// A [`RadialFunction`] with its parameters substituted.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRadial {
    terms: Vec<BoundTerm>,
    /// Sum of the `1/r` coefficients and the scale it is judged against.
    pole_residual: f64,
    pole_scale: f64,
}

impl BoundRadial {
    /// Terms with equal power and bit-identical exponent are merged.
    pub fn new(raw: Vec<BoundTerm>) -> Self {
        let mut terms: Vec<BoundTerm> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms
                .iter_mut()
                .find(|u| u.power == t.power && u.alpha == t.alpha)
            {
                Some(u) => u.coeff += t.coeff,
                None => terms.push(t),
            }
        }
        let poles = terms.iter().filter(|t| t.power == -1);
        let pole_residual = poles.clone().map(|t| t.coeff).sum();
        let pole_scale = poles.map(|t| (t.coeff * t.alpha).abs()).fold(0.0, f64::max);
        Self {
            terms,
            pole_residual,
            pole_scale,
        }
    }

    pub fn terms(&self) -> &[BoundTerm] {
        &self.terms
    }

    /// True when the `1/r` coefficients cancel, i.e. the function is finite at the origin.
    pub fn poles_cancel(&self) -> bool {
        self.pole_residual.abs() <= EPS_CANCEL * self.pole_scale
    }

    /// `Σ_j C_j r^{n_j} e^{-α_j r}`.
    ///
    /// When the `1/r` coefficients cancel, their group is summed as
    /// `Σ C_j (e^{-α_j r} − 1)/r`, which equals the direct sum but does not lose
    /// digits at small `r`.
    pub fn eval(&self, r: f64) -> f64 {
        let cancel = self.poles_cancel();
        self.terms
            .iter()
            .map(|t| match t.power {
                -1 if cancel => t.coeff * (-t.alpha * r).exp_m1() / r,
                0 => t.coeff * (-t.alpha * r).exp(),
                n => t.coeff * r.powi(n) * (-t.alpha * r).exp(),
            })
            .sum()
    }

    /// The finite `r → 0` limit `Σ_{n=0} C_j − Σ_{n=−1} C_j α_j`.
    pub fn value_at_zero(&self) -> Result<f64> {
        if !self.poles_cancel() {
            return Err(Error::Singularity {
                residual: self.pole_residual,
                scale: self.pole_scale,
            });
        }
        let mut value = 0.0;
        for t in &self.terms {
            match t.power {
                n if n < -1 => return Err(Error::UnsupportedShape { power: n }),
                -1 => value -= t.coeff * t.alpha,
                0 => value += t.coeff,
                _ => {}
            }
        }
        Ok(value)
    }

    /// Exact `∫_0^∞ r^k f(r) dr = Σ_j C_j (n_j+k)! / α_j^{n_j+k+1}`.
    pub fn moment_integral(&self, extra_power: i32) -> Result<f64> {
        self.terms
            .iter()
            .map(|t| {
                let m = t.power + extra_power;
                if m < 0 {
                    return Err(Error::DivergentIntegral {
                        power: t.power,
                        extra_power,
                    });
                }
                if t.alpha <= 0.0 {
                    return Err(Error::NonPositiveExponent {
                        power: t.power,
                        alpha: t.alpha,
                    });
                }
                Ok(t.coeff * factorial(m as u32) / t.alpha.powi(m + 1))
            })
            .sum()
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}
