//! Reduced single-electron wave functions of the correlated two-electron state
//!
//! ```text
//! ψ(r1, r2) = ½ e^{-Z(r1+r2)} (cosh a r1 + cosh a r2) (1 + ½ λ r12 e^{-b r12})
//! ```
//!
//! integrated over the second electron. The uncorrelated part gives ψ₁(r); the
//! `r12` factor gives ψ₂(r) = (λ/π) e^{-Zr} (F(r) + G(r)), where F and G are
//! third parameter derivatives `∂²_b ∂_Z` of `(e^{-br} − e^{-γr})/(γ² − b²)`
//! brackets divided by `r`. Everything is kept in the exact term algebra; the
//! overall normalization constant is set to one.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{CoefficientExpr, Param, DEGENERACY_TOL};
use crate::radial::{LinearExponent, ParameterBinding, RadialFunction, RadialTerm};

/// Whether the inter-electronic factor is switched on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Correlated,
    Uncorrelated,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Correlated, Mode::Uncorrelated];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Correlated => "correlated",
            Mode::Uncorrelated => "uncorrelated",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "correlated" | "corr" | "c" => Ok(Mode::Correlated),
            "uncorrelated" | "uncorr" | "u" | "0" => Ok(Mode::Uncorrelated),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// A two-electron ion: nuclear charge and the wave-function parameters `a`, `b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IonSpec {
    pub name: String,
    pub z: u32,
    pub a: f64,
    pub b: f64,
}

/// The helium iso-electronic sequence H⁻ … B³⁺ with its tabulated `(a, b)`.
const REGISTRY: [(&str, u32, f64, f64); 5] = [
    ("H-", 1, 0.58, 0.06),
    ("He", 2, 0.72, 0.20),
    ("Li+", 3, 0.87, 0.36),
    ("Be2+", 4, 0.99, 0.52),
    ("B3+", 5, 1.1, 0.67),
];

impl IonSpec {
    pub fn new(name: impl Into<String>, z: u32, a: f64, b: f64) -> Result<Self> {
        let ion = Self {
            name: name.into(),
            z,
            a,
            b,
        };
        if z < 1 {
            return Err(Error::InvalidParameters("Z >= 1 violated".into()));
        }
        ion.binding(Mode::Correlated)?;
        Ok(ion)
    }

    /// The five registry ions in order of increasing `Z`.
    pub fn registry() -> Vec<IonSpec> {
        REGISTRY
            .iter()
            .map(|&(name, z, a, b)| IonSpec {
                name: name.to_string(),
                z,
                a,
                b,
            })
            .collect()
    }

    /// Registry lookup by name; accepts `H-`, `Hminus`, `Li+`, `Be2+`, `Be++`, `B3+` and similar spellings.
    pub fn lookup(name: &str) -> Result<IonSpec> {
        let key: String = name
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let canonical = match key.as_str() {
            "h-" | "hminus" | "h^-" | "h" => "H-",
            "he" => "He",
            "li+" | "li" | "li1+" | "li^+" => "Li+",
            "be2+" | "be++" | "be" | "be^2+" => "Be2+",
            "b3+" | "b+++" | "b" | "b^3+" => "B3+",
            _ => return Err(Error::UnknownIon(name.to_string())),
        };
        Ok(Self::registry()
            .into_iter()
            .find(|i| i.name == canonical)
            .expect("registry entry"))
    }

    /// Parameter binding for the requested mode; the uncorrelated limit uses `λ = 0, a = 0`.
    pub fn binding(&self, mode: Mode) -> Result<ParameterBinding> {
        let z = f64::from(self.z);
        match mode {
            Mode::Correlated => ParameterBinding::new(z, self.a, self.b, 1),
            Mode::Uncorrelated => ParameterBinding::new(z, 0.0, self.b, 0),
        }
    }
}

fn sym(p: Param) -> CoefficientExpr {
    CoefficientExpr::symbol(p)
}

/// `Z + shift·a` as an expression.
fn shifted_charge(shift: i32) -> CoefficientExpr {
    sym(Param::Z).add(&CoefficientExpr::integer(i64::from(shift)).mul(&sym(Param::A)))
}

fn require_nonzero(what: &str, value: f64) -> Result<()> {
    if value.abs() < DEGENERACY_TOL {
        return Err(Error::DegenerateParameter {
            what: what.to_string(),
            value,
        });
    }
    Ok(())
}

const Z_EXP: LinearExponent = LinearExponent::new(1, 0, 0);

/// ψ₁(r) = 2π e^{-Zr} [ (Z−a)^{-3} + (Z+a)^{-3} + (e^{ar} + e^{-ar}) Z^{-3} ].
///
/// At `a = 0` the result is the single hydrogenic term.
pub fn build_psi1(binding: &ParameterBinding) -> Result<RadialFunction> {
    require_nonzero("Z - a", binding.z - binding.a)?;
    require_nonzero("Z + a", binding.z + binding.a)?;
    let two_pi = CoefficientExpr::integer(2).mul(&CoefficientExpr::pi());
    let z_inv_cubed = sym(Param::Z).powi(-3);
    if binding.a == 0.0 {
        // all three exponents coincide: 2π · 4/Z³ · e^{-Zr}
        return Ok(RadialFunction::single(
            two_pi.mul(&CoefficientExpr::integer(4)).mul(&z_inv_cubed),
            0,
            Z_EXP,
        ));
    }
    let constant = shifted_charge(-1).powi(-3).add(&shifted_charge(1).powi(-3));
    Ok(RadialFunction::from_terms([
        RadialTerm::new(two_pi.mul(&constant), 0, Z_EXP),
        RadialTerm::new(two_pi.mul(&z_inv_cubed), 0, LinearExponent::new(1, -1, 0)),
        RadialTerm::new(two_pi.mul(&z_inv_cubed), 0, LinearExponent::new(1, 1, 0)),
    ]))
}

/// `(e^{-br} − e^{-γr}) / (γ² − b²)` with `γ = Z + shift·a`.
pub fn bracket(shift: i32) -> RadialFunction {
    let gamma = shifted_charge(shift);
    let prefactor = gamma.powi(2).sub(&sym(Param::B).powi(2)).powi(-1);
    RadialFunction::from_terms([
        RadialTerm::new(prefactor.clone(), 0, LinearExponent::new(0, 0, 1)),
        RadialTerm::new(prefactor.neg(), 0, LinearExponent::new(1, shift, 0)),
    ])
}

/// `∂²_b ∂_Z` of [`bracket`], Z derivative first.
pub fn bracket_mixed_derivative(shift: i32) -> RadialFunction {
    bracket(shift)
        .differentiate(Param::Z)
        .differentiate(Param::B)
        .differentiate(Param::B)
}

/// `½(e^{ar} + e^{-ar})`.
fn cosh_ar() -> RadialFunction {
    let half = CoefficientExpr::rational(1, 2);
    RadialFunction::from_terms([
        RadialTerm::new(half.clone(), 0, LinearExponent::new(0, -1, 0)),
        RadialTerm::new(half, 0, LinearExponent::new(0, 1, 0)),
    ])
}

/// `factor · r^{-1}` as a radial function.
fn over_r(factor: CoefficientExpr) -> RadialFunction {
    RadialFunction::single(factor, -1, LinearExponent::ZERO)
}

fn minus_pi_squared() -> CoefficientExpr {
    CoefficientExpr::pi().powi(2).neg()
}

fn check_bracket(binding: &ParameterBinding, shift: i32) -> Result<()> {
    let gamma = binding.z + f64::from(shift) * binding.a;
    let label = match shift {
        -1 => "Z - a",
        0 => "Z",
        _ => "Z + a",
    };
    require_nonzero(&format!("{label} - b"), gamma - binding.b)?;
    require_nonzero(&format!("{label} + b"), gamma + binding.b)
}

/// F(r) = −(π²/r) cosh(ar) ∂²_b ∂_Z [(e^{-br} − e^{-Zr})/(Z² − b²)].
pub fn build_f(binding: &ParameterBinding) -> Result<RadialFunction> {
    check_bracket(binding, 0)?;
    Ok(over_r(minus_pi_squared())
        .multiply(&cosh_ar())
        .multiply(&bracket_mixed_derivative(0)))
}

/// G(r) = −(π²/2r) Σ_± ∂²_b ∂_Z [(e^{-br} − e^{-(Z±a)r})/((Z±a)² − b²)].
pub fn build_g(binding: &ParameterBinding) -> Result<RadialFunction> {
    check_bracket(binding, -1)?;
    check_bracket(binding, 1)?;
    let both = bracket_mixed_derivative(-1).add(&bracket_mixed_derivative(1));
    Ok(over_r(minus_pi_squared().mul(&CoefficientExpr::rational(1, 2))).multiply(&both))
}

/// ψ₂(r) = (λ/π) e^{-Zr} (F + G); the zero function when `λ = 0`.
pub fn build_psi2(binding: &ParameterBinding) -> Result<RadialFunction> {
    if binding.lambda == 0 {
        return Ok(RadialFunction::zero());
    }
    let f_plus_g = build_f(binding)?.add(&build_g(binding)?);
    let prefactor = CoefficientExpr::integer(i64::from(binding.lambda)).div(&CoefficientExpr::pi());
    Ok(RadialFunction::single(prefactor, 0, Z_EXP).multiply(&f_plus_g))
}

/// A reduced single-electron wave function for one ion in one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedWavefunction {
    pub ion: IonSpec,
    pub mode: Mode,
    pub binding: ParameterBinding,
    pub body: RadialFunction,
}

impl ReducedWavefunction {
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        self.body.evaluate(&self.binding, r)
    }

    /// `∫ 4π r² ψ(r)² dr`, exact.
    pub fn norm_squared(&self) -> Result<f64> {
        Ok(4.0
            * PI
            * self
                .body
                .multiply(&self.body)
                .moment_integral(&self.binding, 2)?)
    }
}

/// ψ₁ + ψ₂ for the correlated mode, ψ₁ at `a = 0, λ = 0` for the uncorrelated one.
pub fn build_reduced(ion: &IonSpec, mode: Mode) -> Result<ReducedWavefunction> {
    let binding = ion.binding(mode)?;
    let body = match mode {
        Mode::Correlated => build_psi1(&binding)?.add(&build_psi2(&binding)?),
        Mode::Uncorrelated => build_psi1(&binding)?,
    };
    Ok(ReducedWavefunction {
        ion: ion.clone(),
        mode,
        binding,
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, rel: f64) -> bool {
        (x - y).abs() <= rel * y.abs()
    }

    /// Direct scalar transcription of ψ₁.
    fn psi1_scalar(z: f64, a: f64, r: f64) -> f64 {
        2.0 * PI
            * (-z * r).exp()
            * (1.0 / (z - a).powi(3)
                + 1.0 / (z + a).powi(3)
                + ((a * r).exp() + (-a * r).exp()) / z.powi(3))
    }

    #[test]
    fn psi1_at_origin_without_cosh() {
        let b = ParameterBinding::new(2.0, 0.0, 0.2, 0).unwrap();
        let f = build_psi1(&b).unwrap();
        assert_eq!(f.len(), 1);
        assert!(close(f.value_at_zero(&b).unwrap(), PI, 1e-15));
    }

    #[test]
    fn psi1_matches_transcription() {
        let b = ParameterBinding::new(1.0, 0.58, 0.06, 1).unwrap();
        let f = build_psi1(&b).unwrap();
        let expected = 2.0
            * PI
            * (-1.0f64).exp()
            * (1.0 / 0.42f64.powi(3) + 1.0 / 1.58f64.powi(3) + 0.58f64.exp() + (-0.58f64).exp());
        assert!(close(f.evaluate(&b, 1.0).unwrap(), expected, 1e-12));
        let b = ParameterBinding::new(2.0, 0.72, 0.2, 1).unwrap();
        let f = build_psi1(&b).unwrap();
        assert!(close(
            f.evaluate(&b, 0.5).unwrap(),
            psi1_scalar(2.0, 0.72, 0.5),
            1e-12
        ));
    }

    #[test]
    fn psi2_vanishes_without_correlation() {
        let b = ParameterBinding::new(2.0, 0.72, 0.2, 0).unwrap();
        assert!(build_psi2(&b).unwrap().is_empty());
    }

    #[test]
    fn f_and_g_poles_cancel() {
        for ion in IonSpec::registry() {
            let b = ion.binding(Mode::Correlated).unwrap();
            for f in [build_f(&b).unwrap(), build_g(&b).unwrap()] {
                assert!(f.bind(&b).unwrap().poles_cancel(), "{}", ion.name);
                assert!(f.value_at_zero(&b).unwrap().is_finite());
            }
        }
    }

    #[test]
    fn g_equals_cosh_free_f_when_a_vanishes() {
        let b = ParameterBinding::new(1.5, 0.0, 0.3, 1).unwrap();
        let f_no_cosh = over_r(minus_pi_squared()).multiply(&bracket_mixed_derivative(0));
        let g = build_g(&b).unwrap();
        for r in [0.1, 0.7, 2.0, 6.0] {
            assert!(close(
                g.evaluate(&b, r).unwrap(),
                f_no_cosh.evaluate(&b, r).unwrap(),
                1e-12
            ));
        }
    }

    #[test]
    fn degenerate_brackets_rejected() {
        let b = ParameterBinding::new(1.0, 0.5, 0.5, 1).unwrap();
        assert!(matches!(
            build_g(&b),
            Err(Error::DegenerateParameter { .. })
        ));
        let b = ParameterBinding::new(1.0, 0.2, 1.0, 1).unwrap();
        assert!(matches!(
            build_f(&b),
            Err(Error::DegenerateParameter { .. })
        ));
    }

    #[test]
    fn uncorrelated_is_single_hydrogenic_term() {
        for ion in IonSpec::registry() {
            let wf = build_reduced(&ion, Mode::Uncorrelated).unwrap();
            assert_eq!(wf.body.len(), 1);
            let t = &wf.body.terms()[0];
            assert_eq!((t.power, t.exponent), (0, Z_EXP));
        }
    }

    #[test]
    fn correlated_term_counts_and_exponents() {
        for ion in IonSpec::registry() {
            let wf = build_reduced(&ion, Mode::Correlated).unwrap();
            assert!(
                wf.body.len() <= 40,
                "{} has {} terms",
                ion.name,
                wf.body.len()
            );
            let bound = wf.body.bind(&wf.binding).unwrap();
            let smallest = bound
                .terms()
                .iter()
                .map(|t| t.alpha)
                .fold(f64::INFINITY, f64::min);
            assert!(smallest > 0.0);
            // the slowest decay comes from the e^{-(Z-a)r} part of psi1
            assert!(close(smallest, f64::from(ion.z) - ion.a, 1e-12));
            assert!(wf.body.value_at_zero(&wf.binding).unwrap().is_finite());
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(IonSpec::lookup("h-").unwrap().z, 1);
        assert_eq!(IonSpec::lookup("Be++").unwrap().name, "Be2+");
        assert_eq!(IonSpec::lookup(" B3+ ").unwrap().b, 0.67);
        assert!(matches!(IonSpec::lookup("Ne"), Err(Error::UnknownIon(_))));
    }

    #[test]
    fn ion_validation() {
        assert!(IonSpec::new("x", 1, 1.0, 0.1).is_err());
        assert!(IonSpec::new("x", 0, 0.0, 0.1).is_err());
        assert!(IonSpec::new("x", 3, 0.87, 0.36).is_ok());
    }
}
