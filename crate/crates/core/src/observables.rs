//! Normalized charge densities, Shannon entropies and entropy densities.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fourier::{transform_bound, MomentumFunction};
use crate::quadrature::{integrate_semi_infinite, QuadratureSpec};
use crate::radial::BoundRadial;
use crate::wavefunction::{build_reduced, IonSpec, Mode, ReducedWavefunction};

/// The lower bound `3(1 + ln π)` on `S_ρ + S_γ` in three dimensions.
pub fn bbm_bound() -> f64 {
    3.0 * (1.0 + PI.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn as_str(self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "position" | "r" => Ok(Space::Position),
            "momentum" | "p" => Ok(Space::Momentum),
            other => Err(format!("unknown space `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Amplitude {
    Position { psi: BoundRadial, at_origin: f64 },
    Momentum(MomentumFunction),
}

impl Amplitude {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Amplitude::Position { at_origin, .. } if x == 0.0 => *at_origin,
            Amplitude::Position { psi, .. } => psi.eval(x),
            Amplitude::Momentum(phi) => phi.eval(x),
        }
    }
}

/// A density `|amplitude(x)|² / N` normalized so that `∫ 4π x² d(x) dx = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub space: Space,
    pub ion: IonSpec,
    pub mode: Mode,
    /// `N = ∫ 4π x² |amplitude|² dx`.
    pub normalization: f64,
    amplitude: Amplitude,
}

impl DensityProfile {
    pub fn density(&self, x: f64) -> f64 {
        let amp = self.amplitude.eval(x);
        amp * amp / self.normalization
    }

    /// `4π x² d(x)`, the quantity plotted as the radial distribution.
    pub fn radial_density(&self, x: f64) -> f64 {
        4.0 * PI * x * x * self.density(x)
    }

    /// Typical length (position) or momentum scale of the profile.
    pub fn natural_scale(&self) -> f64 {
        let z = f64::from(self.ion.z);
        match self.space {
            Space::Position => 1.0 / z,
            Space::Momentum => z,
        }
    }

    /// `−4π x² d ln d`, with `0 ln 0 = 0`. `ln d` is formed from `ln |amplitude|`
    /// so it stays finite where `d` itself underflows.
    fn entropy_integrand(&self, x: f64) -> f64 {
        let amp = self.amplitude.eval(x);
        if x == 0.0 || amp == 0.0 {
            return 0.0;
        }
        let d = amp * amp / self.normalization;
        let ln_d = 2.0 * amp.abs().ln() - self.normalization.ln();
        -4.0 * PI * x * x * d * ln_d
    }

    /// `∫ 4π x² d(x) dx` by quadrature; equals one up to quadrature error.
    pub fn total(&self, spec: &QuadratureSpec) -> Result<f64> {
        let spec = spec.with_scale(spec.scale * self.natural_scale());
        Ok(integrate_semi_infinite(|x| self.radial_density(x), &spec)?.value)
    }
}

/// Position density `ψ(r)² / N` with `N` from the exact moment formula.
pub fn normalize_position(wf: &ReducedWavefunction) -> Result<DensityProfile> {
    let psi = wf.body.bind(&wf.binding)?;
    let at_origin = psi.value_at_zero()?;
    let normalization = wf.norm_squared()?;
    Ok(DensityProfile {
        space: Space::Position,
        ion: wf.ion.clone(),
        mode: wf.mode,
        normalization,
        amplitude: Amplitude::Position { psi, at_origin },
    })
}

/// Momentum density `φ(p)² / N_p` with `N_p` by quadrature.
pub fn normalize_momentum(
    phi: &MomentumFunction,
    ion: &IonSpec,
    mode: Mode,
    spec: &QuadratureSpec,
) -> Result<DensityProfile> {
    let quad = spec.with_scale(spec.scale * f64::from(ion.z));
    let normalization = integrate_semi_infinite(
        |p| {
            let v = phi.eval(p);
            4.0 * PI * p * p * v * v
        },
        &quad,
    )?
    .value;
    Ok(DensityProfile {
        space: Space::Momentum,
        ion: ion.clone(),
        mode,
        normalization,
        amplitude: Amplitude::Momentum(phi.clone()),
    })
}

/// Momentum-space wave function of a reduced wave function.
pub fn momentum_wavefunction(wf: &ReducedWavefunction) -> Result<MomentumFunction> {
    transform_bound(&wf.body.bind(&wf.binding)?)
}

/// `S = −∫ 4π x² d ln d dx` in nats.
pub fn shannon_entropy(d: &DensityProfile, spec: &QuadratureSpec) -> Result<f64> {
    let spec = spec.with_scale(spec.scale * d.natural_scale());
    Ok(integrate_semi_infinite(|x| d.entropy_integrand(x), &spec)?.value)
}

/// The entropy density `−4π x² d(x) ln d(x)`; zero at `x = 0`.
pub fn entropy_density(d: &DensityProfile, x: f64) -> f64 {
    d.entropy_integrand(x)
}

/// Both normalized densities of one ion in one mode.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub wavefunction: ReducedWavefunction,
    pub position: DensityProfile,
    pub momentum: DensityProfile,
}

impl Analysis {
    pub fn new(ion: &IonSpec, mode: Mode, spec: &QuadratureSpec) -> Result<Self> {
        let wavefunction = build_reduced(ion, mode)?;
        let position = normalize_position(&wavefunction)?;
        let phi = momentum_wavefunction(&wavefunction)?;
        let momentum = normalize_momentum(&phi, ion, mode, spec)?;
        Ok(Self {
            wavefunction,
            position,
            momentum,
        })
    }

    pub fn profile(&self, space: Space) -> &DensityProfile {
        match space {
            Space::Position => &self.position,
            Space::Momentum => &self.momentum,
        }
    }

    pub fn report(&self, spec: &QuadratureSpec) -> Result<EntropyReport> {
        let s_rho = shannon_entropy(&self.position, spec)?;
        let s_gamma = shannon_entropy(&self.momentum, spec)?;
        let sum = s_rho + s_gamma;
        let ion = &self.wavefunction.ion;
        Ok(EntropyReport {
            ion: ion.name.clone(),
            z: ion.z,
            a: ion.a,
            b: ion.b,
            mode: self.wavefunction.mode,
            s_rho,
            s_gamma,
            sum,
            bbm_margin: sum - bbm_bound(),
        })
    }
}

/// Position and momentum entropies of one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub ion: String,
    pub z: u32,
    pub a: f64,
    pub b: f64,
    pub mode: Mode,
    pub s_rho: f64,
    pub s_gamma: f64,
    pub sum: f64,
    pub bbm_margin: f64,
}

/// Full pipeline: build, transform, normalize both spaces, integrate entropies.
pub fn report(ion: &IonSpec, mode: Mode, spec: &QuadratureSpec) -> Result<EntropyReport> {
    Analysis::new(ion, mode, spec)?.report(spec)
}
