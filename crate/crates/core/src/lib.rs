//! Single-electron densities and Shannon information entropies of
//! two-electron ions (H⁻ through B³⁺) described by a correlated
//! Hylleraas-type wave function.
//!
//! The pipeline is exact up to the final entropy integrals:
//!
//! 1. [`wavefunction`] builds the reduced wave function as a finite sum of
//!    `C(Z, a, b) · rⁿ · e^{-α r}` terms ([`radial`]), with coefficients held
//!    as expression trees ([`expr`]) so parameter derivatives are symbolic.
//! 2. [`fourier`] maps every term to momentum space in closed form.
//! 3. [`observables`] normalizes both densities and integrates the entropies
//!    with adaptive Gauss–Kronrod quadrature ([`quadrature`]).
//!
//! [`acceptance`] holds the reproduction checks and their brute-force
//! oracles; [`cli`] is the command-line front end.
//!
//! ```
//! use hylleraas_entropy::observables::report;
//! use hylleraas_entropy::quadrature::QuadratureSpec;
//! use hylleraas_entropy::wavefunction::{IonSpec, Mode};
//!
//! let he = IonSpec::lookup("He").unwrap();
//! let r = report(&he, Mode::Uncorrelated, &QuadratureSpec::default()).unwrap();
//! assert!((r.sum - 6.5666).abs() < 1e-4);
//! ```

pub mod acceptance;
pub mod cli;
pub mod error;
pub mod expr;
pub mod fourier;
pub mod observables;
pub mod quadrature;
pub mod radial;
pub mod wavefunction;

pub use error::{Error, Result};
