//! Brute-force reference computations.
//!
//! Nothing here uses the term algebra: the functions are direct scalar
//! transcriptions evaluated with plain quadrature or finite differences.

use std::f64::consts::PI;

use crate::error::Result;
use crate::quadrature::{integrate, QuadratureSpec};

/// ψ₁(r) transcribed directly.
pub fn psi1(z: f64, a: f64, r: f64) -> f64 {
    2.0 * PI
        * (-z * r).exp()
        * (1.0 / (z - a).powi(3)
            + 1.0 / (z + a).powi(3)
            + ((a * r).exp() + (-a * r).exp()) / z.powi(3))
}

/// `(e^{-br} − e^{-γr})/(γ² − b²)` with `γ = Z + shift·a`.
pub fn bracket(z: f64, a: f64, b: f64, shift: i32, r: f64) -> f64 {
    let gamma = z + f64::from(shift) * a;
    ((-b * r).exp() - (-gamma * r).exp()) / (gamma * gamma - b * b)
}

/// `∂²_b ∂_Z` of [`bracket`] by nested central differences with two
/// Richardson steps (`O(h⁶)`).
pub fn bracket_mixed_derivative(z: f64, a: f64, b: f64, shift: i32, r: f64) -> f64 {
    let stencil = |h: f64| {
        let d_z = |bb: f64| {
            (bracket(z + h, a, bb, shift, r) - bracket(z - h, a, bb, shift, r)) / (2.0 * h)
        };
        (d_z(b + h) - 2.0 * d_z(b) + d_z(b - h)) / (h * h)
    };
    // the bracket varies on the scale 1/r and has a removable pole at γ = b
    let gamma = z + f64::from(shift) * a;
    let h = 0.05 * (1.0 / r).min(gamma - b);
    let richardson = |h: f64| (4.0 * stencil(h / 2.0) - stencil(h)) / 3.0;
    (16.0 * richardson(h / 2.0) - richardson(h)) / 15.0
}

/// F(r) with the mixed derivative replaced by finite differences.
pub fn f_by_differences(z: f64, a: f64, b: f64, r: f64) -> f64 {
    -PI * PI / r * (a * r).cosh() * bracket_mixed_derivative(z, a, b, 0, r)
}

/// G(r) with the mixed derivatives replaced by finite differences.
pub fn g_by_differences(z: f64, a: f64, b: f64, r: f64) -> f64 {
    -PI * PI / (2.0 * r)
        * (bracket_mixed_derivative(z, a, b, -1, r) + bracket_mixed_derivative(z, a, b, 1, r))
}

/// ψ₂(r) by integrating the correlated part of the two-electron function
/// over the second electron:
///
/// ```text
/// ψ₂(r) = ¼ e^{-Zr} ∫ 2π u² e^{-Zu} (cosh ar + cosh au) ∫_{-1}^{1} r12 e^{-b r12} dμ du,
/// r12 = √(r² + u² − 2ruμ)
/// ```
///
/// The radial axis is split at `u = r` (kink of `r12`) and cut at a radius
/// where the integrand is below 1e-25 of its scale.
pub fn psi2_by_double_quadrature(z: f64, a: f64, b: f64, r: f64) -> Result<f64> {
    let inner_spec = QuadratureSpec::default()
        .with_rel_tol(1e-12)
        .with_abs_tol(0.0)
        .with_max_subdivisions(5000);
    let outer_spec = QuadratureSpec::default()
        .with_rel_tol(1e-11)
        .with_abs_tol(0.0)
        .with_max_subdivisions(5000);
    let angular = |u: f64| -> Result<f64> {
        integrate(
            |mu: f64| {
                let r12 = (r * r + u * u - 2.0 * r * u * mu).max(0.0).sqrt();
                r12 * (-b * r12).exp()
            },
            -1.0,
            1.0,
            &inner_spec,
        )
        .map(|e| e.value)
    };
    let radial = |u: f64| -> f64 {
        match angular(u) {
            Ok(inner) => {
                2.0 * PI * u * u * (-z * u).exp() * ((a * r).cosh() + (a * u).cosh()) * inner
            }
            Err(_) => f64::NAN,
        }
    };
    let r_max = r + 60.0 / (z - a);
    let near = integrate(radial, 0.0, r, &outer_spec)?.value;
    let far = integrate(radial, r, r_max, &outer_spec)?.value;
    Ok(0.25 * (-z * r).exp() * (near + far))
}

/// `(4π/p) ∫ r^{n+1} e^{-αr} sin(pr) dr`, the spherical transform of `r^n e^{-αr}`.
///
/// The integral is split at the zeros of `sin(pr)` so each piece has one sign,
/// then the pieces are summed. The oscillation-free tail beyond the last zero
/// is integrated until the envelope drops below 1e-30 of its scale.
pub fn sine_transform(power: i32, alpha: f64, p: f64) -> Result<SineTransform> {
    let k = power + 1;
    let cutoff = (80.0 + 5.0 * f64::from(k + 1)) / alpha;
    let spec = QuadratureSpec::default()
        .with_rel_tol(1e-12)
        .with_abs_tol(0.0)
        .with_max_subdivisions(200);
    let integrand = |x: f64| x.powi(k) * (-alpha * x).exp() * (p * x).sin();
    let half_period = PI / p;
    let pieces = (cutoff / half_period).ceil() as usize;
    let mut sum = 0.0;
    let mut compensation = 0.0;
    let mut absolute = 0.0;
    for i in 0..pieces {
        let lo = i as f64 * half_period;
        let piece = integrate(integrand, lo, lo + half_period, &spec)?.value;
        absolute += piece.abs();
        // Neumaier summation
        let t = sum + piece;
        compensation += if sum.abs() >= piece.abs() {
            (sum - t) + piece
        } else {
            (piece - t) + sum
        };
        sum = t;
    }
    let scale = 4.0 * PI / p;
    Ok(SineTransform {
        value: scale * (sum + compensation),
        absolute: scale * absolute,
    })
}

/// Result of [`sine_transform`]: the value and `(4π/p) ∫ |integrand|`, the
/// natural scale for judging an exactly vanishing transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineTransform {
    pub value: f64,
    pub absolute: f64,
}

/// `∫ w(q) e^{iq·r} d³q = (4π/r) ∫_0^∞ q w(q) sin(qr) dq` for a radial weight
/// decaying at least like `q^-5`, summed over half-periods of `sin(qr)`.
fn radial_fourier_integral(w: impl Fn(f64) -> f64, r: f64) -> Result<f64> {
    let spec = QuadratureSpec::default()
        .with_rel_tol(1e-12)
        .with_abs_tol(0.0)
        .with_max_subdivisions(500);
    let half_period = PI / r;
    let mut sum = 0.0;
    let mut small_pieces = 0;
    for i in 0..1_000_000 {
        let lo = f64::from(i) * half_period;
        let piece = integrate(|q| q * w(q) * (q * r).sin(), lo, lo + half_period, &spec)?.value;
        sum += piece;
        small_pieces = if piece.abs() <= 1e-17 * sum.abs() {
            small_pieces + 1
        } else {
            0
        };
        if small_pieces == 4 {
            break;
        }
    }
    Ok(4.0 * PI / r * sum)
}

fn momentum_weight(gamma: f64, b: f64) -> impl Fn(f64) -> f64 {
    move |q: f64| {
        let (q2, b2) = (q * q, b * b);
        (3.0 * b2 - q2) / ((b2 + q2).powi(3) * (gamma * gamma + q2).powi(2))
    }
}

/// F(r) from its momentum-space integral representation
/// `2Z cosh(ar) ∫ (3b²−q²) e^{iq·r} / ((b²+q²)³ (Z²+q²)²) d³q`.
pub fn f_by_momentum_integral(z: f64, a: f64, b: f64, r: f64) -> Result<f64> {
    Ok(2.0 * z * (a * r).cosh() * radial_fourier_integral(momentum_weight(z, b), r)?)
}

/// G(r) from its momentum-space integral representation, the `Z ∓ a`
/// analogues of [`f_by_momentum_integral`] without the cosh factor.
pub fn g_by_momentum_integral(z: f64, a: f64, b: f64, r: f64) -> Result<f64> {
    let minus = (z - a) * radial_fourier_integral(momentum_weight(z - a, b), r)?;
    let plus = (z + a) * radial_fourier_integral(momentum_weight(z + a, b), r)?;
    Ok(minus + plus)
}
