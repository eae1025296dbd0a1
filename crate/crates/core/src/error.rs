use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter binding violates one of its admissibility constraints.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A coefficient denominator vanishes (or nearly so) at the bound parameters.
    #[error("degenerate parameters: {what} = {value:e} is below the degeneracy tolerance")]
    DegenerateParameter { what: String, value: f64 },

    #[error("non-positive exponent {alpha} in term r^{power} e^(-alpha r)")]
    NonPositiveExponent { power: i32, alpha: f64 },

    /// The 1/r coefficients of a function do not cancel, so the r -> 0 limit is infinite.
    #[error(
        "uncancelled 1/r singularity: residual coefficient sum {residual:e} (scale {scale:e})"
    )]
    Singularity { residual: f64, scale: f64 },

    #[error("divergent integral: term r^{power} integrated against r^{extra_power}")]
    DivergentIntegral { power: i32, extra_power: i32 },

    #[error("unsupported term shape r^{power}")]
    UnsupportedShape { power: i32 },

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge after {subdivisions} subdivisions: value {value:e}, error estimate {error_estimate:e}")]
    Quadrature {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("non-finite integrand value {value} at x = {x}")]
    NonFiniteIntegrand { x: f64, value: f64 },

    #[error("unknown ion `{0}`")]
    UnknownIon(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
