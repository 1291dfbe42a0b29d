use core::fmt;

use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the solver modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Sector data outside `rho0 > 0`, `0 < phi < π/2`, `M > 0`.
    InvalidSector(&'static str),
    /// Fractional order outside `(-1, 1)`.
    InvalidOrder(f64),
    /// The spectral hyperbola with `a0 = cos φ / cos(π/4 + φ/2)` cannot
    /// envelope a spectrum whose vertex is `rho0 <= a0`.
    VertexTooSmall {
        rho0: f64,
        a0: f64,
    },
    /// The integration contour does not separate the origin from the spectrum.
    ContourCollision {
        vertex: f64,
        rho0: f64,
    },
    /// `validate_angle` failure; carries the largest admissible sector angle.
    AngleViolation {
        phi: f64,
        max_angle: f64,
    },
    /// `exp(-t z^{1/(1+α)})` grows along the contour asymptotes.
    DivergentContour {
        asymptotic_angle: f64,
        limit: f64,
    },
    /// `z` is (numerically) an eigenvalue, or zero.
    SingularShift {
        z: Complex64,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    ZeroBase,
    InvalidArgument(&'static str),
    /// Tail rate of a tabulated profile is not positive.
    TailDivergence {
        rate: f64,
    },
    /// Adaptive quadrature ran out of its refinement budget.
    NonConvergence {
        estimate: f64,
        error: f64,
    },
    RepeatedRoot {
        first: usize,
        second: usize,
    },
    /// More characteristic roots than the Vandermonde closed form supports.
    TooManyRoots {
        p: usize,
        max: usize,
    },
    /// Closed-form kernel coefficients disagree with the direct solve.
    CramerMismatch {
        deviation: f64,
    },
    /// `1 + α = p/q` with `p >= 2`: the reduced ODE has a characteristic
    /// root with positive real part, so the convolution representation
    /// does not exist.
    UnsupportedOrder {
        p: u32,
        q: u32,
        positive_root_re: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSector(what) => write!(f, "invalid sector: {what}"),
            Error::InvalidOrder(a) => write!(f, "fractional order {a} outside (-1, 1)"),
            Error::VertexTooSmall { rho0, a0 } => write!(
                f,
                "sector vertex rho0 = {rho0} does not exceed a0 = {a0}; \
                 spectral hyperbola cannot envelope the spectrum"
            ),
            Error::ContourCollision { vertex, rho0 } => write!(
                f,
                "contour vertex {vertex} is not strictly between 0 and the spectrum (rho0 = {rho0})"
            ),
            Error::AngleViolation { phi, max_angle } => write!(
                f,
                "sector angle {phi} violates the order constraint; must be < {max_angle}"
            ),
            Error::DivergentContour {
                asymptotic_angle,
                limit,
            } => write!(
                f,
                "contour asymptotic angle {asymptotic_angle} is not below {limit}; \
                 the integrand grows along the contour"
            ),
            Error::SingularShift { z } => write!(f, "shift {z} is singular for the operator"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroBase => write!(f, "fractional power of zero"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::TailDivergence { rate } => {
                write!(
                    f,
                    "tail rate {rate} is not positive; tail integral diverges"
                )
            }
            Error::NonConvergence { estimate, error } => write!(
                f,
                "adaptive quadrature exhausted its budget (estimate {estimate}, error {error})"
            ),
            Error::RepeatedRoot { first, second } => {
                write!(f, "roots {first} and {second} coincide")
            }
            Error::TooManyRoots { p, max } => write!(f, "p = {p} exceeds the cap {max}"),
            Error::CramerMismatch { deviation } => write!(
                f,
                "closed-form kernel coefficients deviate from the direct solve by {deviation}"
            ),
            Error::UnsupportedOrder {
                p,
                q,
                positive_root_re,
            } => write!(
                f,
                "1 + alpha = {p}/{q} with p >= 2: characteristic root with real part \
                 {positive_root_re} > 0 makes the convolution kernel grow; only alpha = 1/q - 1 \
                 is supported"
            ),
        }
    }
}

impl core::error::Error for Error {}
