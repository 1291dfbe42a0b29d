//! Sector data and the hyperbolic contours.
//!
//! Two hyperbolas of the family
//! `z(ξ) = a (cosh ξ − 1) + shift − i b sinh ξ` are used:
//!
//! * the *spectral* hyperbola (`a0`, `b0`, vertex `rho0`) which envelopes the
//!   sector containing the spectrum from the left;
//! * the *integral* hyperbola (`aI = 1`, `bI = tan(π/4 + φ/2)`,
//!   vertex `q = rho0/2 + 1`) used as the integration path.
//!
//! Rotating the integral hyperbola's parameter into the complex strip,
//! `z(ξ + iν)`, gives `a(ν) cosh ξ − aI + q − i b(ν) sinh ξ`. The coefficients
//! are chosen so that `ν = −d1/2` yields a vertical line and `ν = d1/2`
//! reproduces the spectral hyperbola, with `d1 = π/2 − φ`.
//!
//! All angles are radians.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
#[allow(unused_imports)] // float methods come from std when it is linked
use num_traits::Float;

use num_complex::Complex64;

use crate::{Error, Result};

/// Sector `{rho0 + r e^{iθ} : |θ| <= φ}` containing the spectrum, together
/// with the resolvent bound constant `M` in `‖(zI − A)^{-1}‖ <= M/(1 + |z|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorSpec {
    rho0: f64,
    phi: f64,
    resolvent_bound: f64,
}

impl SectorSpec {
    pub fn new(rho0: f64, phi: f64, resolvent_bound: f64) -> Result<Self> {
        if !(rho0 > 0.0 && rho0.is_finite()) {
            return Err(Error::InvalidSector("rho0 must be positive and finite"));
        }
        if !(phi > 0.0 && phi < FRAC_PI_2) {
            return Err(Error::InvalidSector("phi must lie in (0, pi/2)"));
        }
        if !(resolvent_bound > 0.0 && resolvent_bound.is_finite()) {
            return Err(Error::InvalidSector("M must be positive and finite"));
        }
        Ok(Self {
            rho0,
            phi,
            resolvent_bound,
        })
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn resolvent_bound(&self) -> f64 {
        self.resolvent_bound
    }

    /// Same sector with a different vertex; used for operator powers.
    pub fn with_rho0(&self, rho0: f64) -> Result<Self> {
        Self::new(rho0, self.phi, self.resolvent_bound)
    }
}

/// The fractional order `α ∈ (−1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > -1.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    pub(crate) fn from_valid(alpha: f64) -> Self {
        debug_assert!(alpha > -1.0 && alpha < 1.0);
        Self(alpha)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Exponent `1/(1 + α)` of the operator in the solution operator.
    pub fn power(self) -> f64 {
        1.0 / (1.0 + self.0)
    }
}

/// `z(ξ) = a (cosh ξ − 1) + shift − i b sinh ξ`, with the half-width `d1`
/// of the strip in which the parameterisation stays admissible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperbola {
    a: f64,
    b: f64,
    shift: f64,
    strip_half_width: f64,
}

impl Hyperbola {
    pub fn new(a: f64, b: f64, shift: f64, strip_half_width: f64) -> Result<Self> {
        if !(a > 0.0 && b >= 0.0) {
            return Err(Error::InvalidArgument("hyperbola needs a > 0 and b >= 0"));
        }
        if !(strip_half_width >= 0.0) || !shift.is_finite() {
            return Err(Error::InvalidArgument(
                "hyperbola strip and shift must be finite",
            ));
        }
        Ok(Self {
            a,
            b,
            shift,
            strip_half_width,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn strip_half_width(&self) -> f64 {
        self.strip_half_width
    }

    /// Point where the contour crosses the real axis (`ξ = 0`).
    pub fn vertex(&self) -> f64 {
        self.shift
    }

    /// Angle between the asymptotes and the positive real axis.
    pub fn asymptotic_angle(&self) -> f64 {
        self.b.atan2(self.a)
    }

    /// Contour point and derivative at parameter `xi`.
    pub fn point(&self, xi: f64) -> (Complex64, Complex64) {
        let (sh, ch) = (xi.sinh(), xi.cosh());
        let z = Complex64::new(self.a * (ch - 1.0) + self.shift, -self.b * sh);
        let dz = Complex64::new(self.a * sh, -self.b * ch);
        (z, dz)
    }

    /// Coefficients `(a(ν), b(ν))` of the rotated curve `z(ξ + iν)`.
    pub fn rotated_coefficients(&self, nu: f64) -> (f64, f64) {
        let (s, c) = nu.sin_cos();
        (self.a * c + self.b * s, self.b * c - self.a * s)
    }

    /// `z(ξ + iν)` for a complex parameter.
    pub fn point_in_strip(&self, xi: f64, nu: f64) -> Complex64 {
        let (a_nu, b_nu) = self.rotated_coefficients(nu);
        Complex64::new(a_nu * xi.cosh() - self.a + self.shift, -b_nu * xi.sinh())
    }
}

fn half_angle_cos(phi: f64) -> f64 {
    (FRAC_PI_4 + 0.5 * phi).cos()
}

/// Coefficient `a0 = cos φ / cos(π/4 + φ/2)` of the spectral hyperbola.
pub fn spectral_a0(phi: f64) -> f64 {
    phi.cos() / half_angle_cos(phi)
}

/// Spectral hyperbola enveloping the sector from the left.
pub fn build_spectral_hyperbola(sector: &SectorSpec) -> Result<Hyperbola> {
    let phi = sector.phi();
    let a0 = spectral_a0(phi);
    let b0 = phi.sin() / half_angle_cos(phi);
    if sector.rho0() <= a0 {
        return Err(Error::VertexTooSmall {
            rho0: sector.rho0(),
            a0,
        });
    }
    Hyperbola::new(a0, b0, sector.rho0(), 0.0)
}

/// Integration hyperbola with `aI = 1`, `bI = tan(π/4 + φ/2)`, `d1 = π/2 − φ`
/// and vertex `q = rho0/2 + 1`.
pub fn build_integral_hyperbola(sector: &SectorSpec) -> Result<Hyperbola> {
    let phi = sector.phi();
    let shift = 0.5 * sector.rho0() + 1.0;
    let a = 1.0;
    let gap = shift - a;
    if gap <= 0.0 || gap >= sector.rho0() {
        return Err(Error::ContourCollision {
            vertex: gap,
            rho0: sector.rho0(),
        });
    }
    Hyperbola::new(a, (FRAC_PI_4 + 0.5 * phi).tan(), shift, FRAC_PI_2 - phi)
}

/// The integral hyperbola without the real shift, `aI cosh ξ − i bI sinh ξ`,
/// used by the convolution quadrature. Its vertex sits at `aI = 1`, so the
/// spectrum must start strictly to the right of 1.
pub fn build_unshifted_hyperbola(sector: &SectorSpec) -> Result<Hyperbola> {
    let phi = sector.phi();
    let a = 1.0;
    if sector.rho0() <= a {
        return Err(Error::ContourCollision {
            vertex: a,
            rho0: sector.rho0(),
        });
    }
    Hyperbola::new(a, (FRAC_PI_4 + 0.5 * phi).tan(), a, FRAC_PI_2 - phi)
}

/// Point and derivative of `hyp` at `xi`.
pub fn contour_point(hyp: &Hyperbola, xi: f64) -> (Complex64, Complex64) {
    hyp.point(xi)
}

/// Order/angle compatibility: for `α < 0` the sector angle must satisfy
/// `φ < (1 + α) π/2` (strict); for `α >= 0` any `φ < π/2` is accepted.
pub fn validate_angle(alpha: FractionalOrder, sector: &SectorSpec) -> Result<()> {
    let max_angle = if alpha.value() < 0.0 {
        (1.0 + alpha.value()) * FRAC_PI_2
    } else {
        FRAC_PI_2
    };
    if sector.phi() < max_angle {
        Ok(())
    } else {
        Err(Error::AngleViolation {
            phi: sector.phi(),
            max_angle,
        })
    }
}

/// The contour must cross the real axis strictly between the origin and the
/// bottom of the (real) spectrum, otherwise the lowest eigenvalues are not
/// enclosed.
pub fn check_encloses_spectrum(hyp: &Hyperbola, sector: &SectorSpec) -> Result<()> {
    let vertex = hyp.vertex();
    if vertex > 0.0 && vertex < sector.rho0() {
        Ok(())
    } else {
        Err(Error::ContourCollision {
            vertex,
            rho0: sector.rho0(),
        })
    }
}

/// `exp(-t z^{1/(1+α)})` decays along the asymptotes iff
/// `θ / (1 + α) < π/2`, with `θ` the asymptotic angle of the contour.
pub fn check_integrand_decay(hyp: &Hyperbola, alpha: FractionalOrder) -> Result<()> {
    let asymptotic_angle = hyp.asymptotic_angle();
    let limit = (1.0 + alpha.value()) * FRAC_PI_2;
    if asymptotic_angle < limit {
        Ok(())
    } else {
        Err(Error::DivergentContour {
            asymptotic_angle,
            limit,
        })
    }
}

/// True when the whole rotated family `ν ∈ [−d1/2, d1/2]` stays clear of a
/// real spectrum starting at `rho0`; the widest member crosses the axis at
/// `a(d1/2) − aI + q`.
pub fn strip_clears_spectrum(hyp: &Hyperbola, sector: &SectorSpec) -> bool {
    let (a_top, _) = hyp.rotated_coefficients(0.5 * hyp.strip_half_width());
    a_top - hyp.a() + hyp.shift() < sector.rho0()
}
