//! Exponentially convergent solvers for time-fractional evolution equations
//! of Hardy–Titchmarsh type,
//!
//! ```text
//! -D^{1+α} u(t) + A u(t) = f(t),   t > 0,   u(0) = u0,
//! ```
//!
//! where `D` is the right-sided Riemann–Liouville derivative on the
//! semi-axis and `A` is a sectorial operator. The homogeneous solution
//! `exp(-A^{1/(1+α)} t) u0` is written as a Dunford–Cauchy integral over a
//! hyperbola enveloping the spectrum and discretised with Sinc quadrature,
//! giving errors that decay like `exp(-c √N)` in the number of nodes.
//!
//! The crate is `no_std` (with `alloc`). IO, configuration and the CLI live
//! in the `fracsinc-harness` crate.
//!
//! Module map:
//! - [`contour`]: sector data, the spectral/integral hyperbolas, angle checks.
//! - [`operator`]: diagonal and finite-difference Laplacian operators with
//!   corrected-resolvent and power application.
//! - [`homogeneous`]: the Sinc-quadrature solver for the homogeneous problem.
//! - [`inhomogeneous`]: exponential forcing and the double-Sinc convolution.
//! - [`charpoly`]: characteristic roots and Vandermonde kernel coefficients.
//! - [`fracderiv`]: numeric right Riemann–Liouville evaluators used as
//!   independent residual oracles.
#![no_std]

extern crate alloc;

pub mod charpoly;
pub mod contour;
mod error;
pub mod exec;
pub mod fracderiv;
pub mod homogeneous;
pub mod inhomogeneous;
pub mod numdiff;
pub mod operator;
pub mod quad;
pub mod special;
mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
