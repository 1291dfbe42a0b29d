//! Sectorial operator coefficients.
//!
//! Two concrete families are supported: a diagonal operator with positive
//! eigenvalues, and the Dirichlet finite-difference Laplacian
//! `(n+1)² · tridiag(−1, 2, −1)` on `n` interior points of `(0, 1)`. Both are
//! self-adjoint, so any sector angle `φ > 0` is admissible; the vertex
//! `rho0` is the exact smallest eigenvalue.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::Index;
#[allow(unused_imports)] // float methods come from std when it is linked
use num_traits::Float;

use num_complex::Complex64;

use crate::contour::SectorSpec;
use crate::{Error, Result};

/// Default sector half-angle for self-adjoint operators.
pub const DEFAULT_SECTOR_ANGLE: f64 = PI / 12.0;

/// Default resolvent constant `M` recorded in the sector of a self-adjoint
/// operator. It is bookkeeping only; no numerical path depends on it.
pub const DEFAULT_RESOLVENT_BOUND: f64 = 1.0;

/// Complex state vector `u(t)`, `u(0)` or `f(t)` of an operator's dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(Vec<Complex64>);

impl StateVector {
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument(
                "state vector entries must be finite",
            ));
        }
        Ok(Self(entries))
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); dim])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Complex64> {
        self.0.iter()
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.0.iter().map(|z| z.re).collect()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self(self.0.iter().map(|&z| z * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.len(), other.len())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect(),
        ))
    }

    pub(crate) fn from_raw(entries: Vec<Complex64>) -> Self {
        Self(entries)
    }
}

impl Index<usize> for StateVector {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Operator with a sector and a corrected-resolvent action
/// `v ↦ [(zI − A)^{-1} − z^{-1} I] v`.
pub trait SectorialOperator: Sync {
    fn dim(&self) -> usize;

    fn sector(&self) -> SectorSpec;

    /// Whether the spectrum is real (self-adjoint operators). Solvers use this
    /// to pair conjugate nodes and return exactly real values for real data.
    fn has_real_spectrum(&self) -> bool;

    fn corrected_resolvent_apply(&self, z: Complex64, v: &StateVector) -> Result<StateVector>;
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorKind {
    Diagonal(Vec<f64>),
    /// `n` interior points of `(0, 1)`, Dirichlet boundary conditions.
    TridiagonalLaplacian {
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorHandle {
    kind: OperatorKind,
    sector: SectorSpec,
}

/// Eigenvalue `4(n+1)² sin²(kπ / (2(n+1)))`, `k = 1..=n`, of the
/// finite-difference Laplacian.
pub fn laplacian_eigenvalue(n: usize, k: usize) -> f64 {
    let m = (n + 1) as f64;
    let s = (k as f64 * PI / (2.0 * m)).sin();
    4.0 * m * m * s * s
}

/// Finite-difference Dirichlet Laplacian on `n` interior points, with the
/// default sector angle.
pub fn make_tridiagonal_laplacian(n: usize) -> Result<OperatorHandle> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "laplacian needs at least one interior point",
        ));
    }
    let sector = SectorSpec::new(
        laplacian_eigenvalue(n, 1),
        DEFAULT_SECTOR_ANGLE,
        DEFAULT_RESOLVENT_BOUND,
    )?;
    Ok(OperatorHandle {
        kind: OperatorKind::TridiagonalLaplacian { n },
        sector,
    })
}

impl OperatorHandle {
    /// Diagonal operator; `rho0` is the smallest eigenvalue and `phi` the
    /// caller's sector angle.
    pub fn diagonal(eigenvalues: Vec<f64>, phi: f64) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidArgument(
                "diagonal operator needs eigenvalues",
            ));
        }
        if eigenvalues.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return Err(Error::InvalidArgument(
                "eigenvalues must be positive and finite",
            ));
        }
        let rho0 = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let sector = SectorSpec::new(rho0, phi, DEFAULT_RESOLVENT_BOUND)?;
        Ok(Self {
            kind: OperatorKind::Diagonal(eigenvalues),
            sector,
        })
    }

    pub fn with_sector_angle(mut self, phi: f64) -> Result<Self> {
        self.sector = SectorSpec::new(self.sector.rho0(), phi, self.sector.resolvent_bound())?;
        Ok(self)
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn sector(&self) -> SectorSpec {
        self.sector
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            OperatorKind::Diagonal(l) => l.len(),
            OperatorKind::TridiagonalLaplacian { n } => *n,
        }
    }

    /// Eigenvalues in the order of [`Self::eigenvector`] (ascending for the
    /// Laplacian, as given for diagonal operators).
    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.kind {
            OperatorKind::Diagonal(l) => l.clone(),
            OperatorKind::TridiagonalLaplacian { n } => {
                (1..=*n).map(|k| laplacian_eigenvalue(*n, k)).collect()
            }
        }
    }

    /// Orthonormal eigenvector `index` (0-based).
    pub fn eigenvector(&self, index: usize) -> Vec<f64> {
        match &self.kind {
            OperatorKind::Diagonal(l) => {
                let mut e = vec![0.0; l.len()];
                e[index] = 1.0;
                e
            }
            OperatorKind::TridiagonalLaplacian { n } => laplacian_mode(*n, index + 1),
        }
    }

    /// Grid points `x_j = j/(n+1)`, `j = 1..=n`, of the Laplacian.
    pub fn grid(&self) -> Option<Vec<f64>> {
        match &self.kind {
            OperatorKind::TridiagonalLaplacian { n } => {
                let m = (*n + 1) as f64;
                Some((1..=*n).map(|j| j as f64 / m).collect())
            }
            OperatorKind::Diagonal(_) => None,
        }
    }

    /// Coordinates of `v` in the orthonormal eigenbasis.
    pub fn spectral_coefficients(&self, v: &StateVector) -> Result<Vec<Complex64>> {
        check_dim(self.dim(), v.len())?;
        Ok(match &self.kind {
            OperatorKind::Diagonal(_) => v.entries().to_vec(),
            OperatorKind::TridiagonalLaplacian { n } => dst(*n, v.entries()),
        })
    }

    /// Inverse of [`Self::spectral_coefficients`].
    pub fn from_spectral_coefficients(&self, c: &[Complex64]) -> Result<StateVector> {
        check_dim(self.dim(), c.len())?;
        Ok(StateVector::from_raw(match &self.kind {
            OperatorKind::Diagonal(_) => c.to_vec(),
            // The orthonormal sine transform is its own inverse.
            OperatorKind::TridiagonalLaplacian { n } => dst(*n, c),
        }))
    }

    /// `A v`.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), v.len())?;
        let x = v.entries();
        Ok(StateVector::from_raw(match &self.kind {
            OperatorKind::Diagonal(l) => x.iter().zip(l).map(|(&xi, &li)| xi * li).collect(),
            OperatorKind::TridiagonalLaplacian { n } => {
                let s = ((*n + 1) * (*n + 1)) as f64;
                (0..*n)
                    .map(|j| {
                        let mut y = x[j] * 2.0;
                        if j > 0 {
                            y -= x[j - 1];
                        }
                        if j + 1 < *n {
                            y -= x[j + 1];
                        }
                        y * s
                    })
                    .collect()
            }
        }))
    }

    /// Plain resolvent `(zI − A)^{-1} v`.
    pub fn resolvent_apply(&self, z: Complex64, v: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), v.len())?;
        match &self.kind {
            OperatorKind::Diagonal(l) => {
                let mut out = Vec::with_capacity(l.len());
                for (&x, &lam) in v.iter().zip(l) {
                    out.push(x / diagonal_gap(z, lam)?);
                }
                Ok(StateVector::from_raw(out))
            }
            OperatorKind::TridiagonalLaplacian { n } => {
                let s = ((*n + 1) * (*n + 1)) as f64;
                shifted_toeplitz_solve(z - 2.0 * s, s, v.entries(), z).map(StateVector::from_raw)
            }
        }
    }

    /// Corrected resolvent `[(zI − A)^{-1} − z^{-1} I] v`, evaluated as
    /// `z^{-1} (zI − A)^{-1} A v`, which avoids the cancellation between the
    /// two terms when `|z|` is large.
    pub fn corrected_resolvent_apply(&self, z: Complex64, v: &StateVector) -> Result<StateVector> {
        check_dim(self.dim(), v.len())?;
        if z.norm() == 0.0 {
            return Err(Error::SingularShift { z });
        }
        match &self.kind {
            OperatorKind::Diagonal(l) => {
                let mut out = Vec::with_capacity(l.len());
                for (&x, &lam) in v.iter().zip(l) {
                    out.push(x * lam / (z * diagonal_gap(z, lam)?));
                }
                Ok(StateVector::from_raw(out))
            }
            OperatorKind::TridiagonalLaplacian { .. } => {
                let av = self.apply(v)?;
                let w = self.resolvent_apply(z, &av)?;
                Ok(w.scaled(z.inv()))
            }
        }
    }

    /// `‖(zI − A) w − v‖∞ / ‖v‖∞` for a computed resolvent `w`.
    pub fn resolvent_residual(
        &self,
        z: Complex64,
        w: &StateVector,
        v: &StateVector,
    ) -> Result<f64> {
        let aw = self.apply(w)?;
        let r = w.scaled(z).sub(&aw)?.sub(v)?;
        let vn = v.norm_inf();
        Ok(if vn == 0.0 {
            r.norm_inf()
        } else {
            r.norm_inf() / vn
        })
    }

    /// `A^γ v` through the eigenvalues `λ^γ`; for the Laplacian the exact
    /// sine eigenbasis is used.
    pub fn power_apply(&self, gamma: f64, v: &StateVector) -> Result<StateVector> {
        if !(gamma >= 0.0) {
            return Err(Error::InvalidArgument("operator power must be nonnegative"));
        }
        if gamma == 0.0 {
            check_dim(self.dim(), v.len())?;
            return Ok(v.clone());
        }
        let lam = self.eigenvalues();
        let c = self.spectral_coefficients(v)?;
        let scaled: Vec<Complex64> = c
            .iter()
            .zip(&lam)
            .map(|(&ci, &l)| ci * l.powf(gamma))
            .collect();
        self.from_spectral_coefficients(&scaled)
    }

    /// Distance from `z` to the spectrum.
    pub fn spectral_distance(&self, z: Complex64) -> f64 {
        match &self.kind {
            OperatorKind::Diagonal(l) => l
                .iter()
                .map(|&lam| (z - lam).norm())
                .fold(f64::INFINITY, f64::min),
            OperatorKind::TridiagonalLaplacian { n } => {
                let lo = laplacian_eigenvalue(*n, 1);
                let hi = laplacian_eigenvalue(*n, *n);
                let x = z.re.clamp(lo, hi);
                // Nearest eigenvalue in the real interval, refined over the discrete set.
                let eig = self.eigenvalues();
                let idx = eig.partition_point(|&e| e < x);
                let mut best = f64::INFINITY;
                for k in idx.saturating_sub(1)..(idx + 1).min(eig.len()) {
                    best = best.min((z - eig[k]).norm());
                }
                best
            }
        }
    }

    /// `(1 + |z|) ‖(zI − A)^{-1}‖`, i.e. the smallest `M` that makes the
    /// resolvent bound hold at `z` (self-adjoint: `‖R(z)‖ = 1/dist`).
    pub fn resolvent_bound_margin(&self, z: Complex64) -> f64 {
        (1.0 + z.norm()) / self.spectral_distance(z)
    }
}

impl SectorialOperator for OperatorHandle {
    fn dim(&self) -> usize {
        OperatorHandle::dim(self)
    }

    fn sector(&self) -> SectorSpec {
        self.sector
    }

    fn has_real_spectrum(&self) -> bool {
        true
    }

    fn corrected_resolvent_apply(&self, z: Complex64, v: &StateVector) -> Result<StateVector> {
        OperatorHandle::corrected_resolvent_apply(self, z, v)
    }
}

/// The integer power `A^q` of a handle, with sector vertex `rho0^q`.
#[derive(Debug, Clone)]
pub struct OperatorPower<'a> {
    base: &'a OperatorHandle,
    exponent: u32,
    sector: SectorSpec,
}

impl<'a> OperatorPower<'a> {
    pub fn new(base: &'a OperatorHandle, exponent: u32) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::InvalidArgument(
                "operator power exponent must be >= 1",
            ));
        }
        let sector = base
            .sector()
            .with_rho0(base.sector().rho0().powi(exponent as i32))?;
        Ok(Self {
            base,
            exponent,
            sector,
        })
    }

    pub fn base(&self) -> &OperatorHandle {
        self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `A^q v` by repeated application.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        let mut w = v.clone();
        for _ in 0..self.exponent {
            w = self.base.apply(&w)?;
        }
        Ok(w)
    }
}

impl SectorialOperator for OperatorPower<'_> {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn sector(&self) -> SectorSpec {
        self.sector
    }

    fn has_real_spectrum(&self) -> bool {
        true
    }

    fn corrected_resolvent_apply(&self, z: Complex64, v: &StateVector) -> Result<StateVector> {
        if self.exponent == 1 {
            return self.base.corrected_resolvent_apply(z, v);
        }
        check_dim(self.dim(), v.len())?;
        if z.norm() == 0.0 {
            return Err(Error::SingularShift { z });
        }
        let q = self.exponent as i32;
        match self.base.kind() {
            OperatorKind::Diagonal(l) => {
                let mut out = Vec::with_capacity(l.len());
                for (&x, &lam) in v.iter().zip(l) {
                    let m = lam.powi(q);
                    out.push(x * m / (z * diagonal_gap(z, m)?));
                }
                Ok(StateVector::from_raw(out))
            }
            OperatorKind::TridiagonalLaplacian { .. } => {
                // A^q is banded but not tridiagonal; use the exact eigenbasis.
                let c = self.base.spectral_coefficients(v)?;
                let lam = self.base.eigenvalues();
                let mut scaled = Vec::with_capacity(c.len());
                for (&ci, &l) in c.iter().zip(&lam) {
                    let m = l.powi(q);
                    scaled.push(ci * m / (z * diagonal_gap(z, m)?));
                }
                self.base.from_spectral_coefficients(&scaled)
            }
        }
    }
}

fn diagonal_gap(z: Complex64, lam: f64) -> Result<Complex64> {
    let gap = z - lam;
    if gap.norm() < 1e-14 * z.norm() || gap.norm() == 0.0 {
        Err(Error::SingularShift { z })
    } else {
        Ok(gap)
    }
}

/// Solves the constant-coefficient tridiagonal system with diagonal `diag`
/// and both off-diagonals `off` by forward elimination and back
/// substitution. `z` is only carried for the error report.
fn shifted_toeplitz_solve(
    diag: Complex64,
    off: f64,
    rhs: &[Complex64],
    z: Complex64,
) -> Result<Vec<Complex64>> {
    let n = rhs.len();
    let floor = 1e-14 * (z.norm() + 2.0 * off.abs());
    let mut upper = vec![Complex64::new(0.0, 0.0); n];
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    let mut pivot = diag;
    if pivot.norm() <= floor {
        return Err(Error::SingularShift { z });
    }
    upper[0] = Complex64::new(off, 0.0) / pivot;
    y[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag - upper[i - 1] * off;
        if pivot.norm() <= floor {
            return Err(Error::SingularShift { z });
        }
        upper[i] = Complex64::new(off, 0.0) / pivot;
        y[i] = (rhs[i] - y[i - 1] * off) / pivot;
    }
    for i in (0..n.saturating_sub(1)).rev() {
        let next = y[i + 1];
        y[i] -= upper[i] * next;
    }
    Ok(y)
}

/// Orthonormal mode `sqrt(2/(n+1)) sin(j k π/(n+1))`, `j = 1..=n`.
fn laplacian_mode(n: usize, k: usize) -> Vec<f64> {
    let m = (n + 1) as f64;
    let scale = (2.0 / m).sqrt();
    (1..=n)
        .map(|j| scale * ((j * k) as f64 * PI / m).sin())
        .collect()
}

/// Orthonormal type-I sine transform, `O(n²)`.
fn dst(n: usize, x: &[Complex64]) -> Vec<Complex64> {
    let m = (n + 1) as f64;
    let scale = (2.0 / m).sqrt();
    // sin(jkπ/(n+1)) depends only on jk mod 2(n+1).
    let period = 2 * (n + 1);
    let table: Vec<f64> = (0..period).map(|r| (r as f64 * PI / m).sin()).collect();
    (1..=n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &xj) in x.iter().enumerate() {
                acc += xj * table[((j + 1) * k) % period];
            }
            acc * scale
        })
        .collect()
}
