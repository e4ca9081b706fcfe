//! Boundary-triplet coordinates of elements of the adjoint domain and the
//! boundary condition `B Γ₀f = Γ₁f` selecting a realization.
//!
//! An element `f = u + Σ αⱼ hⱼ` is carried only through its coordinate pair:
//! `a = (α₁, …, αₙ)` along the defect basis and `b = (⟨ψ₁,u⟩, …, ⟨ψₙ,u⟩)`.
//! The regularized triplet is `Γ₀f = b + R a`, `Γ₁f = −a`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, check_dim, check_square, CMatrix, CVector};

pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCoordinates {
    #[serde(with = "linalg::vector_serde")]
    pub a: CVector,
    #[serde(with = "linalg::vector_serde")]
    pub b: CVector,
}

impl BoundaryCoordinates {
    pub fn new(a: CVector, b: CVector) -> Result<Self> {
        check_dim(a.len(), b.len())?;
        if a.iter().chain(b.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite boundary coordinate".into()));
        }
        Ok(BoundaryCoordinates { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }
}

/// Hermitian matrix fixing the extension of the singular functionals to the
/// adjoint domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct AdmissibleMatrix(CMatrix);

impl AdmissibleMatrix {
    pub fn new(r: CMatrix) -> Result<Self> {
        AdmissibleMatrix::with_tol(r, DEFAULT_HERMITIAN_TOL)
    }

    pub fn with_tol(r: CMatrix, tol: f64) -> Result<Self> {
        check_square(&r)?;
        let defect = linalg::hermitian_defect(&r);
        if defect > tol * linalg::norm(&r).max(1.0) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(AdmissibleMatrix(r))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// Coefficient matrix `(bᵢⱼ)` of the singular potential. Hermiticity is a
/// queried property, not an invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CouplingMatrix(CMatrix);

impl CouplingMatrix {
    pub fn new(b: CMatrix) -> Result<Self> {
        check_square(&b)?;
        if b.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite coupling entry".into()));
        }
        Ok(CouplingMatrix(b))
    }

    pub fn zeros(n: usize) -> Self {
        CouplingMatrix(CMatrix::zeros(n, n))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RawMatrix(#[serde(with = "linalg::matrix_serde")] CMatrix);

impl TryFrom<RawMatrix> for AdmissibleMatrix {
    type Error = Error;
    fn try_from(r: RawMatrix) -> Result<Self> {
        AdmissibleMatrix::new(r.0)
    }
}

impl From<AdmissibleMatrix> for RawMatrix {
    fn from(r: AdmissibleMatrix) -> Self {
        RawMatrix(r.0)
    }
}

impl TryFrom<RawMatrix> for CouplingMatrix {
    type Error = Error;
    fn try_from(r: RawMatrix) -> Result<Self> {
        CouplingMatrix::new(r.0)
    }
}

impl From<CouplingMatrix> for RawMatrix {
    fn from(b: CouplingMatrix) -> Self {
        RawMatrix(b.0)
    }
}

/// `(Γ₀f, Γ₁f) = (b + R a, −a)`.
pub fn to_regularized_triplet(coords: &BoundaryCoordinates, r: &AdmissibleMatrix) -> Result<(CVector, CVector)> {
    check_dim(r.dim(), coords.dim())?;
    let g0 = &coords.b + r.matrix() * &coords.a;
    let g1 = -&coords.a;
    Ok((g0, g1))
}

/// Whether the element satisfies `B Γ₀f = Γ₁f` up to `tol`.
pub fn in_realization_domain(
    coords: &BoundaryCoordinates,
    b: &CouplingMatrix,
    r: &AdmissibleMatrix,
    tol: f64,
) -> Result<bool> {
    check_dim(b.dim(), coords.dim())?;
    let (g0, g1) = to_regularized_triplet(coords, r)?;
    Ok((b.matrix() * g0 - g1).norm() <= tol)
}

/// A realization is self-adjoint exactly when its coupling matrix is
/// Hermitian; `tol` is relative to `max(‖B‖, 1)`.
pub fn is_selfadjoint_realization(b: &CouplingMatrix, tol: f64) -> bool {
    linalg::is_hermitian(b.matrix(), tol)
}
