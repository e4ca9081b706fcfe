//! Nonnegativity and homogeneity of realizations `A_B`, the spectrum ladder
//! and the scattering matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, I};
use crate::symmetry::SymmetryFamily;
use crate::triplet::{AdmissibleMatrix, CouplingMatrix};

/// A realization `A_B` given by the boundary condition `B Γ₀f = Γ₁f`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationSpec {
    pub b: CouplingMatrix,
    pub r: AdmissibleMatrix,
    pub fam: Option<SymmetryFamily>,
}

impl RealizationSpec {
    pub fn new(b: CouplingMatrix, r: AdmissibleMatrix, fam: Option<SymmetryFamily>) -> Result<Self> {
        linalg::check_dim(r.dim(), b.dim())?;
        if let Some(f) = &fam {
            linalg::check_dim(b.dim(), f.channels())?;
        }
        Ok(RealizationSpec { b, r, fam })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonnegVerdict {
    pub nonnegative: bool,
    /// `X = −(BR + I)⁻¹B` when `BR + I` is invertible.
    #[serde(rename = "X", skip_serializing_if = "Option::is_none", default, with = "crate::linalg::opt_matrix_serde")]
    pub x: Option<CMatrix>,
    pub diagnostics: Vec<String>,
}

fn require_hermitian(b: &CouplingMatrix) -> Result<()> {
    if linalg::is_hermitian(b.matrix(), 1e-12) {
        Ok(())
    } else {
        Err(Error::NotHermitian {
            defect: linalg::hermitian_defect(b.matrix()),
        })
    }
}

/// Loewner-order test `0 ⪯ X ⪯ −R⁻¹` through Hermitian eigenvalue bounds.
pub fn is_nonnegative_realization(spec: &RealizationSpec, tol: f64) -> Result<NonnegVerdict> {
    require_hermitian(&spec.b)?;
    let n = spec.b.dim();
    let r = spec.r.matrix();
    let r_inv = linalg::inverse(r, "R")
        .map_err(|_| Error::InvalidInput("R must be invertible for the nonnegativity criterion".into()))?;
    let b = spec.b.matrix();
    let k = b * r + CMatrix::identity(n, n);
    let det = linalg::determinant(&k);
    let mut diagnostics = vec![format!("det(BR + I) = {det}")];
    if det.norm() <= tol {
        diagnostics.push("det: BR + I is singular".into());
        return Ok(NonnegVerdict {
            nonnegative: false,
            x: None,
            diagnostics,
        });
    }
    let x = -linalg::inverse(&k, "BR + I")? * b;
    let scale = linalg::norm(&x).max(linalg::norm(&r_inv)).max(1.0);
    let mut ok = true;
    let defect = linalg::hermitian_defect(&x);
    if defect > tol * scale {
        diagnostics.push(format!("X is not Hermitian (defect {defect:.3e})"));
        ok = false;
    }
    let low = linalg::hermitian_eigenvalues(&x).first().copied().unwrap_or(0.0);
    diagnostics.push(format!("λ_min(X) = {low:.6e}"));
    if low < -tol * scale {
        diagnostics.push("X is not positive semidefinite".into());
        ok = false;
    }
    let gap = -r_inv - &x;
    let high = linalg::hermitian_eigenvalues(&gap).first().copied().unwrap_or(0.0);
    diagnostics.push(format!("λ_min(−R⁻¹ − X) = {high:.6e}"));
    if high < -tol * scale {
        diagnostics.push("X exceeds −R⁻¹".into());
        ok = false;
    }
    Ok(NonnegVerdict {
        nonnegative: ok,
        x: Some(x),
        diagnostics,
    })
}

/// True iff `ξᵢ(t)ξⱼ(t) = p(t)` at every sample for every entry with `bᵢⱼ ≠ 0`.
pub fn is_homogeneous_realization(spec: &RealizationSpec, tol: f64) -> Result<bool> {
    let fam = spec
        .fam
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("homogeneity needs a symmetry family".into()))?;
    let b = spec.b.matrix();
    let n = spec.b.dim();
    for i in 0..n {
        for j in 0..n {
            if b[(i, j)].norm() <= tol {
                continue;
            }
            for k in 0..fam.len() {
                let p = fam.p(k);
                if (fam.xi(i, k) * fam.xi(j, k) - p).abs() > tol * p.abs().max(1.0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `λ₀ p(t₀)ⁿ` for `n` in the inclusive range, in increasing `n`.
pub fn spectrum_ladder(lambda0: C64, p_t0: f64, range: (i32, i32)) -> Result<Vec<C64>> {
    if !p_t0.is_finite() || p_t0 == 0.0 {
        return Err(Error::InvalidInput(format!("ladder ratio must be finite and nonzero, got {p_t0}")));
    }
    if p_t0 == 1.0 {
        return Err(Error::Degenerate("ladder ratio p = 1 gives a single point".into()));
    }
    let (a, b) = range;
    if b < a {
        return Ok(Vec::new());
    }
    if (b as i64 - a as i64) >= 1_000_000 {
        return Err(Error::InvalidInput("ladder range too long".into()));
    }
    Ok((a..=b).map(|n| lambda0 * p_t0.powi(n)).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SMatrix {
    #[serde(with = "crate::linalg::complex_serde")]
    pub z: C64,
    #[serde(rename = "S", with = "crate::linalg::matrix_serde")]
    pub s: CMatrix,
    /// `‖S*S − I‖`.
    pub unitarity_defect: f64,
    pub max_singular_value: f64,
    pub diagnostics: Vec<String>,
}

/// `S(z) = (I − 2izB)(I + 2izB)⁻¹`.
pub fn s_matrix(b: &CouplingMatrix, z: C64) -> Result<SMatrix> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite spectral parameter {z}")));
    }
    let n = b.dim();
    let id = CMatrix::identity(n, n);
    let k = b.matrix() * (I * z * 2.0);
    let inv = linalg::inverse(&(&id + &k), &format!("I + 2izB at z = {z}"))?;
    let s = (&id - &k) * inv;
    let unitarity_defect = linalg::norm(&(s.adjoint() * &s - &id));
    let max_singular_value = linalg::max_singular_value(&s);
    let hermitian = linalg::is_hermitian(b.matrix(), 1e-12);
    let mut diagnostics = Vec::new();
    if !hermitian {
        diagnostics.push("B is not Hermitian".into());
    } else if z.im == 0.0 {
        diagnostics.push(if unitarity_defect <= 1e-10 { "unitary" } else { "unitarity violated" }.into());
    } else if z.im > 0.0 {
        diagnostics.push(if max_singular_value <= 1.0 + 1e-10 { "contractive" } else { "not contractive" }.into());
    }
    Ok(SMatrix {
        z,
        s,
        unitarity_defect,
        max_singular_value,
        diagnostics,
    })
}
