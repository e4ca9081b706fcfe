//! Weyl functions built from spectral data, the homogeneity identity they
//! satisfy, and eigenvalue search through the Krein formula.
//!
//! With `hⱼ = (A₀ + I)⁻¹ψⱼ` the defect elements at `z` are
//! `f_z = hⱼ + (z + 1)(A₀ − z)⁻¹hⱼ`, which gives
//!
//! ```text
//! M̂(z)ᵢⱼ = (z + 1) [ (hⱼ, hᵢ) + (z + 1) E(z)ᵢⱼ ],     M(z) = −(R + M̂(z))⁻¹.
//! ```
//!
//! For orthonormal channels the overlap `(hⱼ, hᵢ)` is the identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64};
use crate::symmetry::SymmetryFamily;
use crate::triplet::{AdmissibleMatrix, CouplingMatrix};

/// Spectral data of an unperturbed operator and its defect elements.
pub trait SpectralModel: Send + Sync {
    fn channels(&self) -> usize;

    /// `(hⱼ, hᵢ)`.
    fn overlap(&self) -> CMatrix;

    /// `E(z)ᵢⱼ = ((A₀ − z)⁻¹hⱼ, hᵢ)`.
    fn resolvent_gram(&self, z: C64) -> Result<CMatrix>;

    fn psi_in_h_minus1(&self) -> Vec<bool>;

    /// Independent closed form of `M`, where one is known.
    fn closed_form_m(&self, _z: C64) -> Option<Result<CMatrix>> {
        None
    }

    /// Whether `z` lies in the spectrum of `A₀`. The default assumes
    /// `σ(A₀) = [0, ∞)`.
    fn in_spectrum(&self, z: C64) -> bool {
        z.im == 0.0 && z.re >= 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylEvaluation {
    #[serde(with = "crate::linalg::complex_serde")]
    pub z: C64,
    #[serde(rename = "M", with = "crate::linalg::matrix_serde")]
    pub m: CMatrix,
    /// `‖M − M_closed‖ / ‖M‖` when the model carries a closed form.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closed_form_discrepancy: Option<f64>,
}

fn check_overlap(model: &dyn SpectralModel) -> Result<CMatrix> {
    let g = model.overlap();
    let n = linalg::check_square(&g)?;
    linalg::check_dim(model.channels(), n)?;
    if !linalg::is_hermitian(&g, 1e-12) {
        return Err(Error::Unsupported(format!(
            "overlap is not Hermitian (defect {:.3e})",
            linalg::hermitian_defect(&g)
        )));
    }
    let min = linalg::hermitian_eigenvalues(&g).first().copied().unwrap_or(0.0);
    if min <= 1e-14 * linalg::norm(&g).max(1e-300) {
        return Err(Error::Unsupported(format!("overlap is not positive definite (λ_min = {min:.3e})")));
    }
    Ok(g)
}

fn check_z(model: &dyn SpectralModel, z: C64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite spectral parameter {z}")));
    }
    if model.in_spectrum(z) {
        return Err(Error::InvalidInput(format!("z = {z} lies in the spectrum of A₀")));
    }
    Ok(())
}

pub fn m_hat(model: &dyn SpectralModel, z: C64) -> Result<CMatrix> {
    let g = check_overlap(model)?;
    check_z(model, z)?;
    let w = z + 1.0;
    if w == c(0.0, 0.0) {
        return Ok(CMatrix::zeros(g.nrows(), g.ncols()));
    }
    let e = model.resolvent_gram(z)?;
    linalg::check_dim(g.nrows(), linalg::check_square(&e)?)?;
    Ok((g + e * w) * w)
}

/// `−(R + M̂(z))⁻¹`, without the closed-form cross-check.
pub fn weyl_from_data(model: &dyn SpectralModel, r: &AdmissibleMatrix, z: C64) -> Result<CMatrix> {
    linalg::check_dim(model.channels(), r.dim())?;
    let sum = r.matrix() + m_hat(model, z)?;
    linalg::inverse(&sum, &format!("R + M̂(z) at z = {z} (pole of M)")).map(|inv| -inv)
}

pub fn weyl_m(model: &dyn SpectralModel, r: &AdmissibleMatrix, z: C64) -> Result<WeylEvaluation> {
    let m = weyl_from_data(model, r, z)?;
    let closed_form_discrepancy = match model.closed_form_m(z) {
        Some(closed) => {
            let closed = closed?;
            Some(linalg::norm(&(&m - closed)) / linalg::norm(&m).max(1e-300))
        }
        None => None,
    };
    Ok(WeylEvaluation {
        z,
        m,
        closed_form_discrepancy,
    })
}

/// `‖p(t)M(z) − Ξ(t)M(p(t)z)Ξ(t)‖ / ‖M(z)‖` at sample index `k`.
pub fn check_weyl_homogeneity<F>(m: F, fam: &SymmetryFamily, k: usize, z: C64) -> Result<f64>
where
    F: Fn(C64) -> Result<CMatrix>,
{
    if k >= fam.len() {
        return Err(Error::InvalidInput(format!("sample index {k} out of range")));
    }
    let p = fam.p(k);
    let xi = fam.xi_matrix(k);
    let mz = m(z)?;
    let mpz = m(z * p)?;
    linalg::check_dim(xi.nrows(), mz.nrows())?;
    let diff = &mz * c(p, 0.0) - &xi * mpz * &xi;
    let scale = linalg::norm(&mz);
    if scale == 0.0 {
        return Ok(linalg::norm(&diff));
    }
    Ok(linalg::norm(&diff) / scale)
}

/// `(B − M(z))⁻¹`.
pub fn krein_correction(m_at_z: &CMatrix, b: &CouplingMatrix) -> Result<CMatrix> {
    linalg::check_dim(b.dim(), linalg::check_square(m_at_z)?)?;
    linalg::inverse(&(b.matrix() - m_at_z), "B − M(z) (z is an eigenvalue of A_B)")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootScan {
    /// Number of log-spaced scan points across the interval.
    pub points: usize,
    /// Absolute bisection tolerance on `x`.
    pub tol: f64,
}

impl Default for RootScan {
    fn default() -> Self {
        RootScan { points: 4000, tol: 1e-12 }
    }
}

fn det_real(m: &dyn Fn(f64) -> Result<CMatrix>, b: &CMatrix, x: f64) -> Option<f64> {
    let mx = m(x).ok()?;
    let d = linalg::determinant(&(b - mx)).re;
    d.is_finite().then_some(d)
}

/// Sign-change roots of `det(B − M(x))` on `[lo, hi] ⊂ (−∞, 0)`.
///
/// Scan points are log-spaced in `|x|`. Sign changes through a pole of `M`
/// are discarded. Roots of even multiplicity are invisible to the scan.
pub fn find_negative_roots(
    m: &dyn Fn(f64) -> Result<CMatrix>,
    b: &CouplingMatrix,
    interval: (f64, f64),
    scan: RootScan,
) -> Result<Vec<f64>> {
    let (lo, hi) = interval;
    if !(lo < hi && hi < 0.0 && lo.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "search interval ({lo}, {hi}) must satisfy lo < hi < 0"
        )));
    }
    if !linalg::is_hermitian(b.matrix(), 1e-12) {
        return Err(Error::NotHermitian {
            defect: linalg::hermitian_defect(b.matrix()),
        });
    }
    if scan.points < 2 || !(scan.tol > 0.0) {
        return Err(Error::InvalidInput("root scan needs ≥ 2 points and tol > 0".into()));
    }
    let bm = b.matrix().clone();
    let (la, lb) = (hi.abs().ln(), lo.abs().ln());
    let xs: Vec<f64> = (0..scan.points)
        .map(|k| {
            if k == 0 {
                hi
            } else if k + 1 == scan.points {
                lo
            } else {
                -(la + (lb - la) * k as f64 / (scan.points - 1) as f64).exp()
            }
        })
        .collect();
    let dets: Vec<Option<f64>> = xs.iter().map(|&x| det_real(m, &bm, x)).collect();

    let mut roots = Vec::new();
    for k in 0..xs.len() - 1 {
        let (Some(d0), Some(d1)) = (dets[k], dets[k + 1]) else { continue };
        if d0 == 0.0 {
            roots.push(xs[k]);
            continue;
        }
        if d0.signum() == d1.signum() || d1 == 0.0 {
            continue;
        }
        // xs decreases with k; keep (a, b) with a < b.
        let (mut a, mut fa, mut bb) = (xs[k + 1], d1, xs[k]);
        let bound = d0.abs().max(d1.abs());
        let mut ok = true;
        for _ in 0..200 {
            if bb - a <= scan.tol {
                break;
            }
            let mid = 0.5 * (a + bb);
            let Some(fm) = det_real(m, &bm, mid) else {
                ok = false;
                break;
            };
            if fm == 0.0 {
                a = mid;
                bb = mid;
                break;
            }
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                bb = mid;
            }
        }
        let x = 0.5 * (a + bb);
        if ok && det_real(m, &bm, x).is_some_and(|d| d.abs() <= bound) {
            roots.push(x);
        }
    }
    if let Some(d) = dets.last().copied().flatten() {
        if d == 0.0 {
            roots.push(lo);
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= scan.tol);
    Ok(roots)
}

/// Eigenvalues of `A_B` in `[lo, hi] ⊂ (−∞, 0)` from the model's spectral data.
pub fn find_negative_eigenvalues(
    model: &dyn SpectralModel,
    r: &AdmissibleMatrix,
    b: &CouplingMatrix,
    interval: (f64, f64),
    scan: RootScan,
) -> Result<Vec<f64>> {
    linalg::check_dim(model.channels(), b.dim())?;
    find_negative_roots(&|x| weyl_from_data(model, r, c(x, 0.0)), b, interval, scan)
}
