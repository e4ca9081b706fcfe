//! `−Δ` in `ℝ³` with `t^{−α}`-invariant functionals, `1 < α < 2`.
//!
//! `ĥⱼ(y) = mⱼ(ω) / (|y|^{3/2−α}(|y|² + 1))`, so every radial integral
//! factors into an angular Gram matrix `(mᵢ, mⱼ)` times a one-dimensional
//! integral in `|y|`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64};
use crate::quad::{integrate_log_half_line, QuadConfig};
use crate::weyl::SpectralModel;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 1.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("alpha must lie in (1, 2), got {alpha}")))
    }
}

fn quad() -> QuadConfig {
    QuadConfig::with_rel_tol(1e-13)
}

/// `c_α = ∫₀^∞ y^{3−2α}/(y² + 1) dy`.
pub fn c_alpha(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(integrate_log_half_line(|y| c(y.powf(3.0 - 2.0 * alpha) / (y * y + 1.0), 0.0), quad())?.value.re)
}

/// `d_α = ∫₀^∞ y^{2α−1}/(y² + 1)² dy`, the radial part of `‖hⱼ‖²`.
pub fn d_alpha(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(integrate_log_half_line(|y| c(y.powf(2.0 * alpha - 1.0) / (y * y + 1.0).powi(2), 0.0), quad())?.value.re)
}

/// `β_α = c_α / d_α`.
pub fn beta_alpha(alpha: f64) -> Result<f64> {
    Ok(c_alpha(alpha)? / d_alpha(alpha)?)
}

/// `lim_{t→1} (t^α − t^{2−α})/(t² − 1) = α − 1`.
pub fn gram_limit_at_one(alpha: f64) -> f64 {
    alpha - 1.0
}

fn coefficient(alpha: f64, t: f64) -> f64 {
    if t == 1.0 {
        gram_limit_at_one(alpha)
    } else {
        (t.powf(alpha) - t.powf(2.0 - alpha)) / (t * t - 1.0)
    }
}

/// `c_α (t^α − t^{2−α})/(t² − 1)`, the scalar factor of `G(t)`.
pub(super) fn gram_closed(alpha: f64, c_a: f64, t: f64) -> C64 {
    c(c_a * coefficient(alpha, t), 0.0)
}

/// Scalar factor of `G(t)` by quadrature of
/// `∫₀^∞ t^{2−α} y^{2α−1} / ((y² + t²)(y² + 1)) dy`.
pub fn scaling_gram_quadrature(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("scaling parameter must be positive, got {t}")));
    }
    let v = integrate_log_half_line(
        |y| c(t.powf(2.0 - alpha) * y.powf(2.0 * alpha - 1.0) / ((y * y + t * t) * (y * y + 1.0)), 0.0),
        quad(),
    )?;
    Ok(v.value.re)
}

#[derive(Debug, Clone)]
pub struct ScalingSpectral {
    alpha: f64,
    m_gram: CMatrix,
    c_a: f64,
    d_a: f64,
    quad: QuadConfig,
}

impl ScalingSpectral {
    pub fn new(alpha: f64, m_gram: CMatrix) -> Result<Self> {
        linalg::check_square(&m_gram)?;
        Ok(ScalingSpectral {
            alpha,
            m_gram,
            c_a: c_alpha(alpha)?,
            d_a: d_alpha(alpha)?,
            quad: QuadConfig::with_rel_tol(1e-12),
        })
    }

    /// `K(z) = ∫₀^∞ y^{2α−1} / ((y² + 1)²(y² − z)) dy` by quadrature.
    pub fn radial_resolvent(&self, z: C64) -> Result<C64> {
        let a = self.alpha;
        Ok(integrate_log_half_line(|y| y.powf(2.0 * a - 1.0) / ((y * y + 1.0).powi(2) * (y * y - z)), self.quad)?.value)
    }

    /// `K(z)` from the Mellin transform: with `κ = √(−z)`,
    /// `K = π/(2 sin πα) [−C + B(1 − α) + C κ^{2α−2}]`, `B = 1/(κ² − 1)`,
    /// `C = B²`. Returns `None` near the removable point `κ = 1`.
    pub fn radial_resolvent_closed(&self, z: C64) -> Option<C64> {
        let k = linalg::sqrt_neg(z);
        let k2m1 = k * k - 1.0;
        if k2m1.norm() < 1e-3 {
            return None;
        }
        let b = 1.0 / k2m1;
        let cc = b * b;
        let pi_factor = PI / (2.0 * (PI * self.alpha).sin());
        Some((-cc + b * (1.0 - self.alpha) + cc * k.powf(2.0 * self.alpha - 2.0)) * pi_factor)
    }
}

impl SpectralModel for ScalingSpectral {
    fn channels(&self) -> usize {
        self.m_gram.nrows()
    }

    fn overlap(&self) -> CMatrix {
        &self.m_gram * c(self.d_a, 0.0)
    }

    fn resolvent_gram(&self, z: C64) -> Result<CMatrix> {
        Ok(&self.m_gram * self.radial_resolvent(z)?)
    }

    fn psi_in_h_minus1(&self) -> Vec<bool> {
        vec![false; self.channels()]
    }

    /// Uses the Mellin form of `K`, switching to quadrature within `10⁻³` of
    /// its removable point.
    fn closed_form_m(&self, z: C64) -> Option<Result<CMatrix>> {
        let k = match self.radial_resolvent_closed(z) {
            Some(k) => k,
            None => match self.radial_resolvent(z) {
                Ok(k) => k,
                Err(e) => return Some(Err(e)),
            },
        };
        let w = z + 1.0;
        let m_hat = &self.m_gram * ((c(self.d_a, 0.0) + w * k) * w);
        let r = &self.m_gram * c(-self.c_a, 0.0);
        Some(linalg::inverse(&(r + m_hat), "R + M̂(z)").map(|inv| -inv))
    }
}
