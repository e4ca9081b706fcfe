//! One point interaction in `ℝᵈ` with `ĥ(y) = (2π)^{−d/2}/(1 + |y|²)` and
//! `U_t f(x) = t^{d/2} f(tx)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64};
use crate::quad::{integrate_half_line, QuadConfig};
use crate::weyl::SpectralModel;

/// Surface measure of the unit sphere `S^{d−1}`.
fn sphere(d: u32) -> f64 {
    match d {
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 4.0 * PI,
    }
}

fn radial_prefactor(d: u32) -> f64 {
    sphere(d) / (2.0 * PI).powi(d as i32)
}

fn check_d(d: u32) -> Result<()> {
    if (1..=3).contains(&d) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("dimension d must be 1, 2 or 3, got {d}")))
    }
}

/// `(h, U_t h) = t^{−d/2} (2π)^{−d} |S^{d−1}| ∫₀^∞ r^{d−1} / ((1 + r²)(1 + r²/t²)) dr`.
pub fn point_gram(d: u32, t: f64) -> Result<f64> {
    check_d(d)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("scaling parameter must be positive, got {t}")));
    }
    let t2 = t * t;
    let cfg = QuadConfig::with_rel_tol(1e-13);
    let v = integrate_half_line(
        |r| c(t2 * r.powi(d as i32 - 1) / ((1.0 + r * r) * (t2 + r * r)), 0.0),
        cfg,
    )?;
    Ok(t.powf(-f64::from(d) / 2.0) * radial_prefactor(d) * v.value.re)
}

#[derive(Debug, Clone, Copy)]
pub struct PointSpectral {
    d: u32,
    norm2: f64,
    quad: QuadConfig,
}

impl PointSpectral {
    pub fn new(d: u32) -> Result<Self> {
        check_d(d)?;
        let quad = QuadConfig::with_rel_tol(1e-12);
        let v = integrate_half_line(|r| c(r.powi(d as i32 - 1) / (1.0 + r * r).powi(2), 0.0), QuadConfig::with_rel_tol(1e-13))?;
        Ok(PointSpectral {
            d,
            norm2: radial_prefactor(d) * v.value.re,
            quad,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }
}

impl SpectralModel for PointSpectral {
    fn channels(&self) -> usize {
        1
    }

    fn overlap(&self) -> CMatrix {
        CMatrix::from_element(1, 1, c(self.norm2, 0.0))
    }

    fn resolvent_gram(&self, z: C64) -> Result<CMatrix> {
        let d = self.d as i32;
        let v = integrate_half_line(|r| r.powi(d - 1) / ((1.0 + r * r).powi(2) * (r * r - z)), self.quad)?;
        Ok(CMatrix::from_element(1, 1, v.value * radial_prefactor(self.d)))
    }

    fn psi_in_h_minus1(&self) -> Vec<bool> {
        vec![self.d == 1]
    }

    fn closed_form_m(&self, z: C64) -> Option<Result<CMatrix>> {
        let k = linalg::sqrt_neg(z);
        match self.d {
            1 => Some(Ok(CMatrix::from_element(1, 1, k * -2.0))),
            3 => Some(Ok(CMatrix::from_element(1, 1, 4.0 * PI / k))),
            _ => None,
        }
    }
}
