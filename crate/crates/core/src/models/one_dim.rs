//! Zero-range model on the line with `h′ = (A₀ + I)⁻¹δ` and
//! `h″ = (A₀ + I)⁻¹δ′`.
//!
//! `U₀f(x) = f(−x)` and `U_t f(x) = √t f(tx)` for `t > 0`.

use std::f64::consts::PI;

use crate::error::Result;
use crate::linalg::{self, c, CMatrix, C64};
use crate::quad::{integrate_half_line, QuadConfig};
use crate::symmetry::SymmetryFamily;
use crate::weyl::SpectralModel;

pub fn h_prime(x: f64) -> f64 {
    0.5 * (-x.abs()).exp()
}

pub fn h_double_prime(x: f64) -> f64 {
    if x > 0.0 {
        -0.5 * (-x).exp()
    } else if x < 0.0 {
        0.5 * x.exp()
    } else {
        0.0
    }
}

pub(super) fn family(samples: &[f64]) -> Result<SymmetryFamily> {
    SymmetryFamily::from_fns(
        samples,
        |t| if t == 0.0 { 0.0 } else { 1.0 / t },
        |t| if t == 0.0 { 1.0 } else { t.powi(-2) },
        &[
            &|t: f64| if t == 0.0 { 1.0 } else { t.powf(-0.5) },
            &|t: f64| if t == 0.0 { -1.0 } else { t.powf(-1.5) },
        ],
    )
}

pub(super) fn gram_closed(t: f64) -> CMatrix {
    if t == 0.0 {
        return linalg::real_matrix(&[&[0.25, 0.0], &[0.0, -0.25]]);
    }
    let g = t.sqrt() / (2.0 * (1.0 + t));
    linalg::real_matrix(&[&[g, 0.0], &[0.0, g]])
}

fn apply_u(t: f64, f: fn(f64) -> f64, x: f64) -> f64 {
    if t == 0.0 {
        f(-x)
    } else {
        t.sqrt() * f(t * x)
    }
}

/// `G(t)ᵢⱼ = (hⱼ, U_t hᵢ)` by quadrature over the two half-lines.
pub fn gram_quadrature(t: f64) -> Result<CMatrix> {
    let hs: [fn(f64) -> f64; 2] = [h_prime, h_double_prime];
    let cfg = QuadConfig::with_rel_tol(1e-13);
    let mut g = CMatrix::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            let (hi, hj) = (hs[i], hs[j]);
            let f = |x: f64| c(hj(x) * apply_u(t, hi, x) + hj(-x) * apply_u(t, hi, -x), 0.0);
            g[(i, j)] = integrate_half_line(f, cfg)?.value;
        }
    }
    Ok(g)
}

/// Resolvent data from `ĥ′(y) = (2π)^{−1/2}/(1 + y²)` and
/// `|ĥ″(y)| = (2π)^{−1/2}|y|/(1 + y²)`.
#[derive(Debug, Clone, Copy)]
pub struct OneDimSpectral {
    pub quad: QuadConfig,
}

impl Default for OneDimSpectral {
    fn default() -> Self {
        OneDimSpectral {
            quad: QuadConfig::with_rel_tol(1e-12),
        }
    }
}

impl SpectralModel for OneDimSpectral {
    fn channels(&self) -> usize {
        2
    }

    fn overlap(&self) -> CMatrix {
        linalg::real_matrix(&[&[0.25, 0.0], &[0.0, 0.25]])
    }

    fn resolvent_gram(&self, z: C64) -> Result<CMatrix> {
        let e11 = integrate_half_line(|y| 1.0 / ((1.0 + y * y).powi(2) * (y * y - z)), self.quad)?.value / PI;
        let e22 =
            integrate_half_line(|y| c(y * y, 0.0) / ((1.0 + y * y).powi(2) * (y * y - z)), self.quad)?.value / PI;
        Ok(linalg::diag(&[e11, e22]))
    }

    fn psi_in_h_minus1(&self) -> Vec<bool> {
        vec![true, false]
    }

    fn closed_form_m(&self, z: C64) -> Option<Result<CMatrix>> {
        let k = linalg::sqrt_neg(z);
        Some(Ok(linalg::diag(&[k * -2.0, 2.0 / k])))
    }
}
