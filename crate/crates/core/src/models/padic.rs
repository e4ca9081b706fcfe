//! Point interaction for the Vladimirov operator `D^α` on `L₂(ℚ_p)`.
//!
//! In the wavelet basis `δ` has coefficients `p^{−N/2}` on the eigenspaces
//! with eigenvalues `λ_N = p^{α(1−N)}` (one normalized wavelet per level
//! carries the mass), and `U_{p^m}` shifts the level index by `m`. All
//! quantities below are two-sided series over `N ∈ ℤ` with weights
//! `(p − 1) p^{−N}`.

use crate::error::Result;
use crate::linalg::{c, CMatrix, C64};
use crate::weyl::SpectralModel;

use super::series::{bilateral_sum, SeriesConfig};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

#[derive(Debug, Clone, Copy)]
pub struct PAdicSpectral {
    p: f64,
    alpha: f64,
    series: SeriesConfig,
    gram_series: SeriesConfig,
    norm2: f64,
}

impl PAdicSpectral {
    pub fn new(p: u64, alpha: f64) -> Result<Self> {
        let mut m = PAdicSpectral {
            p: p as f64,
            alpha,
            series: SeriesConfig::default(),
            gram_series: SeriesConfig {
                max_index: 4000,
                ..SeriesConfig::default()
            },
            norm2: 0.0,
        };
        m.norm2 = m.gram(0)?;
        Ok(m)
    }

    pub fn lambda(&self, n: i64) -> f64 {
        self.p.powf(self.alpha * (1 - n) as f64)
    }

    fn weight(&self, n: i64) -> f64 {
        (self.p - 1.0) * self.p.powf(-(n as f64))
    }

    /// `(h, U_{p^m} h) = (p − 1) p^{m/2} Σ_N p^{−N} / ((λ_N + 1)(λ_{N−m} + 1))`.
    pub fn gram(&self, m: i32) -> Result<f64> {
        let m = i64::from(m);
        let s = bilateral_sum(
            |n| c(self.weight(n) / ((self.lambda(n) + 1.0) * (self.lambda(n - m) + 1.0)), 0.0),
            self.gram_series,
        )?;
        Ok(self.p.powf(m as f64 / 2.0) * s.re)
    }

    /// `‖h‖²`.
    pub fn norm2(&self) -> f64 {
        self.norm2
    }

    /// Closed-form admissible coefficient: `(p − 1) Σ p^{−N}/(λ_N + 1)` for
    /// `α > 1`, `−(p − 1) Σ p^{−N}/(λ_N(λ_N + 1))` for `1/2 < α < 1`, and none
    /// at `α = 1`.
    pub fn predicted_r(&self) -> Result<Option<f64>> {
        if self.alpha > 1.0 {
            let s = bilateral_sum(|n| c(self.weight(n) / (self.lambda(n) + 1.0), 0.0), self.gram_series)?;
            Ok(Some(s.re))
        } else if self.alpha < 1.0 {
            let s = bilateral_sum(
                |n| {
                    let l = self.lambda(n);
                    c(self.weight(n) / (l * (l + 1.0)), 0.0)
                },
                self.gram_series,
            )?;
            Ok(Some(-s.re))
        } else {
            Ok(None)
        }
    }
}

impl SpectralModel for PAdicSpectral {
    fn channels(&self) -> usize {
        1
    }

    fn overlap(&self) -> CMatrix {
        CMatrix::from_element(1, 1, c(self.norm2, 0.0))
    }

    fn resolvent_gram(&self, z: C64) -> Result<CMatrix> {
        let s = bilateral_sum(
            |n| {
                let l = self.lambda(n);
                self.weight(n) / ((l + 1.0).powi(2) * (l - z))
            },
            self.series,
        )?;
        Ok(CMatrix::from_element(1, 1, s))
    }

    fn psi_in_h_minus1(&self) -> Vec<bool> {
        vec![self.alpha > 1.0]
    }

    fn closed_form_m(&self, z: C64) -> Option<Result<CMatrix>> {
        let sum = if self.alpha > 1.0 {
            bilateral_sum(|n| self.weight(n) / (self.lambda(n) - z), self.series)
        } else if self.alpha < 1.0 {
            bilateral_sum(
                |n| {
                    let l = self.lambda(n);
                    self.weight(n) * z / (l * (l - z))
                },
                self.series,
            )
        } else {
            return None;
        };
        Some(sum.map(|s| CMatrix::from_element(1, 1, -1.0 / s)))
    }

    fn in_spectrum(&self, z: C64) -> bool {
        if z.im != 0.0 || z.re < 0.0 {
            return false;
        }
        if z.re == 0.0 {
            return true;
        }
        let n = 1.0 - z.re.ln() / (self.alpha * self.p.ln());
        (n - n.round()).abs() < 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn gram_is_reciprocal_symmetric() {
        let m = PAdicSpectral::new(3, 1.5).unwrap();
        for k in 1..=3 {
            let (a, b) = (m.gram(k).unwrap(), m.gram(-k).unwrap());
            assert!((a - b).abs() <= 1e-14 * a.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn cauchy_schwarz_on_gram() {
        let m = PAdicSpectral::new(2, 0.8).unwrap();
        let n0 = m.norm2();
        for k in -3..=3 {
            assert!(m.gram(k).unwrap() <= n0 * (1.0 + 1e-14));
        }
    }

    #[test]
    fn eigenvalues_are_in_spectrum() {
        let m = PAdicSpectral::new(2, 1.5).unwrap();
        assert!(m.in_spectrum(c(m.lambda(3), 0.0)));
        assert!(!m.in_spectrum(c(1.1 * m.lambda(3), 0.0)));
        assert!(!m.in_spectrum(c(-1.0, 0.0)));
    }
}
