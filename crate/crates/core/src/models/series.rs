//! Adaptive summation of two-sided series `Σ_{N∈ℤ} a_N`.

use crate::error::{Error, Result};
use crate::linalg::C64;

#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    /// Stop a direction once a term falls below `rel_tol · |partial sum|`
    /// and terms are decreasing.
    pub rel_tol: f64,
    /// Largest `|N|` visited before giving up.
    pub max_index: i64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            rel_tol: 1e-15,
            max_index: 400,
        }
    }
}

pub fn bilateral_sum(term: impl Fn(i64) -> C64, cfg: SeriesConfig) -> Result<C64> {
    let t0 = term(0);
    let mut sum = t0;
    for dir in [1i64, -1] {
        let mut prev = t0.norm();
        let mut n = dir;
        loop {
            if n.abs() > cfg.max_index {
                return Err(Error::SeriesDiverged {
                    terms: cfg.max_index as usize,
                });
            }
            let a = term(n);
            if !(a.re.is_finite() && a.im.is_finite()) {
                return Err(Error::SeriesDiverged { terms: n.unsigned_abs() as usize });
            }
            sum += a;
            let mag = a.norm();
            if mag <= prev && mag <= cfg.rel_tol * sum.norm() {
                break;
            }
            prev = mag;
            n += dir;
        }
    }
    if sum.re.is_finite() && sum.im.is_finite() {
        Ok(sum)
    } else {
        Err(Error::SeriesDiverged { terms: 0 })
    }
}
