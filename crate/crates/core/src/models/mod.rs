//! Concrete model backends: symmetry family, Gram data, spectral data and
//! membership flags for each supported operator.

mod one_dim;
mod padic;
mod point;
mod scaling;
mod series;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::admissibility::{self, GramFunction, SolutionClass};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::symmetry::SymmetryFamily;
use crate::weyl::SpectralModel;

pub use one_dim::{gram_quadrature as one_dim_gram_quadrature, h_double_prime, h_prime, OneDimSpectral};
pub use padic::{is_prime, PAdicSpectral};
pub use point::{point_gram, PointSpectral};
pub use scaling::{beta_alpha, c_alpha, d_alpha, gram_limit_at_one, scaling_gram_quadrature, ScalingSpectral};
pub use series::{bilateral_sum, SeriesConfig};

/// Geometric sample grid `{2^k : k = −3..3}`.
pub fn default_samples() -> Vec<f64> {
    (-3..=3).map(|k| 2f64.powi(k)).collect()
}

/// Serializable model description, tagged by `"kind"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ModelSpec {
    /// `−d²/dx² + b₁₁δ + b₂₂δ′`-type zero-range model on the line, with the
    /// parity operator at `t = 0` and scalings for `t > 0`.
    OneDimDeltaDeltaPrime,
    /// One point interaction in `ℝᵈ`, `d ∈ {1, 2, 3}`.
    PointInteractionRd { d: u32 },
    /// Point interaction for the Vladimirov operator `D^α` on `ℚ_p`.
    PAdicVladimirov { p: u64, alpha: f64 },
    /// `−Δ` in `ℝ³` perturbed by `t^{−α}`-invariant functionals.
    /// `m_gram` defaults to one channel normalized so `‖h‖ = 1`.
    ScalingInvariant3D {
        alpha: f64,
        #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::linalg::opt_matrix_serde")]
        m_gram: Option<CMatrix>,
    },
    /// User-supplied family and Gram data; no spectral backend.
    Tabulated {
        family: SymmetryFamily,
        gram: GramFunction,
        psi_in_h_minus1: Vec<bool>,
    },
}

impl ModelSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpec::OneDimDeltaDeltaPrime => "OneDimDeltaDeltaPrime",
            ModelSpec::PointInteractionRd { .. } => "PointInteractionRd",
            ModelSpec::PAdicVladimirov { .. } => "PAdicVladimirov",
            ModelSpec::ScalingInvariant3D { .. } => "ScalingInvariant3D",
            ModelSpec::Tabulated { .. } => "Tabulated",
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("model JSON: {e}")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KindInfo {
    pub kind: &'static str,
    pub parameters: &'static str,
    pub channels: &'static str,
    pub description: &'static str,
}

pub fn model_kinds() -> Vec<KindInfo> {
    vec![
        KindInfo {
            kind: "OneDimDeltaDeltaPrime",
            parameters: "",
            channels: "2",
            description: "δ and δ′ interactions at the origin of the line; parity plus scalings √t f(tx)",
        },
        KindInfo {
            kind: "PointInteractionRd",
            parameters: "d ∈ {1, 2, 3}",
            channels: "1",
            description: "δ interaction in ℝᵈ under scalings t^{d/2} f(tx)",
        },
        KindInfo {
            kind: "PAdicVladimirov",
            parameters: "prime p, alpha > 1/2",
            channels: "1",
            description: "δ interaction for D^α on ℚ_p, samples t = p^m for m = −3..3",
        },
        KindInfo {
            kind: "ScalingInvariant3D",
            parameters: "alpha ∈ (1, 2), optional m_gram (Hermitian PSD)",
            channels: "n = size of m_gram",
            description: "−Δ in ℝ³ with t^{−α}-invariant functionals ψ(m_j, α)",
        },
        KindInfo {
            kind: "Tabulated",
            parameters: "family, gram, psi_in_h_minus1",
            channels: "from the data",
            description: "user-supplied symmetry family and Gram samples",
        },
    ]
}

/// A built model: the family and Gram pair for the admissibility solver and
/// optionally spectral data for Weyl-function work.
#[derive(Clone)]
pub struct Model {
    pub spec: ModelSpec,
    pub family: SymmetryFamily,
    pub gram: GramFunction,
    pub psi_in_h_minus1: Vec<bool>,
    /// Admissible matrix known in closed form, for cross-checks.
    pub predicted_r: Option<CMatrix>,
    pub spectral: Option<Arc<dyn SpectralModel>>,
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Model")
            .field("spec", &self.spec)
            .field("channels", &self.family.channels())
            .field("samples", &self.family.samples())
            .field("psi_in_h_minus1", &self.psi_in_h_minus1)
            .field("spectral", &self.spectral.is_some())
            .finish()
    }
}

impl Model {
    pub fn build(spec: &ModelSpec) -> Result<Model> {
        match spec {
            ModelSpec::OneDimDeltaDeltaPrime => build_one_dim_model(),
            ModelSpec::PointInteractionRd { d } => build_point_interaction(*d),
            ModelSpec::PAdicVladimirov { p, alpha } => build_padic_model(*p, *alpha),
            ModelSpec::ScalingInvariant3D { alpha, m_gram } => build_scaling_invariant_3d(*alpha, m_gram.clone()),
            ModelSpec::Tabulated {
                family,
                gram,
                psi_in_h_minus1,
            } => build_tabulated(family.clone(), gram.clone(), psi_in_h_minus1.clone()),
        }
    }

    pub fn channels(&self) -> usize {
        self.family.channels()
    }

    /// Whether every channel is `H₋₁`-regular; selects the Friedrichs label.
    pub fn all_psi_in_h_minus1(&self) -> bool {
        self.psi_in_h_minus1.iter().all(|&b| b)
    }

    pub fn solve_r(&self, tol: f64) -> Result<SolutionClass> {
        admissibility::solve_homogeneous_r(&self.family, &self.gram, tol)
    }

    pub fn spectral(&self) -> Result<&dyn SpectralModel> {
        self.spectral
            .as_deref()
            .ok_or_else(|| Error::Unsupported(format!("{} has no spectral backend", self.spec.kind())))
    }
}

pub fn build_one_dim_model() -> Result<Model> {
    let mut samples = vec![0.0];
    samples.extend(default_samples());
    let family = one_dim::family(&samples)?;
    let gram = GramFunction::from_fn(&samples, |t| Ok(one_dim::gram_closed(t)))?;
    Ok(Model {
        spec: ModelSpec::OneDimDeltaDeltaPrime,
        family,
        gram,
        psi_in_h_minus1: vec![true, false],
        predicted_r: Some(linalg::real_matrix(&[&[0.5, 0.0], &[0.0, -0.5]])),
        spectral: Some(Arc::new(OneDimSpectral::default())),
    })
}

pub fn build_point_interaction(d: u32) -> Result<Model> {
    if !(1..=3).contains(&d) {
        return Err(Error::InvalidInput(format!("dimension d must be 1, 2 or 3, got {d}")));
    }
    let samples = default_samples();
    let half = f64::from(d) / 2.0;
    let family = SymmetryFamily::from_fns(&samples, |t| 1.0 / t, |t| t.powi(-2), &[&|t: f64| t.powf(-half)])?;
    let gram = GramFunction::from_fn(&samples, |t| Ok(CMatrix::from_element(1, 1, point_gram(d, t)?.into())))?;
    Ok(Model {
        spec: ModelSpec::PointInteractionRd { d },
        family,
        gram,
        psi_in_h_minus1: vec![d == 1],
        predicted_r: None,
        spectral: Some(Arc::new(PointSpectral::new(d)?)),
    })
}

pub fn build_padic_model(p: u64, alpha: f64) -> Result<Model> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} is not prime")));
    }
    if !(alpha.is_finite() && alpha > 0.5) {
        return Err(Error::InvalidInput(format!("alpha must exceed 1/2, got {alpha}")));
    }
    let pf = p as f64;
    let samples: Vec<f64> = (-3..=3).map(|m| pf.powi(m)).collect();
    let family = SymmetryFamily::from_fns(&samples, |t| 1.0 / t, |t| t.powf(alpha), &[&|t: f64| t.sqrt()])?;
    let backend = PAdicSpectral::new(p, alpha)?;
    let gram = GramFunction::new(
        samples.clone(),
        (-3..=3)
            .map(|m| backend.gram(m).map(|g| CMatrix::from_element(1, 1, g.into())))
            .collect::<Result<_>>()?,
    )?;
    let predicted_r = backend.predicted_r()?.map(|r| CMatrix::from_element(1, 1, r.into()));
    Ok(Model {
        spec: ModelSpec::PAdicVladimirov { p, alpha },
        family,
        gram,
        psi_in_h_minus1: vec![alpha > 1.0],
        predicted_r,
        spectral: Some(Arc::new(backend)),
    })
}

pub fn build_scaling_invariant_3d(alpha: f64, m_gram: Option<CMatrix>) -> Result<Model> {
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(Error::InvalidInput(format!("alpha must lie in (1, 2), got {alpha}")));
    }
    let d = d_alpha(alpha)?;
    let explicit = m_gram.is_some();
    let m_gram = match m_gram {
        Some(m) => m,
        None => CMatrix::from_element(1, 1, (1.0 / d).into()),
    };
    let n = linalg::check_square(&m_gram)?;
    if n == 0 {
        return Err(Error::InvalidInput("m_gram must be nonempty".into()));
    }
    if !linalg::is_hermitian(&m_gram, 1e-12) {
        return Err(Error::NotHermitian {
            defect: linalg::hermitian_defect(&m_gram),
        });
    }
    let low = linalg::hermitian_eigenvalues(&m_gram)[0];
    if low < -1e-12 * linalg::norm(&m_gram) {
        return Err(Error::InvalidInput(format!("m_gram is not positive semidefinite (λ_min = {low:.3e})")));
    }
    let samples = default_samples();
    let xis: Vec<Box<dyn Fn(f64) -> f64>> = (0..n).map(|_| Box::new(move |t: f64| t.powf(-alpha)) as Box<_>).collect();
    let xi_refs: Vec<&dyn Fn(f64) -> f64> = xis.iter().map(|b| b.as_ref()).collect();
    let family = SymmetryFamily::from_fns(&samples, |t| 1.0 / t, |t| t.powi(-2), &xi_refs)?;
    let c = c_alpha(alpha)?;
    let gram = GramFunction::from_fn(&samples, |t| Ok(&m_gram * scaling::gram_closed(alpha, c, t)))?;
    let spec = ModelSpec::ScalingInvariant3D {
        alpha,
        m_gram: explicit.then(|| m_gram.clone()),
    };
    Ok(Model {
        spec,
        family,
        gram,
        psi_in_h_minus1: vec![false; n],
        predicted_r: Some(&m_gram * linalg::c(-c, 0.0)),
        spectral: Some(Arc::new(ScalingSpectral::new(alpha, m_gram)?)),
    })
}

pub fn build_tabulated(family: SymmetryFamily, gram: GramFunction, psi_in_h_minus1: Vec<bool>) -> Result<Model> {
    linalg::check_dim(family.channels(), gram.channels())?;
    linalg::check_dim(family.channels(), psi_in_h_minus1.len())?;
    let spec = ModelSpec::Tabulated {
        family: family.clone(),
        gram: gram.clone(),
        psi_in_h_minus1: psi_in_h_minus1.clone(),
    };
    Ok(Model {
        spec,
        family,
        gram,
        psi_in_h_minus1,
        predicted_r: None,
        spectral: None,
    })
}
