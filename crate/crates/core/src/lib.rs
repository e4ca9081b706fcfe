//! Boundary-triplet computations for finite-rank singular perturbations of
//! operators with scaling-type symmetries.
//!
//! The crate covers
//!
//! * symmetry families `(t, g(t), p(t), ξⱼ(t))` and their consistency checks
//!   ([`symmetry`]),
//! * boundary coordinates and realizations `BΓ₀f = Γ₁f` ([`triplet`]),
//! * the homogeneity system for the admissible matrix `R`
//!   ([`admissibility`]),
//! * Weyl functions, the homogeneity identity and Krein-formula eigenvalue
//!   search ([`weyl`]),
//! * nonnegativity, homogeneity, spectrum ladders and S-matrices
//!   ([`spectra`]),
//! * concrete models ([`models`]).

pub mod admissibility;
pub mod error;
pub mod linalg;
pub mod models;
pub mod quad;
pub mod reproduce;
pub mod spectra;
pub mod symmetry;
pub mod triplet;
pub mod weyl;

pub use admissibility::{
    beta, classify_rank_one, homogeneity_residual, solve_homogeneous_r, AdmissibleLabel, GramFunction,
    RankOneVerdict, SolutionClass,
};
pub use error::{Error, Result};
pub use linalg::{c, CMatrix, CVector, C64};
pub use models::{Model, ModelSpec};
pub use spectra::{
    is_homogeneous_realization, is_nonnegative_realization, s_matrix, spectrum_ladder, NonnegVerdict,
    RealizationSpec, SMatrix,
};
pub use symmetry::{classify_power_law, validate_family, PowerLaw, SymmetryFamily, ValidationReport};
pub use triplet::{AdmissibleMatrix, BoundaryCoordinates, CouplingMatrix};
pub use weyl::{
    check_weyl_homogeneity, find_negative_eigenvalues, krein_correction, m_hat, weyl_m, RootScan, SpectralModel,
    WeylEvaluation,
};
