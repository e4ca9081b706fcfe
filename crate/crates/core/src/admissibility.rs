//! The homogeneity system for the admissible matrix `R`.
//!
//! For every channel pair `(i, j)` and sample `t` the admissible operator is
//! `p(t)`-homogeneous exactly when
//!
//! ```text
//! βᵢⱼ(t) rᵢⱼ = (1 − p(t)) (hⱼ, U_t hᵢ),      βᵢⱼ(t) = ξᵢ(t) − p(t)/ξⱼ(t)
//! ```
//!
//! holds with `rᵢⱼ` independent of `t`. The system decouples by entry, so it
//! is solved entry by entry and inconsistencies are reported per entry.
//!
//! Gram convention: `GramFunction` stores `G(t)ᵢⱼ = (hⱼ, U_t hᵢ)`, i.e. the
//! right-hand side entry exactly as written above. In matrix form the system
//! reads `Ξ(t) R − p(t) R Ξ(t)⁻¹ = (1 − p(t)) G(t)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64};
use crate::symmetry::{self, SymmetryFamily};
use crate::triplet::AdmissibleMatrix;

/// Sampled Gram data `t ↦ G(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramFunction {
    samples: Vec<f64>,
    entries: Vec<CMatrix>,
}

impl GramFunction {
    pub fn new(samples: Vec<f64>, entries: Vec<CMatrix>) -> Result<Self> {
        linalg::check_dim(samples.len(), entries.len())?;
        let n = entries.first().map_or(0, |m| m.nrows());
        for m in &entries {
            linalg::check_square(m)?;
            linalg::check_dim(n, m.nrows())?;
        }
        Ok(GramFunction { samples, entries })
    }

    pub fn from_fn(samples: &[f64], f: impl Fn(f64) -> Result<CMatrix>) -> Result<Self> {
        let entries = samples.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        GramFunction::new(samples.to_vec(), entries)
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn channels(&self) -> usize {
        self.entries.first().map_or(0, |m| m.nrows())
    }

    pub fn at_index(&self, k: usize) -> &CMatrix {
        &self.entries[k]
    }

    pub fn at(&self, t: f64) -> Option<&CMatrix> {
        self.samples
            .iter()
            .position(|&s| s == t || (s - t).abs() <= 1e-12 * s.abs().max(1.0))
            .map(|k| &self.entries[k])
    }

    /// Conjugates every sample by a channel permutation:
    /// `G'(t)ᵢⱼ = G(t)_{order[i], order[j]}`.
    pub fn permuted_channels(&self, order: &[usize]) -> Self {
        let n = order.len();
        GramFunction {
            samples: self.samples.clone(),
            entries: self
                .entries
                .iter()
                .map(|g| CMatrix::from_fn(n, n, |i, j| g[(order[i], order[j])]))
                .collect(),
        }
    }
}

impl Serialize for GramFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, Vec<Vec<[f64; 2]>>> = self
            .samples
            .iter()
            .zip(&self.entries)
            .map(|(&t, m)| (symmetry::key(t), linalg::to_rows(m)))
            .collect();
        map.serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(transparent)]
struct RawEntry(#[serde(with = "linalg::matrix_serde")] CMatrix);

impl<'de> Deserialize<'de> for GramFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: BTreeMap<String, RawEntry> = BTreeMap::deserialize(d)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let t: f64 = k.trim().parse().map_err(|_| D::Error::custom(format!("bad Gram key {k:?}")))?;
            pairs.push((t, v.0));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (samples, entries) = pairs.into_iter().unzip();
        GramFunction::new(samples, entries).map_err(D::Error::custom)
    }
}

/// Solution set of the homogeneity system.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionClass {
    NoSolution { diagnostics: Vec<String> },
    Unique(AdmissibleMatrix),
    /// Several R fit every sampled t. A finite sample cannot show this for
    /// all t, so treat it as evidence rather than proof.
    Infinite {
        /// Entries pinned by the data; `None` where the entry is free.
        fixed_entries: Vec<Vec<Option<C64>>>,
        free_indices: Vec<(usize, usize)>,
    },
}

impl SolutionClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SolutionClass::NoSolution { .. } => "NoSolution",
            SolutionClass::Unique(_) => "Unique",
            SolutionClass::Infinite { .. } => "Infinite",
        }
    }

    pub fn unique(&self) -> Option<&AdmissibleMatrix> {
        match self {
            SolutionClass::Unique(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("solution class serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "tag")]
enum SolutionJson {
    NoSolution {
        #[serde(default)]
        diagnostics: Vec<String>,
    },
    Unique {
        #[serde(rename = "R")]
        r: AdmissibleMatrix,
    },
    Infinite {
        fixed_entries: Vec<Vec<Option<[f64; 2]>>>,
        free_indices: Vec<(usize, usize)>,
    },
}

impl Serialize for SolutionClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self.clone() {
            SolutionClass::NoSolution { diagnostics } => SolutionJson::NoSolution { diagnostics },
            SolutionClass::Unique(r) => SolutionJson::Unique { r },
            SolutionClass::Infinite {
                fixed_entries,
                free_indices,
            } => SolutionJson::Infinite {
                fixed_entries: fixed_entries
                    .iter()
                    .map(|row| row.iter().map(|e| e.map(|z| [z.re, z.im])).collect())
                    .collect(),
                free_indices,
            },
        };
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SolutionClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match SolutionJson::deserialize(d)? {
            SolutionJson::NoSolution { diagnostics } => SolutionClass::NoSolution { diagnostics },
            SolutionJson::Unique { r } => SolutionClass::Unique(r),
            SolutionJson::Infinite {
                fixed_entries,
                free_indices,
            } => SolutionClass::Infinite {
                fixed_entries: fixed_entries
                    .into_iter()
                    .map(|row| row.into_iter().map(|e| e.map(|[re, im]| c(re, im))).collect())
                    .collect(),
                free_indices,
            },
        })
    }
}

/// `βᵢⱼ(t) = ξᵢ(t) − p(t)/ξⱼ(t)` at sample index `k`.
pub fn beta(fam: &SymmetryFamily, i: usize, j: usize, k: usize) -> f64 {
    fam.xi(i, k) - fam.p(k) / fam.xi(j, k)
}

#[derive(Debug, Clone, PartialEq)]
enum EntryVerdict {
    Fixed(C64),
    Free,
    Inconsistent(String),
}

fn solve_entry(equations: &[(f64, C64, f64)], tol: f64) -> EntryVerdict {
    // (β, rhs, t)
    let scale = |b: f64, r: C64| r.norm().max(b.abs()).max(1.0);
    let reference = equations
        .iter()
        .filter(|(b, r, _)| b.abs() > tol * scale(*b, *r))
        .max_by(|x, y| x.0.abs().total_cmp(&y.0.abs()));
    match reference {
        None => {
            match equations.iter().find(|(b, r, _)| r.norm() > tol * scale(*b, *r)) {
                Some((_, r, t)) => EntryVerdict::Inconsistent(format!("beta = 0 but rhs = {r} at t = {t}")),
                None => EntryVerdict::Free,
            }
        }
        Some(&(b0, r0, _)) => {
            let value = r0 / b0;
            for &(b, r, t) in equations {
                let residual = (value * b - r).norm();
                if residual > tol * scale(b, r) {
                    return EntryVerdict::Inconsistent(format!(
                        "candidate {value} leaves residual {residual:.3e} at t = {t}"
                    ));
                }
            }
            EntryVerdict::Fixed(value)
        }
    }
}

/// Solves the homogeneity system over all samples of `fam`.
pub fn solve_homogeneous_r(fam: &SymmetryFamily, gram: &GramFunction, tol: f64) -> Result<SolutionClass> {
    if fam.is_empty() {
        return Err(Error::InvalidInput("empty sample set".into()));
    }
    let n = fam.channels();
    linalg::check_dim(n, gram.channels())?;
    let grams: Vec<&CMatrix> = fam
        .samples()
        .iter()
        .map(|&t| {
            gram.at(t)
                .ok_or_else(|| Error::InvalidInput(format!("Gram data missing at t = {t}")))
        })
        .collect::<Result<_>>()?;

    let mut fixed = vec![vec![None; n]; n];
    let mut free = Vec::new();
    let mut diagnostics = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let eqs: Vec<(f64, C64, f64)> = (0..fam.len())
                .map(|k| (beta(fam, i, j, k), grams[k][(i, j)] * (1.0 - fam.p(k)), fam.samples()[k]))
                .collect();
            match solve_entry(&eqs, tol) {
                EntryVerdict::Fixed(v) => fixed[i][j] = Some(v),
                EntryVerdict::Free => free.push((i, j)),
                EntryVerdict::Inconsistent(why) => diagnostics.push(format!("entry ({i},{j}): {why}")),
            }
        }
    }

    if !diagnostics.is_empty() {
        return Ok(SolutionClass::NoSolution { diagnostics });
    }
    if !free.is_empty() {
        return Ok(SolutionClass::Infinite {
            fixed_entries: fixed,
            free_indices: free,
        });
    }
    let r = CMatrix::from_fn(n, n, |i, j| fixed[i][j].expect("all entries fixed"));
    match AdmissibleMatrix::with_tol(r, 10.0 * tol) {
        Ok(r) => Ok(SolutionClass::Unique(r)),
        Err(Error::NotHermitian { defect }) => Ok(SolutionClass::NoSolution {
            diagnostics: vec![format!("unique solution is not Hermitian (defect {defect:.3e})")],
        }),
        Err(e) => Err(e),
    }
}

/// `‖Ξ(t) R − p(t) R Ξ(t)⁻¹ − (1 − p(t)) G(t)‖` at sample index `k`.
pub fn homogeneity_residual(fam: &SymmetryFamily, gram: &GramFunction, r: &CMatrix, k: usize) -> Result<f64> {
    let t = fam.samples()[k];
    let g = gram
        .at(t)
        .ok_or_else(|| Error::InvalidInput(format!("Gram data missing at t = {t}")))?;
    let xi = fam.xi_matrix(k);
    let xi_inv = CMatrix::from_fn(xi.nrows(), xi.ncols(), |i, j| if i == j { 1.0 / xi[(i, i)] } else { c(0.0, 0.0) });
    let p = fam.p(k);
    let lhs = &xi * r - r * &xi_inv * c(p, 0.0);
    Ok(linalg::norm(&(lhs - g * c(1.0 - p, 0.0))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdmissibleLabel {
    KreinVonNeumann,
    Friedrichs,
}

/// Rank-one trichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum RankOneVerdict {
    /// The unperturbed operator is the only homogeneous extension and equals
    /// both the Friedrichs and the Krein–von Neumann extension.
    OnlyA0,
    /// Every self-adjoint extension is homogeneous.
    AllHomogeneous,
    /// Exactly two homogeneous extensions; `admissible_label` names the one
    /// that is not the unperturbed operator.
    UniquePair { r: f64, admissible_label: AdmissibleLabel },
}

pub fn classify_rank_one(
    fam: &SymmetryFamily,
    gram: &GramFunction,
    psi_in_h_minus1: bool,
    tol: f64,
) -> Result<RankOneVerdict> {
    if fam.channels() != 1 {
        return Err(Error::InvalidInput(format!(
            "rank-one classification needs one channel, got {}",
            fam.channels()
        )));
    }
    Ok(match solve_homogeneous_r(fam, gram, tol)? {
        SolutionClass::NoSolution { .. } => RankOneVerdict::OnlyA0,
        SolutionClass::Infinite { .. } => RankOneVerdict::AllHomogeneous,
        SolutionClass::Unique(r) => RankOneVerdict::UniquePair {
            r: r.matrix()[(0, 0)].re,
            admissible_label: if psi_in_h_minus1 {
                AdmissibleLabel::Friedrichs
            } else {
                AdmissibleLabel::KreinVonNeumann
            },
        },
    })
}
