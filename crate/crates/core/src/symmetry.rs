//! Sampled one-parameter symmetry families: the homogeneity factor `p(t)`,
//! per-channel invariance factors `ξⱼ(t)` and the conjugation `t ↦ g(t)`
//! (the index of `U_t*` in the family), over a finite parameter set.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;

/// Symmetry data sampled on a finite parameter set.
///
/// `xi[j][k]` is `ξⱼ` at `samples[k]`; `conjugate[k]` is `g(samples[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryFamily {
    samples: Vec<f64>,
    conjugate: Vec<f64>,
    p: Vec<f64>,
    xi: Vec<Vec<f64>>,
}

fn same_point(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

impl SymmetryFamily {
    pub fn new(samples: Vec<f64>, conjugate: Vec<f64>, p: Vec<f64>, xi: Vec<Vec<f64>>) -> Result<Self> {
        let m = samples.len();
        for len in [conjugate.len(), p.len()].into_iter().chain(xi.iter().map(Vec::len)) {
            if len != m {
                return Err(Error::DimensionMismatch { expected: m, got: len });
            }
        }
        if xi.is_empty() {
            return Err(Error::InvalidInput("a family needs at least one channel".into()));
        }
        if samples.iter().chain(&conjugate).chain(&p).chain(xi.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite value in symmetry family".into()));
        }
        Ok(SymmetryFamily { samples, conjugate, p, xi })
    }

    /// Builds a family by evaluating the descriptor functions on `samples`.
    pub fn from_fns<G, P>(samples: &[f64], g: G, p: P, xi: &[&dyn Fn(f64) -> f64]) -> Result<Self>
    where
        G: Fn(f64) -> f64,
        P: Fn(f64) -> f64,
    {
        SymmetryFamily::new(
            samples.to_vec(),
            samples.iter().map(|&t| g(t)).collect(),
            samples.iter().map(|&t| p(t)).collect(),
            xi.iter().map(|f| samples.iter().map(|&t| f(t)).collect()).collect(),
        )
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn channels(&self) -> usize {
        self.xi.len()
    }

    pub fn p(&self, k: usize) -> f64 {
        self.p[k]
    }

    pub fn xi(&self, channel: usize, k: usize) -> f64 {
        self.xi[channel][k]
    }

    pub fn conjugate_value(&self, k: usize) -> f64 {
        self.conjugate[k]
    }

    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.samples.iter().position(|&s| same_point(s, t))
    }

    pub fn conjugate_index(&self, k: usize) -> Option<usize> {
        self.index_of(self.conjugate[k])
    }

    /// `Ξ(t)`: diagonal matrix of the invariance factors at sample `k`.
    pub fn xi_matrix(&self, k: usize) -> CMatrix {
        let n = self.channels();
        CMatrix::from_fn(n, n, |i, j| if i == j { c(self.xi[i][k], 0.0) } else { c(0.0, 0.0) })
    }

    /// Reorders sample points; `order[k]` is the old index of new sample `k`.
    pub fn permuted_samples(&self, order: &[usize]) -> Self {
        SymmetryFamily {
            samples: order.iter().map(|&k| self.samples[k]).collect(),
            conjugate: order.iter().map(|&k| self.conjugate[k]).collect(),
            p: order.iter().map(|&k| self.p[k]).collect(),
            xi: self.xi.iter().map(|row| order.iter().map(|&k| row[k]).collect()).collect(),
        }
    }

    /// Relabels channels; `order[j]` is the old index of new channel `j`.
    pub fn permuted_channels(&self, order: &[usize]) -> Self {
        SymmetryFamily {
            xi: order.iter().map(|&j| self.xi[j].clone()).collect(),
            ..self.clone()
        }
    }
}

/// Which invariant a sample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    /// `g(t)` is not in the sample set.
    ConjugateMissing,
    /// `g(g(t)) ≠ t`.
    ConjugateNotInvolutive,
    /// `p(t)·p(g(t)) ≠ 1`.
    HomogeneityReciprocity,
    /// `ξⱼ(t)·ξⱼ(g(t)) ≠ 1`.
    InvarianceReciprocity,
    /// `p(t) = 1` but `|ξⱼ(t)| ≠ 1`.
    UnitModulus,
    /// `p(t) ≠ 1` but `|ξⱼ(t)|` is not strictly between `1` and `p(t)`.
    StrictBound,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::ConjugateMissing => "g(t) outside the sample set",
            Rule::ConjugateNotInvolutive => "g(g(t)) != t",
            Rule::HomogeneityReciprocity => "p(t) p(g(t)) != 1",
            Rule::InvarianceReciprocity => "xi(t) xi(g(t)) != 1",
            Rule::UnitModulus => "|xi(t)| != 1 where p(t) = 1",
            Rule::StrictBound => "|xi(t)| not strictly between 1 and p(t)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub t: f64,
    pub channel: Option<usize>,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the consistency relations every admissible symmetry family obeys.
///
/// Zero factors are rejected outright; every other problem is collected into
/// the report, sorted by `(t, channel, rule)` so the result does not depend
/// on sample order.
pub fn validate_family(fam: &SymmetryFamily, tol: f64) -> Result<ValidationReport> {
    if fam.is_empty() {
        return Err(Error::InvalidInput("empty sample set".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    for k in 0..fam.len() {
        let t = fam.samples[k];
        if fam.p[k] == 0.0 {
            return Err(Error::Degenerate(format!("p({t}) = 0")));
        }
        if let Some(j) = (0..fam.channels()).find(|&j| fam.xi[j][k] == 0.0) {
            return Err(Error::Degenerate(format!("xi_{j}({t}) = 0")));
        }
    }

    let mut out = Vec::new();
    let mut push = |t: f64, channel: Option<usize>, rule: Rule| out.push(Violation { t, channel, rule });

    for k in 0..fam.len() {
        let t = fam.samples[k];
        let p = fam.p[k];
        let unit_p = (p - 1.0).abs() <= tol;
        match fam.conjugate_index(k) {
            None => push(t, None, Rule::ConjugateMissing),
            Some(gk) => {
                if !same_point(fam.conjugate[gk], t) {
                    push(t, None, Rule::ConjugateNotInvolutive);
                }
                if (p * fam.p[gk] - 1.0).abs() > tol {
                    push(t, None, Rule::HomogeneityReciprocity);
                }
                for j in 0..fam.channels() {
                    if (fam.xi[j][k] * fam.xi[j][gk] - 1.0).abs() > tol {
                        push(t, Some(j), Rule::InvarianceReciprocity);
                    }
                }
            }
        }
        for j in 0..fam.channels() {
            let m = fam.xi[j][k].abs();
            if unit_p {
                if (m - 1.0).abs() > tol {
                    push(t, Some(j), Rule::UnitModulus);
                }
            } else {
                let (lo, hi) = (p.min(1.0), p.max(1.0));
                if !(lo < m && m < hi) {
                    push(t, Some(j), Rule::StrictBound);
                }
            }
        }
    }
    out.sort_by(|a, b| {
        a.t.total_cmp(&b.t)
            .then(a.channel.cmp(&b.channel))
            .then(a.rule.cmp(&b.rule))
    });
    Ok(ValidationReport { violations: out })
}

/// Outcome of fitting `ξ(t) = t^{−α}` to samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum PowerLaw {
    PowerLaw { alpha: f64 },
    NotPowerLaw,
}

/// Decides whether sampled invariance factors follow `t^{−α}` with
/// `0 < α < 2`, the only exponents admitting singular invariant elements
/// under scaling in three dimensions.
pub fn classify_power_law(samples: &[(f64, f64)], tol: f64) -> Result<PowerLaw> {
    if samples.iter().any(|&(t, x)| !(t > 0.0) || !(x > 0.0)) {
        return Err(Error::InvalidInput("power-law samples need t > 0 and xi(t) > 0".into()));
    }
    let mut distinct: Vec<f64> = samples.iter().map(|s| s.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 || distinct.iter().all(|&t| t == 1.0) {
        return Err(Error::InsufficientData("need at least two distinct t values".into()));
    }
    let (num, den) = samples.iter().fold((0.0, 0.0), |(n, d), &(t, x)| {
        let lt = t.ln();
        (n - lt * x.ln(), d + lt * lt)
    });
    let alpha = num / den;
    let fits = samples.iter().all(|&(t, x)| (x.ln() + alpha * t.ln()).abs() <= tol);
    if fits && alpha > tol && alpha < 2.0 - tol {
        Ok(PowerLaw::PowerLaw { alpha })
    } else {
        Ok(PowerLaw::NotPowerLaw)
    }
}

pub(crate) fn key(t: f64) -> String {
    format!("{t}")
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    samples: Vec<f64>,
    conjugate: BTreeMap<String, f64>,
    p: BTreeMap<String, f64>,
    xi: Vec<BTreeMap<String, f64>>,
}

pub(crate) fn lookup(map: &BTreeMap<String, f64>, samples: &[f64], what: &str) -> std::result::Result<Vec<f64>, String> {
    let mut parsed = Vec::with_capacity(map.len());
    for (k, v) in map {
        let t: f64 = k.trim().parse().map_err(|_| format!("{what}: bad sample key {k:?}"))?;
        parsed.push((t, *v));
    }
    samples
        .iter()
        .map(|&t| {
            parsed
                .iter()
                .find(|(s, _)| same_point(*s, t))
                .map(|(_, v)| *v)
                .ok_or_else(|| format!("{what}: no entry for sample {t}"))
        })
        .collect()
}

impl Serialize for SymmetryFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map = |vals: &[f64]| -> BTreeMap<String, f64> {
            self.samples.iter().zip(vals).map(|(&t, &v)| (key(t), v)).collect()
        };
        FamilyJson {
            samples: self.samples.clone(),
            conjugate: map(&self.conjugate),
            p: map(&self.p),
            xi: self.xi.iter().map(|row| map(row)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetryFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = FamilyJson::deserialize(d)?;
        let conjugate = lookup(&raw.conjugate, &raw.samples, "conjugate").map_err(D::Error::custom)?;
        let p = lookup(&raw.p, &raw.samples, "p").map_err(D::Error::custom)?;
        let xi = raw
            .xi
            .iter()
            .enumerate()
            .map(|(j, m)| lookup(m, &raw.samples, &format!("xi[{j}]")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        SymmetryFamily::new(raw.samples, conjugate, p, xi).map_err(D::Error::custom)
    }
}
