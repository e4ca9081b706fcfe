use std::path::Path;

use clap::Args;
use serde_json::{json, Value};

use sympert::models::{Model, ModelSpec};
use sympert::{c, linalg, CMatrix, Error, Result, C64};

/// Parses `re,im` or a bare real number.
pub fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|_| format!("invalid number {p:?} in {s:?}"));
    let z = match parts.as_slice() {
        [re] => c(num(re)?, 0.0),
        [re, im] => c(num(re)?, num(im)?),
        _ => return Err(format!("expected re,im but got {s:?}")),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite value {s:?}"))
    }
}

/// Parses `a,b` into two numbers.
pub fn parse_pair<T: std::str::FromStr>(s: &str) -> std::result::Result<(T, T), String> {
    let mut it = s.split(',').map(str::trim);
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => Err(format!("invalid pair {s:?}")),
        },
        _ => Err(format!("expected a,b but got {s:?}")),
    }
}

fn read_inline_or_file(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return Ok(arg.to_string());
    }
    let path = Path::new(arg);
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

/// A matrix given as inline JSON or as a path to a JSON file.
pub fn load_matrix(arg: &str) -> Result<CMatrix> {
    linalg::matrix_from_json(&read_inline_or_file(arg)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    OneDimDeltaDeltaPrime,
    PointInteractionRd,
    PAdicVladimirov,
    #[value(name = "scaling-invariant-3d")]
    ScalingInvariant3D,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Model kind
    #[arg(long, value_enum, ignore_case = true, conflicts_with = "model")]
    pub kind: Option<Kind>,
    /// Model description as a JSON file or inline JSON, e.g. '{"kind":"PointInteractionRd","d":3}'
    #[arg(long)]
    pub model: Option<String>,
    /// Dimension for PointInteractionRd
    #[arg(long)]
    pub d: Option<u32>,
    /// Prime for PAdicVladimirov
    #[arg(long)]
    pub p: Option<u64>,
    /// Exponent alpha for PAdicVladimirov and ScalingInvariant3D
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Angular Gram matrix (m_i, m_j) for ScalingInvariant3D (JSON or file)
    #[arg(long)]
    pub m_gram: Option<String>,
}

fn required<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("--{flag} is required for {kind}")))
}

impl ModelArgs {
    pub fn spec(&self) -> Result<ModelSpec> {
        if let Some(m) = &self.model {
            return ModelSpec::from_json(&read_inline_or_file(m)?);
        }
        let kind = self
            .kind
            .ok_or_else(|| Error::InvalidInput("either --kind or --model is required".into()))?;
        Ok(match kind {
            Kind::OneDimDeltaDeltaPrime => ModelSpec::OneDimDeltaDeltaPrime,
            Kind::PointInteractionRd => ModelSpec::PointInteractionRd {
                d: required(self.d, "d", "PointInteractionRd")?,
            },
            Kind::PAdicVladimirov => ModelSpec::PAdicVladimirov {
                p: required(self.p, "p", "PAdicVladimirov")?,
                alpha: required(self.alpha, "alpha", "PAdicVladimirov")?,
            },
            Kind::ScalingInvariant3D => ModelSpec::ScalingInvariant3D {
                alpha: required(self.alpha, "alpha", "ScalingInvariant3D")?,
                m_gram: self.m_gram.as_deref().map(load_matrix).transpose()?,
            },
        })
    }

    pub fn build(&self) -> Result<(ModelSpec, Model)> {
        let spec = self.spec()?;
        let model = Model::build(&spec)?;
        Ok((spec, model))
    }
}

pub fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}
