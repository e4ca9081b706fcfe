//! Small dense complex linear algebra and the JSON encoding of complex data.
//!
//! Complex numbers serialize as `[re, im]` pairs. On input a bare real number
//! is accepted as well, so `[[0]]` and `[[[0, 0]]]` decode to the same matrix.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real_matrix(rows: &[&[f64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| c(rows[i][j], 0.0))
}

pub fn diag(values: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(values))
}

pub fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    Ok(m.nrows())
}

pub fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// Frobenius norm.
pub fn norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖A − A*‖`, Frobenius.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    norm(&(m - m.adjoint()))
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && hermitian_defect(m) <= tol * norm(m).max(1.0)
}

/// Inverse via LU; fails when the pivot magnitude collapses relative to the
/// matrix scale.
pub fn inverse(m: &CMatrix, what: &str) -> Result<CMatrix> {
    check_square(m)?;
    let scale = norm(m).max(f64::MIN_POSITIVE);
    let lu = m.clone().lu();
    let u = lu.u();
    let min_pivot = u.diagonal().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if !(min_pivot > 1e-14 * scale) {
        return Err(Error::Singular(what.to_string()));
    }
    lu.try_inverse()
        .ok_or_else(|| Error::Singular(what.to_string()))
}

pub fn determinant(m: &CMatrix) -> C64 {
    m.clone().lu().determinant()
}

/// Eigenvalues of the Hermitian part `(A + A*)/2`, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Eigenvalues of `(A − A*)/(2i)`, ascending.
pub fn imaginary_part_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let im = (m - m.adjoint()) * c(0.0, -0.5);
    hermitian_eigenvalues(&im)
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn max_singular_value(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl From<ComplexRepr> for C64 {
    fn from(r: ComplexRepr) -> Self {
        match r {
            ComplexRepr::Real(x) => c(x, 0.0),
            ComplexRepr::Pair([re, im]) => c(re, im),
        }
    }
}

/// Serde adapter for `CMatrix` as nested arrays of `[re, im]` pairs.
pub mod matrix_serde {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CMatrix, D::Error> {
        let rows: Vec<Vec<ComplexRepr>> = Vec::deserialize(d)?;
        from_rows(rows).map_err(D::Error::custom)
    }

    pub(super) fn from_rows(rows: Vec<Vec<ComplexRepr>>) -> std::result::Result<CMatrix, String> {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != m) {
            return Err("ragged matrix rows".into());
        }
        let mut out = CMatrix::zeros(n, m);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out[(i, j)] = v.into();
            }
        }
        Ok(out)
    }
}

/// Serde adapter for `CVector` as an array of `[re, im]` pairs.
pub mod vector_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &CVector, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CVector, D::Error> {
        let vals: Vec<ComplexRepr> = Vec::deserialize(d)?;
        Ok(CVector::from_iterator(vals.len(), vals.into_iter().map(C64::from)))
    }
}

/// Serde adapter for a single `C64` as `[re, im]`.
pub mod complex_serde {
    use super::*;

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<C64, D::Error> {
        ComplexRepr::deserialize(d).map(C64::from)
    }
}

/// Serde adapter for `Option<CMatrix>`.
pub mod opt_matrix_serde {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Option<CMatrix>, s: S) -> std::result::Result<S::Ok, S::Error> {
        m.as_ref().map(to_rows).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<CMatrix>, D::Error> {
        let rows: Option<Vec<Vec<ComplexRepr>>> = Option::deserialize(d)?;
        rows.map(|r| matrix_serde::from_rows(r).map_err(D::Error::custom)).transpose()
    }
}

pub fn to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_to_json(m: &CMatrix) -> serde_json::Value {
    serde_json::to_value(to_rows(m)).expect("finite matrix serializes")
}

/// Parses a matrix from JSON text; accepts real entries or `[re, im]` pairs.
pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let rows: Vec<Vec<ComplexRepr>> =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("matrix JSON: {e}")))?;
    let m = matrix_serde::from_rows(rows).map_err(Error::InvalidInput)?;
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    Ok(m)
}

/// Principal square root of `-z`, the branch with positive real part off the
/// half-line `[0, ∞)`.
pub fn sqrt_neg(z: C64) -> C64 {
    (-z).sqrt()
}
