use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use sympert::models::{self, Model};
use sympert::weyl::{find_negative_eigenvalues, weyl_from_data, RootScan};
use sympert::{
    classify_rank_one, is_nonnegative_realization, linalg, reproduce, s_matrix, spectrum_ladder, weyl_m,
    AdmissibleMatrix, CMatrix, CouplingMatrix, Error, RealizationSpec, Result, SolutionClass, C64,
};

use crate::args::{complex_json, load_matrix, ModelArgs};

#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: Value,
    pub output: Value,
    pub provenance: Vec<String>,
}

/// A finished command: the JSON result and whether it reports a
/// mathematical failure (exit code 3) despite producing output.
pub struct Finished {
    pub result: CommandResult,
    pub failed: bool,
}

fn done(command: &str, inputs: Value, output: Value, provenance: &[&str]) -> Finished {
    Finished {
        result: CommandResult {
            command: command.to_string(),
            inputs,
            output,
            provenance: provenance.iter().map(|s| s.to_string()).collect(),
        },
        failed: false,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

fn model_label(model: &Model) -> String {
    format!("model: {}", model.spec.kind())
}

/// The admissible matrix: explicit `--R` or the unique solution for the model.
fn admissible(model: &Model, explicit: Option<&str>, tol: f64) -> Result<AdmissibleMatrix> {
    if let Some(text) = explicit {
        return AdmissibleMatrix::new(load_matrix(text)?);
    }
    match model.solve_r(tol)? {
        SolutionClass::Unique(r) => Ok(r),
        other => Err(Error::NoSolution(format!(
            "the model has no unique admissible matrix ({}); pass --R explicitly",
            other.tag()
        ))),
    }
}

pub fn model_list() -> Finished {
    done(
        "model list",
        json!({}),
        to_value(&models::model_kinds()),
        &["model catalogue"],
    )
}

pub fn model_info(args: &ModelArgs) -> Result<Finished> {
    let (spec, model) = args.build()?;
    let output = json!({
        "spec": to_value(&spec),
        "channels": model.channels(),
        "family": to_value(&model.family),
        "gram": to_value(&model.gram),
        "psi_in_h_minus1": model.psi_in_h_minus1,
        "predicted_R": model.predicted_r.as_ref().map(linalg::matrix_to_json),
        "spectral_backend": model.spectral.is_some(),
    });
    Ok(done("model info", to_value(&spec), output, &["model catalogue", &model_label(&model)]))
}

pub fn solve_r(args: &ModelArgs, tol: f64) -> Result<Finished> {
    let (spec, model) = args.build()?;
    let sol = model.solve_r(tol)?;
    let failed = !matches!(sol, SolutionClass::Unique(_));
    let mut f = done(
        "solve-r",
        json!({"model": to_value(&spec), "tol": tol}),
        sol.to_json(),
        &["homogeneity system for the admissible matrix R", &model_label(&model)],
    );
    f.failed = failed;
    Ok(f)
}

pub fn classify(args: &ModelArgs, tol: f64) -> Result<Finished> {
    let (spec, model) = args.build()?;
    let verdict = classify_rank_one(&model.family, &model.gram, model.all_psi_in_h_minus1(), tol)?;
    Ok(done(
        "classify",
        json!({"model": to_value(&spec), "tol": tol}),
        to_value(&verdict),
        &["rank-one trichotomy of homogeneous extensions", &model_label(&model)],
    ))
}

pub fn weyl(args: &ModelArgs, z: C64, r: Option<&str>, tol: f64) -> Result<Finished> {
    let (spec, model) = args.build()?;
    let r = admissible(&model, r, tol)?;
    let ev = weyl_m(model.spectral()?, &r, z)?;
    Ok(done(
        "weyl",
        json!({"model": to_value(&spec), "z": complex_json(z), "tol": tol}),
        json!({"evaluation": to_value(&ev), "R": linalg::matrix_to_json(r.matrix())}),
        &["Weyl function M(z) = -(R + M̂(z))^-1", &model_label(&model)],
    ))
}

pub fn spectrum(args: &ModelArgs, b: &str, interval: (f64, f64), scan: RootScan, r: Option<&str>, tol: f64) -> Result<Finished> {
    let (spec, model) = args.build()?;
    let r = admissible(&model, r, tol)?;
    let bm = CouplingMatrix::new(load_matrix(b)?)?;
    let roots = find_negative_eigenvalues(model.spectral()?, &r, &bm, interval, scan)?;
    Ok(done(
        "spectrum",
        json!({
            "model": to_value(&spec),
            "B": linalg::matrix_to_json(bm.matrix()),
            "interval": [interval.0, interval.1],
            "points": scan.points,
            "root_tol": scan.tol,
        }),
        json!(roots),
        &["negative eigenvalues from det(B - M(x)) = 0", &model_label(&model)],
    ))
}

pub fn nonneg(args: &ModelArgs, b: &str, r: Option<&str>, tol: f64) -> Result<Finished> {
    let (spec, model) = args.build()?;
    let r = admissible(&model, r, tol)?;
    let bm = CouplingMatrix::new(load_matrix(b)?)?;
    let verdict = is_nonnegative_realization(&RealizationSpec::new(bm.clone(), r.clone(), None)?, tol)?;
    Ok(done(
        "nonneg",
        json!({"model": to_value(&spec), "B": linalg::matrix_to_json(bm.matrix()), "tol": tol}),
        json!({"verdict": to_value(&verdict), "R": linalg::matrix_to_json(r.matrix())}),
        &["nonnegativity criterion 0 <= X <= -R^-1", &model_label(&model)],
    ))
}

const S_MATRIX_SCOPE: &str =
    "warning: the S-matrix formula is established for the alpha = 3/2 orthonormal scaling-invariant model; other inputs are evaluated formally";

pub fn smatrix(b: &str, z: C64) -> Result<Finished> {
    let bm = CouplingMatrix::new(load_matrix(b)?)?;
    let s = s_matrix(&bm, z)?;
    Ok(done(
        "smatrix",
        json!({"B": linalg::matrix_to_json(bm.matrix()), "z": complex_json(z)}),
        to_value(&s),
        &["scattering matrix (I - 2izB)(I + 2izB)^-1", S_MATRIX_SCOPE],
    ))
}

pub fn ladder(lambda: C64, p: f64, range: (i32, i32)) -> Result<Finished> {
    let points = spectrum_ladder(lambda, p, range)?;
    Ok(done(
        "ladder",
        json!({"lambda": complex_json(lambda), "p": p, "range": [range.0, range.1]}),
        Value::Array(points.into_iter().map(complex_json).collect()),
        &["spectrum ladder of homogeneous realizations"],
    ))
}

pub fn verify() -> Finished {
    let checks = reproduce::run_all();
    let failed = checks.iter().any(|c| !c.passed);
    let mut f = done(
        "verify",
        json!({}),
        json!({"all_passed": !failed, "checks": to_value(&checks)}),
        &["reproduction suite"],
    );
    f.failed = failed;
    f
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepMode {
    /// Nonnegativity verdict for B = b·I over b
    Nonneg,
    /// Weyl function entries along Re z with fixed Im z
    Weyl,
    /// Largest singular value of S along Re z with fixed Im z
    Smatrix,
}

pub struct SweepArgs<'a> {
    pub mode: SweepMode,
    pub model: &'a ModelArgs,
    pub b: Option<&'a str>,
    pub r: Option<&'a str>,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub im: f64,
    pub tol: f64,
}

fn grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        n => (0..n).map(|k| from + (to - from) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn fmt(x: f64) -> String {
    format!("{x:e}")
}

/// Writes the sweep as CSV to `out`; one row per grid point.
pub fn sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    if !(a.from.is_finite() && a.to.is_finite() && a.im.is_finite()) {
        return Err(Error::InvalidInput("sweep bounds must be finite".into()));
    }
    let io = |e: csv::Error| Error::InvalidInput(format!("writing CSV: {e}"));
    let mut w = csv::Writer::from_writer(out);
    match a.mode {
        SweepMode::Nonneg => {
            let (_, model) = a.model.build()?;
            let r = admissible(&model, a.r, a.tol)?;
            let n = r.dim();
            w.write_record(["b", "nonnegative"]).map_err(io)?;
            for b in grid(a.from, a.to, a.steps) {
                let bm = CouplingMatrix::new(CMatrix::identity(n, n) * sympert::c(b, 0.0))?;
                let v = is_nonnegative_realization(&RealizationSpec::new(bm, r.clone(), None)?, a.tol)?;
                w.write_record([fmt(b), v.nonnegative.to_string()]).map_err(io)?;
            }
        }
        SweepMode::Weyl => {
            let (_, model) = a.model.build()?;
            let r = admissible(&model, a.r, a.tol)?;
            let sp = model.spectral()?;
            let n = r.dim();
            let mut header = vec!["re_z".to_string(), "im_z".to_string()];
            for i in 0..n {
                for j in 0..n {
                    header.push(format!("m{i}{j}_re"));
                    header.push(format!("m{i}{j}_im"));
                }
            }
            header.push("error".into());
            w.write_record(&header).map_err(io)?;
            for x in grid(a.from, a.to, a.steps) {
                let mut row = vec![fmt(x), fmt(a.im)];
                match weyl_from_data(sp, &r, sympert::c(x, a.im)) {
                    Ok(m) => {
                        for i in 0..n {
                            for j in 0..n {
                                row.push(fmt(m[(i, j)].re));
                                row.push(fmt(m[(i, j)].im));
                            }
                        }
                        row.push(String::new());
                    }
                    Err(e) => {
                        row.extend(std::iter::repeat(String::new()).take(2 * n * n));
                        row.push(e.to_string());
                    }
                }
                w.write_record(&row).map_err(io)?;
            }
        }
        SweepMode::Smatrix => {
            let b = a.b.ok_or_else(|| Error::InvalidInput("--B is required for the smatrix sweep".into()))?;
            let bm = CouplingMatrix::new(load_matrix(b)?)?;
            w.write_record(["re_z", "im_z", "max_singular_value", "unitarity_defect", "error"]).map_err(io)?;
            for x in grid(a.from, a.to, a.steps) {
                let row = match s_matrix(&bm, sympert::c(x, a.im)) {
                    Ok(s) => [fmt(x), fmt(a.im), fmt(s.max_singular_value), fmt(s.unitarity_defect), String::new()],
                    Err(e) => [fmt(x), fmt(a.im), String::new(), String::new(), e.to_string()],
                };
                w.write_record(&row).map_err(io)?;
            }
        }
    }
    w.flush().map_err(|e| Error::InvalidInput(format!("writing CSV: {e}")))?;
    Ok(())
}
