use std::f64::consts::PI;

use sympert::models::{self, Model, ModelSpec};
use sympert::weyl::weyl_m;
use sympert::{c, classify_rank_one, linalg, AdmissibleLabel, CMatrix, RankOneVerdict, SolutionClass, C64};

const TOL: f64 = 1e-10;

fn unique(model: &Model) -> CMatrix {
    match model.solve_r(TOL).unwrap() {
        SolutionClass::Unique(r) => r.matrix().clone(),
        other => panic!("{:?}: expected Unique, got {other:?}", model.spec),
    }
}

fn verdict(model: &Model) -> RankOneVerdict {
    classify_rank_one(&model.family, &model.gram, model.all_psi_in_h_minus1(), TOL).unwrap()
}

#[test]
fn one_dim_r_is_half_minus_half() {
    let r = unique(&models::build_one_dim_model().unwrap());
    let want = [[0.5, 0.0], [0.0, -0.5]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((r[(i, j)] - c(want[i][j], 0.0)).norm() <= 1e-10, "{r}");
        }
    }
}

#[test]
fn one_dim_gram_quadrature_vs_closed_form() {
    for &t in &[0.25, 0.5, 2.0, 4.0] {
        let g = models::one_dim_gram_quadrature(t).unwrap();
        let want = t.sqrt() / (2.0 * (1.0 + t));
        assert!((g[(0, 0)].re - want).abs() <= 1e-8);
        assert!((g[(1, 1)].re - want).abs() <= 1e-8);
        assert!(g[(0, 1)].norm() <= 1e-12 && g[(1, 0)].norm() <= 1e-12);
    }
}

fn point_gram_oracle(d: u32, t: f64) -> f64 {
    match d {
        1 => t.sqrt() / (2.0 * (1.0 + t)),
        2 if t == 1.0 => 1.0 / (4.0 * PI),
        2 => t * t.ln() / (2.0 * PI * (t * t - 1.0)),
        _ => t.sqrt() / (4.0 * PI * (1.0 + t)),
    }
}

#[test]
fn point_gram_matches_closed_forms() {
    for d in 1..=3 {
        for &t in &[0.125, 0.5, 1.0, 3.0, 8.0] {
            let g = models::point_gram(d, t).unwrap();
            let want = point_gram_oracle(d, t);
            assert!((g - want).abs() <= 1e-12 * want, "d={d} t={t}: {g} vs {want}");
        }
    }
}

#[test]
fn point_interaction_trichotomy() {
    assert_eq!(verdict(&models::build_point_interaction(2).unwrap()), RankOneVerdict::OnlyA0);
    match verdict(&models::build_point_interaction(3).unwrap()) {
        RankOneVerdict::UniquePair { r, admissible_label } => {
            assert!((r + 1.0 / (4.0 * PI)).abs() <= 1e-10);
            assert_eq!(admissible_label, AdmissibleLabel::KreinVonNeumann);
        }
        v => panic!("{v:?}"),
    }
    match verdict(&models::build_point_interaction(1).unwrap()) {
        RankOneVerdict::UniquePair { r, admissible_label } => {
            assert!((r - 0.5).abs() <= 1e-10);
            assert_eq!(admissible_label, AdmissibleLabel::Friedrichs);
        }
        v => panic!("{v:?}"),
    }
    assert!(models::build_point_interaction(4).is_err());
}

/// Direct truncated sums, independent of the adaptive series helper.
fn padic_sum(p: f64, alpha: f64, f: impl Fn(f64, f64) -> f64) -> f64 {
    (-300..=300)
        .map(|n: i32| {
            let lam = p.powf(alpha * (1 - n) as f64);
            (p - 1.0) * p.powi(-n) * f(lam, n as f64)
        })
        .filter(|v| v.is_finite())
        .sum()
}

#[test]
fn padic_solutions_by_alpha() {
    assert_eq!(models::build_padic_model(2, 1.0).unwrap().solve_r(TOL).unwrap().tag(), "NoSolution");
    assert_eq!(verdict(&models::build_padic_model(3, 1.0).unwrap()), RankOneVerdict::OnlyA0);

    let r = unique(&models::build_padic_model(2, 1.5).unwrap())[(0, 0)];
    let want = padic_sum(2.0, 1.5, |l, _| 1.0 / (l + 1.0));
    assert!((r.re - want).abs() <= 1e-10 * want.abs(), "{r} vs {want}");

    let r = unique(&models::build_padic_model(3, 0.75).unwrap())[(0, 0)];
    let want = -padic_sum(3.0, 0.75, |l, _| 1.0 / (l * (l + 1.0)));
    assert!((r.re - want).abs() <= 1e-10 * want.abs(), "{r} vs {want}");

    match verdict(&models::build_padic_model(2, 1.5).unwrap()) {
        RankOneVerdict::UniquePair { admissible_label, .. } => assert_eq!(admissible_label, AdmissibleLabel::Friedrichs),
        v => panic!("{v:?}"),
    }
    match verdict(&models::build_padic_model(2, 0.75).unwrap()) {
        RankOneVerdict::UniquePair { admissible_label, .. } => {
            assert_eq!(admissible_label, AdmissibleLabel::KreinVonNeumann)
        }
        v => panic!("{v:?}"),
    }
    assert!(models::build_padic_model(4, 1.5).is_err());
    assert!(models::build_padic_model(2, 0.5).is_err());
}

#[test]
fn scaling_constants() {
    let c32 = models::c_alpha(1.5).unwrap();
    assert!((c32 - PI / 2.0).abs() <= 1e-9);
    assert!((models::beta_alpha(1.5).unwrap() - 2.0).abs() <= 1e-8);
    for &a in &[1.1, 1.3, 1.7, 1.9] {
        // ∫ y^{s−1}/(1+y²) = (π/2)/sin(πs/2) with s = 4 − 2α.
        let want = (PI / 2.0) / (PI * (2.0 - a)).sin();
        assert!((models::c_alpha(a).unwrap() - want).abs() <= 1e-9 * want, "α={a}");
        assert!((models::beta_alpha(a).unwrap() - 1.0 / (a - 1.0)).abs() <= 1e-8 / (a - 1.0), "α={a}");
    }
}

#[test]
fn scaling_unique_solution_is_minus_c_m() {
    let m = linalg::real_matrix(&[&[2.0, 0.5], &[0.5, 1.0]]);
    let model = models::build_scaling_invariant_3d(1.4, Some(m.clone())).unwrap();
    let r = unique(&model);
    let c14 = models::c_alpha(1.4).unwrap();
    assert!(linalg::norm(&(r - m * c(-c14, 0.0))) <= 1e-9);

    let r = unique(&models::build_scaling_invariant_3d(1.5, None).unwrap());
    assert!((r[(0, 0)] + 2.0).norm() <= 1e-9);
}

#[test]
fn scaling_gram_quadrature_vs_closed_form() {
    for &a in &[1.3, 1.5, 1.8] {
        let ca = models::c_alpha(a).unwrap();
        for &t in &[0.125, 0.5, 1.0, 2.0, 8.0] {
            let q = models::scaling_gram_quadrature(a, t).unwrap();
            let coef = if t == 1.0 { a - 1.0 } else { (t.powf(a) - t.powf(2.0 - a)) / (t * t - 1.0) };
            assert!((q - ca * coef).abs() <= 1e-8, "α={a} t={t}");
        }
    }
}

#[test]
fn gram_bounded_by_overlap() {
    for spec in [
        ModelSpec::OneDimDeltaDeltaPrime,
        ModelSpec::PointInteractionRd { d: 3 },
        ModelSpec::PAdicVladimirov { p: 5, alpha: 1.2 },
        ModelSpec::ScalingInvariant3D { alpha: 1.6, m_gram: None },
    ] {
        let model = Model::build(&spec).unwrap();
        let overlap = linalg::norm(&model.spectral().unwrap().overlap());
        for k in 0..model.gram.samples().len() {
            assert!(linalg::norm(model.gram.at_index(k)) <= overlap * (1.0 + 1e-12), "{spec:?}");
        }
    }
}

fn closed_form_agreement(model: &Model, zs: &[C64], tol: f64) {
    let spectral = model.spectral().unwrap();
    let r = match model.solve_r(TOL).unwrap() {
        SolutionClass::Unique(r) => r,
        other => panic!("{other:?}"),
    };
    for &z in zs {
        let ev = weyl_m(spectral, &r, z).unwrap();
        let d = ev.closed_form_discrepancy.expect("closed form present");
        assert!(d <= tol, "{:?} z={z}: discrepancy {d:e}", model.spec);
    }
}

#[test]
fn weyl_closed_forms_agree_with_resolvent_data() {
    let zs = [c(-2.0, 0.0), c(0.5, 1.0), c(-3.0, -0.2), c(4.0, 0.01), c(-0.01, 0.3)];
    for spec in [
        ModelSpec::OneDimDeltaDeltaPrime,
        ModelSpec::PointInteractionRd { d: 1 },
        ModelSpec::PointInteractionRd { d: 3 },
        ModelSpec::PAdicVladimirov { p: 2, alpha: 1.5 },
        ModelSpec::PAdicVladimirov { p: 3, alpha: 0.75 },
        ModelSpec::ScalingInvariant3D { alpha: 1.5, m_gram: None },
        ModelSpec::ScalingInvariant3D { alpha: 1.25, m_gram: Some(linalg::real_matrix(&[&[1.0, 0.2], &[0.2, 0.5]])) },
    ] {
        closed_form_agreement(&Model::build(&spec).unwrap(), &zs, 1e-8);
    }
}

#[test]
fn scaling_three_halves_weyl_is_inverse_two_kappa() {
    let model = models::build_scaling_invariant_3d(1.5, None).unwrap();
    let r = model.solve_r(TOL).unwrap().unique().unwrap().clone();
    for &z in &[c(-1.0 / 16.0, 0.0), c(0.3, 2.0), c(-7.0, -1.0)] {
        let m = weyl_m(model.spectral().unwrap(), &r, z).unwrap().m[(0, 0)];
        let want = 1.0 / (2.0 * (-z).sqrt());
        assert!((m - want).norm() <= 1e-9 * want.norm(), "z={z}: {m} vs {want}");
    }
}

#[test]
fn model_spec_json_round_trip() {
    for text in [
        r#"{"kind":"OneDimDeltaDeltaPrime"}"#,
        r#"{"kind":"PointInteractionRd","d":3}"#,
        r#"{"kind":"PAdicVladimirov","p":2,"alpha":1.5}"#,
        r#"{"kind":"ScalingInvariant3D","alpha":1.5,"m_gram":[[1,0],[0,2]]}"#,
    ] {
        let spec = ModelSpec::from_json(text).unwrap();
        let back = ModelSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(spec, back);
    }
    assert!(ModelSpec::from_json(r#"{"kind":"Nope"}"#).is_err());
}

#[test]
fn tabulated_model_solves_from_json() {
    let model = models::build_one_dim_model().unwrap();
    let spec = ModelSpec::Tabulated {
        family: model.family.clone(),
        gram: model.gram.clone(),
        psi_in_h_minus1: vec![true, false],
    };
    let text = serde_json::to_string(&spec).unwrap();
    let rebuilt = Model::build(&ModelSpec::from_json(&text).unwrap()).unwrap();
    let r = unique(&rebuilt);
    assert!((r[(0, 0)] - 0.5).norm() <= 1e-12 && (r[(1, 1)] + 0.5).norm() <= 1e-12);
    assert!(rebuilt.spectral().is_err());
}
