mod common;

use std::f64::consts::PI;

use common::mi;
use nilbniz_core::numeric::{
    check_theorem_numeric, convolve_at, refinement_errors, GaussianSpec, QuadratureRule, QuadratureSpec,
};
use nilbniz_core::presets::{abelian, heisenberg};

fn points() -> Vec<Vec<f64>> {
    vec![vec![0.5, -0.3, 0.8], vec![-0.7, 0.4, -0.6], vec![0.2, 0.9, 0.3], vec![-0.4, -0.8, -0.9], vec![1.0, -1.0, 0.5]]
}

/// ∫ exp(-a|x-y-c_f|²) exp(-b|y-c_g|²) dy on ℝ^d.
fn abelian_gaussian_convolution(f: &GaussianSpec, g: &GaussianSpec, x: &[f64]) -> f64 {
    let (a, b) = (f.scale, g.scale);
    let d = x.len() as f64;
    let r2: f64 = x.iter().zip(&f.center).zip(&g.center).map(|((x, cf), cg)| (x - cf - cg).powi(2)).sum();
    (PI / (a + b)).powf(d / 2.0) * (-a * b / (a + b) * r2).exp()
}

#[test]
fn abelian_convolution_matches_closed_form() {
    let t = abelian(3, 2);
    let f = GaussianSpec::new(vec![0.2, -0.1, 0.0], 1.0).unwrap();
    let g = GaussianSpec::new(vec![0.0, 0.3, -0.4], 2.0).unwrap();
    let q = QuadratureSpec::default_for(1.0);
    for x in points() {
        let got = convolve_at(&t, &f, &g, &x, &q).unwrap();
        let want = abelian_gaussian_convolution(&f, &g, &x);
        assert!((got - want).abs() < 1e-8 * want, "{x:?}: {got} vs {want}");
    }
}

#[test]
fn narrow_gaussian_acts_as_identity() {
    let h = heisenberg(1);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let s = 400.0;
    let g = GaussianSpec::standard(3, s).unwrap();
    let q = QuadratureSpec::default_for(s);
    let norm = (s / PI).powf(1.5);
    for x in points() {
        let got = norm * convolve_at(&h, &f, &g, &x, &q).unwrap();
        let want = f.eval(&x);
        assert!((got - want).abs() < 2e-2 * want, "{x:?}: {got} vs {want}");
    }
}

#[test]
fn heisenberg_convolution_converges_under_refinement() {
    let h = heisenberg(1);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let x = [0.0, 0.0, 1.0];
    let base = QuadratureSpec::default_for(1.0);
    let reference = convolve_at(&h, &f, &f, &x, &base.with_points(64).unwrap()).unwrap();
    let value = convolve_at(&h, &f, &f, &x, &base).unwrap();
    assert!((value - reference).abs() < 1e-6 * reference);
}

#[test]
fn convolution_reflects_under_inversion() {
    // (f * g)(x) = (g̃ * f̃)(x⁻¹) with h̃(u) = h(u⁻¹); for a Gaussian h̃ is
    // the same Gaussian centred at the negated center.
    let h = heisenberg(1);
    let f = GaussianSpec::new(vec![0.3, -0.2, 0.1], 1.0).unwrap();
    let g = GaussianSpec::new(vec![-0.1, 0.4, 0.2], 1.5).unwrap();
    let reflect = |s: &GaussianSpec| GaussianSpec::new(s.center.iter().map(|c| -c).collect(), s.scale).unwrap();
    let q = QuadratureSpec::default_for(1.0);
    for x in points() {
        let direct = convolve_at(&h, &f, &g, &x, &q).unwrap();
        let xinv: Vec<f64> = x.iter().map(|v| -v).collect();
        let mirrored = convolve_at(&h, &reflect(&g), &reflect(&f), &xinv, &q).unwrap();
        assert!((direct - mirrored).abs() < 1e-8 * direct.abs(), "{x:?}");
    }
}

#[test]
fn theorem_holds_numerically_on_h1() {
    let h = heisenberg(1);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let q = QuadratureSpec::default_for(1.0);
    for alpha in [mi(&[0, 0, 1]), mi(&[1, 0, 1]), mi(&[0, 1, 2])] {
        let r = check_theorem_numeric(&h, &alpha, &f, &f, &points(), &q).unwrap();
        assert!(r.max_rel_err <= 1e-6, "({alpha}): {}", r.max_rel_err);
    }
}

#[test]
fn theorem_holds_with_offset_centers() {
    let h = heisenberg(1);
    let f = GaussianSpec::new(vec![0.3, 0.0, -0.2], 1.0).unwrap();
    let g = GaussianSpec::new(vec![0.0, -0.5, 0.4], 2.0).unwrap();
    let q = QuadratureSpec::default_for(1.0);
    let r = check_theorem_numeric(&h, &mi(&[1, 1, 1]), &f, &g, &points(), &q).unwrap();
    assert!(r.max_rel_err <= 1e-6, "{}", r.max_rel_err);
}

#[test]
fn abelian_binomial_rule_holds() {
    let t = abelian(3, 2);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let r = check_theorem_numeric(&t, &mi(&[1, 0, 0]), &f, &f, &points(), &QuadratureSpec::default_for(1.0)).unwrap();
    assert!(r.max_rel_err <= 1e-8, "{}", r.max_rel_err);
}

/// The two sides use different integration variables, so even here they
/// differ by quadrature error.
#[test]
fn zero_alpha_sides_agree() {
    let h = heisenberg(1);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let r = check_theorem_numeric(&h, &mi(&[0, 0, 0]), &f, &f, &points(), &QuadratureSpec::default_for(1.0)).unwrap();
    assert!(r.max_rel_err < 1e-9, "{}", r.max_rel_err);
}

#[test]
fn error_shrinks_with_more_points() {
    let h = heisenberg(1);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let errs =
        refinement_errors(&h, &mi(&[0, 0, 1]), &f, &f, &points(), &QuadratureSpec::default_for(1.0), &[8, 12, 16, 24])
            .unwrap();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn trapezoid_rule_agrees() {
    let h = heisenberg(1);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let q = QuadratureSpec::new(6.0, 48, QuadratureRule::Trapezoid).unwrap();
    let r = check_theorem_numeric(&h, &mi(&[0, 0, 1]), &f, &f, &points(), &q).unwrap();
    assert!(r.max_rel_err <= 1e-6, "{}", r.max_rel_err);
}

#[test]
fn report_serializes() {
    let h = heisenberg(1);
    let f = GaussianSpec::standard(3, 1.0).unwrap();
    let r =
        check_theorem_numeric(&h, &mi(&[0, 0, 1]), &f, &f, &points()[..1], &QuadratureSpec::default_for(1.0)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["alpha"], serde_json::json!([0, 0, 1]));
    assert_eq!(v["per_point"].as_array().unwrap().len(), 1);
    assert!(v["max_rel_err"].is_number());
}
