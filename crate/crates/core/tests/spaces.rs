use pmmeas_core::generate::{dirac_space, random_metric, rng_for};
use pmmeas_core::hausdorff::{
    check_lambda_theorem, enumerate_measurable, HausdorffContext, HausdorffError, TheoremStatus,
};
use pmmeas_core::measures::{build_dirac, NumericSetFunction, PointwiseAggregation};
use pmmeas_core::ppm::{
    check_translation_invariance, from_submeasure, preceq, product_space, FinitePpMSpace, Oplus, PpmError,
    PseudoMetric,
};
use pmmeas_core::{DeltaOp, DiscreteDDF, ScalarOp, Subset, Universe};

fn tau() -> DeltaOp {
    DeltaOp::tau_t(ScalarOp::Minimum)
}

fn additive(w: &[f64]) -> pmmeas_core::measures::FiniteSetFunction {
    build_dirac(&NumericSetFunction::additive(Universe::of_size(w.len()).unwrap(), w).unwrap())
}

#[test]
fn generated_pseudo_metric_is_symmetric_difference_distance() {
    let g = additive(&[1.0, 2.0, 4.0]);
    let rho = PseudoMetric::generated(&g, &tau(), 1e-9).unwrap();
    assert_eq!(rho.get(Subset(0b011), Subset(0b110)), &DiscreteDDF::epsilon(5.0).unwrap());
    let space = from_submeasure(&g, &tau(), 1e-9).unwrap();
    let rep = space.verify(1e-9).unwrap();
    assert!(rep.passed && rep.triangle_exhaustive);
    assert!(check_translation_invariance(&space, 1e-9).passed);
}

#[test]
fn non_antimonotone_input_is_refused() {
    let mut g = additive(&[1.0, 2.0]).values().to_vec();
    g[3] = DiscreteDDF::epsilon(0.5).unwrap();
    let g = pmmeas_core::measures::FiniteSetFunction::new(Universe::of_size(2).unwrap(), g).unwrap();
    assert!(matches!(
        PseudoMetric::generated(&g, &tau(), 1e-9),
        Err(PpmError::InputNotAntimonotoneSubmeasure(_))
    ));
}

#[test]
fn join_is_the_pointwise_minimum_and_orders_members() {
    let r1 = PseudoMetric::generated(&additive(&[1.0, 2.0]), &tau(), 1e-9).unwrap();
    let r2 = PseudoMetric::generated(&additive(&[3.0, 0.5]), &tau(), 1e-9).unwrap();
    let join = Oplus::pi_m(tau());
    let j = join.apply(&r1, &r2).unwrap();
    assert!(preceq(&r1, &j, 1e-9).unwrap() || preceq(&j, &r1, 1e-9).unwrap());
    assert!(join.apply(&j, &r1).unwrap().approx_eq(&j, 1e-9));
    let nu = PseudoMetric::neutral(r1.universe().clone());
    assert!(preceq(&nu, &r1, 1e-9).unwrap());
}

#[test]
fn space_json_roundtrip() {
    let space = from_submeasure(&additive(&[1.0, 2.0]), &tau(), 1e-9).unwrap();
    let text = serde_json::to_string(&space).unwrap();
    let back: FinitePpMSpace = serde_json::from_str(&text).unwrap();
    assert_eq!(back.len(), 4);
    assert_eq!(back.dist(1, 2), space.dist(1, 2));
}

#[test]
fn product_of_two_point_spaces() {
    let a = dirac_space(&[vec![0.0, 1.0], vec![1.0, 0.0]], tau());
    let b = dirac_space(&[vec![0.0, 3.0], vec![3.0, 0.0]], tau());
    let out = product_space(&[&a, &b], PointwiseAggregation::Min, &tau(), 7, 1e-9).unwrap();
    assert_eq!(out.space.len(), 4);
    // min of eps_1 and eps_3 pointwise is eps_3
    assert_eq!(out.space.dist(0, 3), &DiscreteDDF::epsilon(3.0).unwrap());
    assert!(out.space.verify(1e-9).unwrap().passed);
}

#[test]
fn product_rejects_oversized_results() {
    let g = additive(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    let s = from_submeasure(&g, &tau(), 1e-9).unwrap();
    assert!(matches!(
        product_space(&[&s, &s, &s], PointwiseAggregation::Min, &tau(), 0, 1e-9),
        Err(PpmError::ProductTooLarge(_))
    ));
}

#[test]
fn hausdorff_distances_on_a_line() {
    // points 0, 1, 3 on a line
    let d = vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 2.0], vec![3.0, 2.0, 0.0]];
    let ctx = HausdorffContext::new(dirac_space(&d, tau())).unwrap();
    let eps = |a: f64| DiscreteDDF::epsilon(a).unwrap();
    assert_eq!(ctx.prob_diameter(Subset(0b111)).unwrap(), eps(3.0));
    assert_eq!(ctx.prob_diameter(Subset::EMPTY), Err(HausdorffError::EmptySet));
    // the sup over q picks the nearest point of F
    assert_eq!(ctx.prob_distance(Subset(0b010), Subset(0b101)), eps(1.0));
    // the inf over p picks the farthest point of E
    assert_eq!(ctx.prob_distance(Subset(0b101), Subset(0b010)), eps(2.0));
    assert_eq!(ctx.hausdorff_distance(Subset(0b001), Subset(0b100)).unwrap(), eps(3.0));
    assert_eq!(ctx.lambda_h(Subset(0b110)).unwrap(), eps(3.0));
    assert_eq!(ctx.lambda_h(Subset(0b111)).unwrap(), DiscreteDDF::at_infinity());
}

#[test]
fn lambda_laws_and_measurable_sets_on_random_spaces() {
    let mut rng = rng_for(11, "spaces-test");
    for _ in 0..3 {
        let d = random_metric(&mut rng, 4, 1.0, 5.0);
        let ctx = HausdorffContext::new(dirac_space(&d, tau())).unwrap();
        let rep = check_lambda_theorem(&ctx, 1e-9).unwrap();
        assert_eq!(rep.status, TheoremStatus::Pass);
        let m = enumerate_measurable(&ctx, &tau(), 1e-9).unwrap();
        assert!(m.structure_holds());
        assert!(m.trivial);
        assert_eq!(m.lambda_full, DiscreteDDF::at_infinity());
    }
}
