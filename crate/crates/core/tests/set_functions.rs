use pmmeas_core::generate::corrupt_at;
use pmmeas_core::measures::{
    aggregate, build_dirac, check_all_pairs_inequality, check_characterization, classify, transform,
    FiniteSetFunction, MeasureError, NumericSetFunction, PointwiseAggregation, TransformMode,
};
use pmmeas_core::{DeltaOp, DiscreteDDF, LOp, ScalarOp, Subset, Universe};

fn u(n: usize) -> Universe {
    Universe::of_size(n).unwrap()
}

fn additive(w: &[f64]) -> FiniteSetFunction {
    build_dirac(&NumericSetFunction::additive(u(w.len()), w).unwrap())
}

#[test]
fn generator_json_builds_a_measure() {
    let text = r#"{
        "universe": ["a", "b", "c"],
        "generator": {"type": "dirac-additive", "weights": [1, 2, 4]}
    }"#;
    let g: FiniteSetFunction = serde_json::from_str(text).unwrap();
    assert_eq!(g.get(Subset(0b101)), &DiscreteDDF::epsilon(5.0).unwrap());
    let c = classify(&g, &DeltaOp::tau_t(ScalarOp::Product), 1e-9).unwrap();
    assert!(c.is_measure && c.is_antimonotone);
    assert_eq!(c.disjoint_pairs, 27);
}

#[test]
fn table_json_roundtrips_and_rejects_bad_keys() {
    let g = additive(&[1.0, 2.0]);
    let text = serde_json::to_string(&g).unwrap();
    let back: FiniteSetFunction = serde_json::from_str(&text).unwrap();
    assert_eq!(back, g);

    let missing = r#"{"universe": ["a", "b"], "table": {"01": {"atoms": [[1, 1]], "inf_mass": 0}}}"#;
    assert!(serde_json::from_str::<FiniteSetFunction>(missing).is_err());
    let stray = r#"{"universe": ["a"], "table": {"1": {"atoms": [[1, 1]], "inf_mass": 0}, "11": {"atoms": [[1, 1]], "inf_mass": 0}}}"#;
    assert!(serde_json::from_str::<FiniteSetFunction>(stray).is_err());
    let both = r#"{"universe": ["a"], "table": {}, "generator": {"type": "dirac-additive", "weights": [1]}}"#;
    assert!(serde_json::from_str::<FiniteSetFunction>(both).is_err());
}

#[test]
fn empty_set_must_map_to_eps_zero() {
    let values = vec![DiscreteDDF::epsilon(1.0).unwrap(), DiscreteDDF::epsilon(1.0).unwrap()];
    assert!(matches!(
        FiniteSetFunction::new(u(1), values),
        Err(MeasureError::EmptySetNotIdentity(_))
    ));
}

#[test]
fn pi_m_witness_has_distinct_values() {
    let g = additive(&[1.0, 2.0, 4.0]);
    let c = classify(&g, &DeltaOp::pi_top(ScalarOp::Minimum), 1e-9).unwrap();
    assert!(!c.is_measure);
    let w = c.measure_witness.unwrap();
    assert_ne!(w.e, w.f);
    // eps_(a+b) >= eps_max(a,b) would need a + b <= max(a, b)
    assert!(!c.is_submeasure);
}

#[test]
fn maxitive_dirac_is_a_pi_m_measure() {
    let g = build_dirac(&NumericSetFunction::maxitive(u(3), &[1.0, 2.0, 4.0]).unwrap());
    assert!(classify(&g, &DeltaOp::pi_top(ScalarOp::Minimum), 1e-9).unwrap().is_measure);
    let tt = DeltaOp::tau_t(ScalarOp::Minimum);
    let c = classify(&g, &tt, 1e-9).unwrap();
    assert!(c.is_submeasure && !c.is_measure);
    assert!(check_all_pairs_inequality(&g, &tt, 1e-9).unwrap().passed);
}

#[test]
fn characterization_detects_each_single_corruption() {
    let g = additive(&[0.5, 1.25, 2.0, 3.5]);
    let tau = DeltaOp::tau_t(ScalarOp::Lukasiewicz);
    let rep = check_characterization(&g, &tau, 1e-9).unwrap();
    assert!(rep.identity_holds && rep.agree);
    assert_eq!(rep.pairs_checked, 256);
    for target in g.universe().subsets().filter(|s| !s.is_empty()) {
        let rep = check_characterization(&corrupt_at(&g, target), &tau, 1e-9).unwrap();
        assert!(!rep.identity_holds, "missed corruption at {}", g.universe().bits(target));
        assert!(rep.agree);
    }
}

#[test]
fn transforms_refuse_inputs_that_are_not_measures() {
    let g = additive(&[1.0, 2.0, 3.0]);
    let bad = corrupt_at(&g, Subset(0b011));
    let tau = DeltaOp::tau_t(ScalarOp::Product);
    assert!(matches!(
        transform(&TransformMode::CombineTau, &[&g, &bad], &tau, 1e-9),
        Err(MeasureError::InputNotMeasure { index: 1, .. })
    ));
    let other = additive(&[1.0, 2.0]);
    assert!(matches!(
        transform(&TransformMode::CombineTau, &[&g, &other], &tau, 1e-9),
        Err(MeasureError::UniverseMismatch)
    ));
}

#[test]
fn theta_combination_reports_dominance() {
    let g1 = additive(&[1.0, 2.0, 3.0]);
    let g2 = additive(&[0.5, 4.0, 1.5]);
    let out = transform(
        &TransformMode::CombineTheta(DeltaOp::pi_top(ScalarOp::Minimum)),
        &[&g1, &g2],
        &DeltaOp::tau_t(ScalarOp::Lukasiewicz),
        1e-9,
    )
    .unwrap();
    assert!(out.classification.is_submeasure);
    assert!(out.dominance.unwrap().passed);
}

#[test]
fn aggregation_reports_its_premises() {
    let g1 = additive(&[1.0, 2.0]);
    let g2 = additive(&[3.0, 0.5]);
    // whatever the sampled premises say, the outcome carries the verdicts
    let tau = DeltaOp::tau_t(ScalarOp::Minimum);
    let out = aggregate(PointwiseAggregation::Product, &[&g1, &g2], &tau, &[tau.clone(), tau.clone()], 1e-9).unwrap();
    assert!(out.boundary);
    assert_eq!(out.premises_verified, out.dominance.passed && out.order.passed);
    let mean = aggregate(
        PointwiseAggregation::Mean,
        &[&g1, &g2],
        &DeltaOp::tau_la(LOp::Plus, ScalarOp::Lukasiewicz),
        &[DeltaOp::tau_la(LOp::Plus, ScalarOp::Lukasiewicz), DeltaOp::tau_la(LOp::Plus, ScalarOp::Lukasiewicz)],
        1e-9,
    )
    .unwrap();
    assert!(mean.premises_verified && mean.classification.is_submeasure);
}
