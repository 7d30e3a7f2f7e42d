use milnor_core::class_engine::{compute_report, Route, VarietyKind};
use milnor_core::{validate, ChowClass, ClassReport, CompleteIntersectionSpec, Error, Verdict};

fn report(json: &str, routes: &[Route]) -> ClassReport {
    let spec: CompleteIntersectionSpec = serde_json::from_str(json).unwrap();
    compute_report(&validate(spec).unwrap(), routes).unwrap()
}

fn class(n: usize, c: &[i64]) -> ChowClass {
    ChowClass::from_ints(n, c).unwrap()
}

const P4_EXAMPLE: &str = include_str!("../../cli/fixtures/p4-example.json");
const TANGENT_PLANE: &str = include_str!("../../cli/fixtures/quadric-tangent-plane.json");
const PLANE_PAIR: &str = include_str!("../../cli/fixtures/plane-pair-p3.json");
const TWO_PAIRS: &str = include_str!("../../cli/fixtures/two-plane-pairs-p4.json");

#[test]
fn p4_example_all_routes() {
    let r = report(P4_EXAMPLE, &Route::ALL);
    let z1 = r.variety("Z1").unwrap();
    assert_eq!(z1.cfj, class(4, &[0, 2, 6, 8, 4]));
    assert_eq!(z1.csm.as_ref().unwrap().class, class(4, &[0, 2, 7, 9, 5]));
    assert_eq!(z1.verdict, Verdict::Agree);
    for route in Route::ALL {
        assert_eq!(z1.route(route), Some(&class(4, &[0, 0, 1, 1, 1])), "{route}");
    }
    let x = r.variety("Z1∩Z2").unwrap();
    assert_eq!(x.kind, VarietyKind::Intersection);
    assert_eq!(x.csm_product.as_ref(), Some(&class(4, &[0, 0, 2, 5, 4])));
    assert_eq!(x.euler_characteristic.as_deref(), Some("4"));
    assert_eq!(x.route(Route::Aluffi), None);
    for route in [
        Route::Definition,
        Route::Thm1,
        Route::Expansion,
        Route::Cor11,
        Route::Pp,
    ] {
        assert_eq!(x.route(route), Some(&class(4, &[0, 0, 0, -1])), "{route}");
    }
    assert!(!r.has_disagreement());
    assert!(r.warnings[0].contains("transversality"));
}

#[test]
fn milnor_class_vanishes_below_singular_codimension() {
    let r = report(P4_EXAMPLE, &Route::ALL);
    let m = r.variety("Z1").unwrap().route(Route::Pp).unwrap();
    // Sing(Z1) has codimension 2 in P^4
    assert_eq!(m.lowest_degree(), Some(2));
}

#[test]
fn odd_ambient_dimension() {
    let r = report(PLANE_PAIR, &Route::ALL);
    let y = r.variety("Y").unwrap();
    assert_eq!(y.verdict, Verdict::Agree);
    // cfj = 2H + 4H^2 + 4H^3, csm of two planes through a line = 2H + 5H^2 + 4H^3
    assert_eq!(y.cfj, class(3, &[0, 2, 4, 4]));
    assert_eq!(y.csm.as_ref().unwrap().class, class(3, &[0, 2, 5, 4]));
    assert_eq!(y.route(Route::Aluffi), Some(&class(3, &[0, 0, -1])));
}

#[test]
fn two_singular_factors() {
    let r = report(TWO_PAIRS, &Route::ALL);
    let x = r.variety("A∩B").unwrap();
    assert_eq!(x.verdict, Verdict::Agree);
    // four planes through a point, meeting in four lines: chi = 5
    assert_eq!(x.euler_characteristic.as_deref(), Some("5"));
    assert_eq!(x.route(Route::Pp), x.route(Route::Definition));
}

#[test]
fn non_transversal_input_disagrees() {
    let r = report(TANGENT_PLANE, &Route::ALL);
    assert!(!r.transversality_asserted);
    let x = r.variety("Q∩T").unwrap();
    assert_eq!(x.route(Route::Definition), Some(&class(3, &[0, 0, 0, 1])));
    assert_eq!(x.route(Route::Thm1), Some(&ChowClass::zero(3)));
    assert_eq!(x.verdict, Verdict::Disagree);
    assert!(r.warnings.iter().any(|w| w.contains("NOT asserted")));
}

#[test]
fn route_selection_is_respected() {
    let r = report(P4_EXAMPLE, &[Route::Aluffi, Route::Aluffi]);
    let z1 = r.variety("Z1").unwrap();
    assert_eq!(z1.milnor.len(), 1);
    assert_eq!(z1.verdict, Verdict::Single);
    // aluffi alone raises no transversality banner
    assert!(r.warnings.is_empty());
}

#[test]
fn non_integral_classes_are_rejected() {
    let json = include_str!("../../cli/fixtures/nodal-cubic.json").replace("[0, 3, 1]", "[0, 3, \"1/2\"]");
    let spec: CompleteIntersectionSpec = serde_json::from_str(&json).unwrap();
    let err = compute_report(&validate(spec).unwrap(), &Route::ALL).unwrap_err();
    assert!(
        matches!(err, Error::NonIntegral { ref route, .. } if route == "definition"),
        "{err}"
    );
}

#[test]
fn report_json_round_trips() {
    let r = report(P4_EXAMPLE, &Route::ALL);
    let text = serde_json::to_string(&r).unwrap();
    let back: ClassReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}
