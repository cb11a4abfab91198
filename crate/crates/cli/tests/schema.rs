use gcs_cli::report::{Item, Report};
use gcs_cli::schema::{ClosureDto, ConstructionDto, ElementDto, StateDto};
use gcs_cli::RunConfig;
use gcs_core::algebra::{random_element, Context, Variable};
use gcs_core::entangle::{catalog_construct, catalog_ids, CatalogParams, Factor, ProductRecipe};
use gcs_core::ledger::Discrepancy;
use gcs_core::qstate::check_squeeze_closure;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn graded_states_round_trip(n in 2u32..=4, scale_re in -2.0f64..2.0, scale_im in -2.0f64..2.0) {
        let ctx = Context::new(n).unwrap();
        let d = n as usize;
        let state = ProductRecipe::product(vec![
            Factor::coherent(Variable::theta(1), d),
            Factor::coherent(Variable::theta_bar(2), d),
        ])
        .build(&ctx)
        .unwrap()
        .scale(num_complex::Complex64::new(scale_re, scale_im));
        let dto = StateDto::from_graded(&state);
        let text = serde_json::to_string(&dto).unwrap();
        let back: StateDto = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &dto);
        prop_assert_eq!(back.to_graded(&ctx).unwrap().distance(&state), 0.0);
    }

    #[test]
    fn elements_round_trip(n in 2u32..=5, seed: u64) {
        let ctx = Context::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vs = [Variable::theta(1), Variable::theta_bar(1), Variable::theta(2)];
        let e = random_element(&ctx, &vs, 6, &mut rng);
        let dto = ElementDto::from_element(&e);
        let back: ElementDto = serde_json::from_str(&serde_json::to_string(&dto).unwrap()).unwrap();
        prop_assert_eq!(back.to_element(&ctx).unwrap().distance(&e), 0.0);
    }
}

#[test]
fn state_json_has_the_documented_shape() {
    let ctx = Context::new(2).unwrap();
    let state = ProductRecipe::product(vec![Factor::coherent(Variable::theta(1), 2)]).build(&ctx).unwrap();
    let v = serde_json::to_value(StateDto::from_graded(&state)).unwrap();
    assert_eq!(v["grade_n"], 2);
    assert_eq!(v["sites"], serde_json::json!([2]));
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        assert_eq!(t["coeff"].as_array().unwrap().len(), 2);
        assert!(t["monomial"].is_object());
        assert!(t["ket"].is_array());
    }
    assert!(terms.iter().any(|t| t["monomial"] == serde_json::json!({"t1": 1}) && t["ket"] == serde_json::json!([1])));
}

#[test]
fn construction_results_serialize_for_every_entry() {
    for id in catalog_ids() {
        let r = catalog_construct(id, &CatalogParams::default()).unwrap();
        let dto = ConstructionDto::from_result(&r);
        let back: ConstructionDto = serde_json::from_str(&serde_json::to_string(&dto).unwrap()).unwrap();
        assert_eq!(back, dto, "{id}");
        let plain = back.computed.to_plain().unwrap();
        assert!(plain.distance(&r.computed) < 1e-15, "{id}");
    }
}

#[test]
fn reports_round_trip() {
    let items = vec![
        Item::pass("b", "fine").with("x", 1.25),
        Item::flagged("a", "printed value differs", &[Discrepancy::SqueezeConstant]).with("v", [1.0, -0.0]),
    ];
    let closure = serde_json::to_value(ClosureDto::from_report(&check_squeeze_closure(3).unwrap())).unwrap();
    let r = Report::new(vec!["verify".into()], RunConfig::default(), items, Some(closure));
    assert_eq!(r.items[0].id, "a");
    assert_eq!(r.ledger.len(), 1);
    assert!(r.is_well_formed());
    let back: Report = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
}

#[test]
#[should_panic(expected = "ledger reference")]
fn flagged_items_need_a_ledger_reference() {
    let _ = Item::flagged("x", "no reason", &[]);
}
