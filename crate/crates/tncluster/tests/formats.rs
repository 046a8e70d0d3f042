use proptest::prelude::*;
use tncluster::format::*;
use tncluster_core::affine::{ModuleLabel, SpectralParam};
use tncluster_core::lattice::Weight;
use tncluster_core::multiseg::Multisegment;
use tncluster_core::quiver::{initial_quiver, seed_from_quiver, truncated_quiver, Window};

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, -5i64..5), 0..6)
}

fn param() -> impl Strategy<Value = SpectralParam> {
    (0i64..12, -30i64..30).prop_map(|(z, e)| SpectralParam::new(z, e))
}

fn label() -> impl Strategy<Value = ModuleLabel> {
    prop_oneof![
        Just(ModuleLabel::Unit),
        Just(ModuleLabel::Zero),
        (1i64..6, param()).prop_map(|(i, p)| ModuleLabel::Fund(i, p)),
        (1i64..6, 1i64..6, param()).prop_map(|(i, m, p)| ModuleLabel::Kr(i, m, p)),
        ((1i64..6, param()), (1i64..6, param())).prop_map(|(a, b)| ModuleLabel::HeadPair(a, b)),
    ]
}

proptest! {
    #[test]
    fn weight_round_trip(lam in coeffs(), eps in coeffs()) {
        let w = Weight::from_parts(lam.into_iter().collect(), eps.into_iter().collect());
        let back = weight_from_json(&weight_to_json(&w)).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn multisegment_round_trip(segs in prop::collection::vec((-15i64..15, 0i64..6), 0..8)) {
        let pairs: Vec<(i64, i64)> = segs.into_iter().map(|(a, l)| (a, a + l)).collect();
        let ms = Multisegment::from_pairs(&pairs).unwrap();
        let back = multiseg_from_json(&multiseg_to_json(&ms)).unwrap();
        prop_assert_eq!(back, ms);
    }

    #[test]
    fn label_round_trip(l in label()) {
        prop_assert_eq!(label_from_json(&label_to_json(&l)).unwrap(), l);
    }
}

#[test]
fn quiver_round_trip() {
    for cap in 2..9 {
        let q = initial_quiver(Window::triangle(cap)).unwrap();
        assert_eq!(quiver_from_json(&quiver_to_json(&q)).unwrap(), q);
    }
    for n in 2..5 {
        let q = truncated_quiver(n, 8).unwrap();
        assert_eq!(quiver_from_json(&quiver_to_json(&q)).unwrap(), q);
    }
}

#[test]
fn seed_document_shape() {
    let q = truncated_quiver(3, 6).unwrap();
    let s = seed_from_quiver(&q, true).unwrap();
    let v: serde_json::Value = serde_json::from_str(&seed_to_json(&s)).unwrap();
    assert_eq!(v["coords"].as_array().unwrap().len(), s.vertices.len());
    assert_eq!(v["labels"].as_object().unwrap().len(), s.vertices.len());
    assert_eq!(v["vars"].as_object().unwrap().len(), s.vertices.len());
    for t in v["l"].as_array().unwrap() {
        assert_eq!(t.as_array().unwrap().len(), 3);
    }
}

#[test]
fn malformed_input_is_rejected() {
    assert!(weight_from_json("{\"eps\":{\"x\":1}}").is_err());
    assert!(weight_from_json("[1,2]").is_err());
    assert!(multiseg_from_json("[[3,1]]").is_err());
    assert!(multiseg_from_json("[[0]]").is_err());
    assert!(label_from_json("{\"kind\":\"Fund\"}").is_err());
    assert!(label_from_json("{\"kind\":\"Nope\"}").is_err());
    assert!(quiver_from_json("{\"window\":{}}").is_err());
    let mut v: serde_json::Value = serde_json::from_str(&quiver_to_json(&truncated_quiver(3, 5).unwrap())).unwrap();
    v["arrows"].as_array_mut().unwrap().push(serde_json::json!([0, 99999]));
    assert!(quiver_from_json(&v.to_string()).is_err());
}
