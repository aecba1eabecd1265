use hwcyclic::btgroup::{companion, BTDesc};
use hwcyclic::ff::FieldDesc;
use hwcyclic::gltheory::ModMatrix;
use hwcyclic::json::{self, BtJson, ElemJson, ModMatrixJson, NPgonJson, SeriesJson};
use hwcyclic::semilinear::SigmaMat;
use hwcyclic::series::SeriesCtx;
use hwcyclic::strata::enumerate_np;
use proptest::prelude::*;

proptest! {
    #[test]
    fn series_round_trip(p in prop::sample::select(vec![2u64, 3, 5]), coeffs in prop::collection::vec(0i64..5, 0..10),
                         shift in -3i64..3, prec in prop::option::of(8i64..20)) {
        let ctx = SeriesCtx::base(FieldDesc::new(p, 1).unwrap());
        let s = ctx.from_ints(&coeffs, prec).shift(shift);
        let v = json::series_to_json(&s);
        let back: SeriesJson = serde_json::from_value(v).unwrap();
        prop_assert_eq!(json::series(&ctx, &back, "s").unwrap(), s);
    }

    #[test]
    fn field_matrix_round_trip(n in 1u32..3, vals in prop::collection::vec(0u64..16, 4)) {
        let f = FieldDesc::new(2, n).unwrap();
        let m: Vec<Vec<_>> = (0..2).map(|i| (0..2).map(|j| f.from_value(vals[2 * i + j] % f.size()).unwrap()).collect()).collect();
        let b = BTDesc::new(2, 1, SigmaMat::new(f.clone(), m).unwrap()).unwrap();
        let v = json::bt_field_to_json(&b);
        let back: BtJson<ElemJson> = serde_json::from_value(v.clone()).unwrap();
        let b2 = json::bt_field(&back).unwrap();
        prop_assert_eq!(json::bt_field_to_json(&b2), v);
    }

    #[test]
    fn mod_matrix_round_trip(vals in prop::collection::vec(-50i64..50, 4)) {
        let Ok(m) = ModMatrix::new(2, 3, 2, &[vals[..2].to_vec(), vals[2..].to_vec()]) else { return Ok(()) };
        let back: ModMatrixJson = serde_json::from_value(json::mod_matrix_to_json(&m)).unwrap();
        prop_assert_eq!(json::mod_matrix(&back).unwrap(), m);
    }
}

#[test]
fn series_matrix_round_trip() {
    let ctx = SeriesCtx::new(FieldDesc::new(3, 1).unwrap(), 2, 40).unwrap();
    let a = vec![ctx.from_ints(&[0, 1, 2], Some(9)), ctx.from_ints(&[1], None)];
    let b = BTDesc::new(2, 1, companion(&ctx, &a)).unwrap();
    let v = json::bt_series_to_json(&b);
    let back: BtJson<SeriesJson> = serde_json::from_value(v.clone()).unwrap();
    let b2 = json::bt_series(&back, 64).unwrap();
    assert_eq!(b2.hw, b.hw);
    assert_eq!(json::bt_series_to_json(&b2), v);
}

#[test]
fn polygon_round_trip() {
    for b in enumerate_np(3, 2, false).unwrap() {
        let v = json::npgon_to_json(&b);
        let back: NPgonJson = serde_json::from_value(v).unwrap();
        assert_eq!(json::npgon(&back).unwrap(), b);
    }
}

#[test]
fn rendering_is_sorted_and_stable() {
    let v = serde_json::json!({"z": 1, "a": [1, 2], "m": {"y": 0, "b": 1}});
    let s = json::render(&v);
    assert!(s.find("\"a\"").unwrap() < s.find("\"m\"").unwrap());
    assert!(s.find("\"b\"").unwrap() < s.find("\"y\"").unwrap());
    assert!(s.ends_with("}\n"));
    assert_eq!(s, json::render(&serde_json::from_str(&s).unwrap()));
}
