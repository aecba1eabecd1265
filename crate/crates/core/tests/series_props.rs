use hwcyclic::ff::FieldDesc;
use hwcyclic::series::{int_rat, LSeries, SeriesCtx, Valuation};
use proptest::prelude::*;

fn ctx_for(p: u64) -> SeriesCtx {
    SeriesCtx::new(FieldDesc::new(p, 1).unwrap(), 1, 48).unwrap()
}

fn poly(c: &SeriesCtx, shift: usize, tail: &[i64]) -> LSeries {
    let mut v = vec![0i64; shift];
    v.push(1);
    v.extend_from_slice(tail);
    c.from_ints(&v, None)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

proptest! {
    #[test]
    fn valuation_is_additive(p in prime(), s1 in 0usize..6, s2 in 0usize..6,
                             a in prop::collection::vec(0i64..7, 0..6), b in prop::collection::vec(0i64..7, 0..6)) {
        let c = ctx_for(p);
        let x = poly(&c, s1, &a);
        let y = poly(&c, s2, &b);
        prop_assert_eq!(x.valuation(), Valuation::Finite(int_rat(s1 as i64)));
        prop_assert_eq!(x.mul(&y).valuation(), Valuation::Finite(int_rat((s1 + s2) as i64)));
    }

    #[test]
    fn frobenius_is_multiplicative_and_additive(p in prime(), a in prop::collection::vec(0i64..7, 1..6), b in prop::collection::vec(0i64..7, 1..6)) {
        let c = ctx_for(p);
        let x = c.from_ints(&a, None);
        let y = c.from_ints(&b, None);
        prop_assert_eq!(x.mul(&y).frobenius(), x.frobenius().mul(&y.frobenius()));
        prop_assert_eq!(x.add(&y).frobenius(), x.frobenius().add(&y.frobenius()));
        prop_assert_eq!(x.frobenius(), x.pow_u(p));
    }

    #[test]
    fn inverse_of_unit(p in prime(), a in prop::collection::vec(0i64..7, 0..6), s in 0usize..4) {
        let c = ctx_for(p);
        let x = poly(&c, s, &a);
        let y = x.inv().unwrap();
        prop_assert!(x.mul(&y).agrees_with(&c.one()));
        prop_assert_eq!(y.valuation(), Valuation::Finite(int_rat(-(s as i64))));
    }

    #[test]
    fn uniformizer_twists_compose(a in prop::collection::vec(0i64..2, 1..8), i in 0u64..4, j in 0u64..4) {
        let f = FieldDesc::new(2, 2).unwrap();
        let c = SeriesCtx::new(f.clone(), 3, 48).unwrap();
        let x = c.from_ints(&a, None);
        let g = f.primitive();
        let zi = f.pow_u(g, i);
        let zj = f.pow_u(g, j);
        prop_assert_eq!(x.twist_uniformizer(zi).twist_uniformizer(zj), x.twist_uniformizer(f.mul(zi, zj)));
    }
}

#[test]
fn precision_is_absolute() {
    let c = ctx_for(2);
    let x = c.from_ints(&[1, 1], Some(5));
    let y = c.t().shift(2);
    let s = x.mul(&y);
    assert_eq!(s.prec(), Some(8));
    assert_eq!(x.add(&c.one()).prec(), Some(5));
}
