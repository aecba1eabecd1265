mod common;

use hwcyclic::monodromy::{igusa_expected, igusa_tower, monodromy_certificate, tame_generator_matrix, tame_roots};
use hwcyclic::series::{rat, SeriesCtx};
use hwcyclic::ff::FieldDesc;
use proptest::prelude::*;

#[test]
fn roots_are_a_sorted_vector_space() {
    for inst in common::tame_corpus() {
        let sys = tame_roots(&inst.poly).unwrap();
        let p = inst.poly.p();
        assert!(sys.roots[0].is_exact_zero(), "{}", inst.name);
        let vals = sys.valuations();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{}", inst.name);
        for x in &sys.roots {
            let px = inst.poly.extend_into(&sys.ctx).unwrap().eval(x);
            assert!(px.ord_bound().is_none_or(|o| o >= sys.ctx.prec() / 2), "{}: P(root) = {px:?}", inst.name);
            for y in &sys.roots {
                assert!(sys.find(&x.add(y)).is_some(), "{}", inst.name);
            }
        }
        // coordinates are F_p-linear in the chosen basis
        for (k, x) in sys.roots.iter().enumerate() {
            let mut acc = sys.ctx.zero();
            for (b, &c) in sys.basis.iter().zip(&sys.coords[k]) {
                acc = acc.add(&sys.roots[*b].scale(sys.ctx.residue().from_int(c as i64)));
            }
            assert!(acc.agrees_with(x), "{}", inst.name);
            assert!(sys.coords[k].iter().all(|&c| c < p));
        }
    }
}

#[test]
fn certificate_divisors_divide_the_image() {
    for inst in common::tame_corpus() {
        let sys = tame_roots(&inst.poly).unwrap();
        let g = tame_generator_matrix(&sys).unwrap();
        let cert = monodromy_certificate(&inst.poly, None).unwrap();
        assert!(cert.tame, "{}", inst.name);
        for d in &cert.image_order_divisors {
            assert_eq!(g.order % d, 0, "{}: {d} vs {}", inst.name, g.order);
        }
        assert_eq!(g.order, sys.e as u64, "{}", inst.name);
    }
}

/// A second choice of root of unity gives a generator of the same cyclic group.
#[test]
fn generator_choice_gives_the_same_image() {
    for inst in common::tame_corpus() {
        let sys = tame_roots(&inst.poly).unwrap();
        let g = tame_generator_matrix(&sys).unwrap();
        let f = sys.ctx.residue();
        let e = sys.e as u64;
        for k in 1..e {
            if num_integer::gcd(k, e) != 1 {
                continue;
            }
            let h = hwcyclic::monodromy::tame_generator_matrix_with(&sys, f.pow_u(sys.zeta, k)).unwrap();
            let a = hwcyclic::gltheory::closure(std::slice::from_ref(&g.matrix), 1 << 16).unwrap();
            assert!(a.contains(&h.matrix), "{} k={k}", inst.name);
            assert_eq!(h.order, g.order);
        }
    }
}

proptest! {
    #[test]
    fn igusa_levels_shrink_by_p(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1usize..6) {
        let c = SeriesCtx::base(FieldDesc::new(p, 1).unwrap());
        let t = igusa_tower(p, &c.t(), &c.one(), n).unwrap();
        prop_assert_eq!(t.valuations.len(), n);
        for (i, v) in t.valuations.iter().enumerate() {
            prop_assert_eq!(v, &igusa_expected(p, i as u32 + 1));
        }
        for w in t.valuations.windows(2) {
            prop_assert_eq!(&w[1], &(&w[0] * rat(1, p as i64)));
        }
        prop_assert_eq!(t.valuations[n - 1].denom().clone(), (p.pow(n as u32 - 1) * (p - 1)).into());
    }
}
