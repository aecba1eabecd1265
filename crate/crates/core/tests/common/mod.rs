//! Shared fixtures for the integration targets.
#![allow(dead_code)]

use hwcyclic::ff::FieldDesc;
use hwcyclic::monodromy::AdditivePoly;
use hwcyclic::series::SeriesCtx;

/// `a_1, ..., a_c` as integer coefficient lists of `t`, constant first.
pub fn additive(p: u64, n: u32, a: &[&[i64]]) -> AdditivePoly {
    let ctx = SeriesCtx::base(FieldDesc::new(p, n).unwrap());
    AdditivePoly::new(a.iter().map(|c| ctx.from_ints(c, None)).collect()).unwrap()
}

pub struct Instance {
    pub name: &'static str,
    pub poly: AdditivePoly,
}

/// Tamely ramified additive polynomials whose roots are computed in full.
pub fn tame_corpus() -> Vec<Instance> {
    let mk = |name, p, n, a: &[&[i64]]| Instance { name, poly: additive(p, n, a) };
    vec![
        mk("x2+tx", 2, 1, &[&[0, 1]]),
        mk("x2+t2x", 2, 1, &[&[0, 0, 1]]),
        mk("x2+x", 2, 1, &[&[1]]),
        mk("x3+tx", 3, 1, &[&[0, 1]]),
        mk("x3+t2x", 3, 1, &[&[0, 0, 1]]),
        mk("x3+(1+t)x", 3, 1, &[&[1, 1]]),
        mk("x5+tx", 5, 1, &[&[0, 1]]),
        mk("x4+tx2+tx", 2, 1, &[&[0, 1], &[0, 1]]),
        mk("x4+tx2+tx/F4", 2, 2, &[&[0, 1], &[0, 1]]),
        mk("x4+t3x2+tx", 2, 1, &[&[0, 1], &[0, 0, 0, 1]]),
        mk("x4+tx", 2, 1, &[&[0, 1], &[]]),
        mk("x8+tx", 2, 1, &[&[0, 1], &[], &[]]),
        mk("x9+tx3+tx", 3, 1, &[&[0, 1], &[0, 1]]),
    ]
}
