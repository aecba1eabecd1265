//! The minimal commutative-ring interface shared by matrix code.

use std::fmt;

use crate::ff::{FFElem, FieldDesc};

/// A commutative ring of characteristic `p` with its absolute Frobenius.
pub trait Ring: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, k: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a^p`.
    fn frob(&self, a: &Self::Elem) -> Self::Elem;
    /// True when no nonzero coefficient of `a` is known.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn characteristic(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn frob_n(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.frob(&x);
        }
        x
    }
}

impl Ring for FieldDesc {
    type Elem = FFElem;

    fn zero(&self) -> FFElem {
        FieldDesc::zero(self)
    }
    fn one(&self) -> FFElem {
        FieldDesc::one(self)
    }
    fn from_int(&self, k: i64) -> FFElem {
        FieldDesc::from_int(self, k)
    }
    fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FieldDesc::add(self, *a, *b)
    }
    fn neg(&self, a: &FFElem) -> FFElem {
        FieldDesc::neg(self, *a)
    }
    fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FieldDesc::mul(self, *a, *b)
    }
    fn frob(&self, a: &FFElem) -> FFElem {
        self.frobenius(*a, 1)
    }
    fn is_zero(&self, a: &FFElem) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn frob_n(&self, a: &FFElem, k: u32) -> FFElem {
        self.frobenius(*a, k)
    }
}
