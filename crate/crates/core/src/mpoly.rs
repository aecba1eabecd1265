//! Polynomials over `F_q` in `t_1..t_m`, truncated above a total degree.
//!
//! The ring is `F_q[t]/(monomials of degree > D)`. Specialization reads a
//! stored element as the polynomial it literally is.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ff::{FFElem, FieldDesc};
use crate::ring::Ring;
use crate::series::{LSeries, SeriesCtx};

pub const DEFAULT_MAX_DEG: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MPolyError {
    #[error("no value assigned to t{0}")]
    MissingVariable(usize),
    #[error("t{var} is assigned a series of negative valuation")]
    NegativeValuation { var: usize },
    #[error("exponent vector {0:?} has the wrong number of variables")]
    BadExponents(Vec<u32>),
    #[error("assigned series live in a context other than the target")]
    CtxMismatch,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPolyRing {
    field: FieldDesc,
    nvars: usize,
    max_deg: u32,
}

impl fmt::Debug for MPolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[t1..t{}]/deg>{}", self.field.id(), self.nvars, self.max_deg)
    }
}

/// Sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, FFElem>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}){}", mono.join(""))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl MPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FFElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<FFElem> {
        self.terms.get(exps).copied()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl MPolyRing {
    pub fn new(field: FieldDesc, nvars: usize, max_deg: u32) -> Self {
        MPolyRing { field, nvars, max_deg }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    fn insert(&self, terms: &mut BTreeMap<Vec<u32>, FFElem>, e: Vec<u32>, c: FFElem) {
        if c.is_zero() || e.iter().sum::<u32>() > self.max_deg {
            return;
        }
        match terms.get_mut(&e) {
            Some(x) => {
                *x = self.field.add(*x, c);
                if x.is_zero() {
                    terms.remove(&e);
                }
            }
            None => {
                terms.insert(e, c);
            }
        }
    }

    /// `t_i` for `0 <= i < nvars`.
    pub fn var(&self, i: usize) -> MPoly {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        self.monomial(self.field.one(), e).expect("valid variable")
    }

    pub fn constant(&self, c: FFElem) -> MPoly {
        self.monomial(c, vec![0; self.nvars]).expect("valid constant")
    }

    pub fn monomial(&self, c: FFElem, exps: Vec<u32>) -> Result<MPoly, MPolyError> {
        if exps.len() != self.nvars {
            return Err(MPolyError::BadExponents(exps));
        }
        let mut terms = BTreeMap::new();
        self.insert(&mut terms, exps, c);
        Ok(MPoly { terms })
    }

    pub fn from_terms(&self, terms: &[(FFElem, Vec<u32>)]) -> Result<MPoly, MPolyError> {
        let mut out = BTreeMap::new();
        for (c, e) in terms {
            if e.len() != self.nvars {
                return Err(MPolyError::BadExponents(e.clone()));
            }
            self.insert(&mut out, e.clone(), *c);
        }
        Ok(MPoly { terms: out })
    }

    /// Constant term.
    pub fn at_origin(&self, a: &MPoly) -> FFElem {
        a.coeff(&vec![0; self.nvars]).unwrap_or(self.field.zero())
    }

    /// Coefficients of `t_1, ..., t_m`: the differential at the origin.
    pub fn linear_part(&self, a: &MPoly) -> Vec<FFElem> {
        (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                a.coeff(&e).unwrap_or(self.field.zero())
            })
            .collect()
    }

    /// Substitute `t_i -> values[i]` in the series ring `ctx`.
    pub fn specialize(&self, a: &MPoly, values: &[LSeries], ctx: &SeriesCtx) -> Result<LSeries, MPolyError> {
        if values.len() < self.nvars {
            return Err(MPolyError::MissingVariable(values.len() + 1));
        }
        for (i, v) in values.iter().enumerate() {
            if v.ctx() != ctx {
                return Err(MPolyError::CtxMismatch);
            }
            if v.ord_bound().is_some_and(|o| o < 0) {
                return Err(MPolyError::NegativeValuation { var: i + 1 });
            }
        }
        let emb = crate::ff::Embedding::new(&self.field, ctx.residue()).map_err(|_| MPolyError::CtxMismatch)?;
        let mut acc = ctx.zero();
        for (e, c) in &a.terms {
            let mut term = ctx.constant(emb.apply(*c));
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&values[i].pow_u(k as u64));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl Ring for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::default()
    }
    fn one(&self) -> MPoly {
        self.constant(self.field.one())
    }
    fn from_int(&self, k: i64) -> MPoly {
        self.constant(self.field.from_int(k))
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut terms = a.terms.clone();
        for (e, c) in &b.terms {
            self.insert(&mut terms, e.clone(), *c);
        }
        MPoly { terms }
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        MPoly {
            terms: a.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(*c))).collect(),
        }
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.insert(&mut terms, e, self.field.mul(*ca, *cb));
            }
        }
        MPoly { terms }
    }
    fn frob(&self, a: &MPoly) -> MPoly {
        let p = self.field.p() as u32;
        let mut terms = BTreeMap::new();
        for (e, c) in &a.terms {
            let e: Vec<u32> = e.iter().map(|x| x * p).collect();
            self.insert(&mut terms, e, self.field.frobenius(*c, 1));
        }
        MPoly { terms }
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.terms.is_empty()
    }
    fn characteristic(&self) -> u64 {
        self.field.p()
    }
}
