//! Newton polygons `(i, v(c_i))` of polynomials over the series field.
//! A segment of slope `-s` and length `l` accounts for `l` roots of
//! valuation `s`.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{int_rat, LSeries, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NpError {
    #[error("need at least two points of finite height, got {0}")]
    TooFewPoints(usize),
    #[error("coefficient of X^{index} vanishes only to precision {bound}, which could change the polygon")]
    Indeterminate { index: usize, bound: String },
    #[error("leading coefficient (X^{0}) has no known nonzero term")]
    UnknownLeading(usize),
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, BigRational)>,
    /// `(slope, horizontal length)`, slopes strictly increasing.
    pub slopes: Vec<(BigRational, i64)>,
}

impl NewtonPolygon {
    /// Height of the polygon at `x`, linearly interpolated; `None` outside.
    pub fn height_at(&self, x: i64) -> Option<BigRational> {
        let first = self.vertices.first()?;
        if x < first.0 || x > self.vertices.last()?.0 {
            return None;
        }
        for w in self.vertices.windows(2) {
            let (x0, y0) = (&w[0].0, &w[0].1);
            let (x1, y1) = (&w[1].0, &w[1].1);
            if x >= *x0 && x <= *x1 {
                let t = BigRational::new((x - x0).into(), (x1 - x0).into());
                return Some(y0 + (y1 - y0) * t);
            }
        }
        Some(first.1.clone())
    }
}

fn cross(o: &(i64, BigRational), a: &(i64, BigRational), b: &(i64, BigRational)) -> BigRational {
    let ax = int_rat(a.0 - o.0);
    let bx = int_rat(b.0 - o.0);
    ax * (&b.1 - &o.1) - bx * (&a.1 - &o.1)
}

/// Lower convex hull; points of height `None` (infinite) are ignored.
pub fn np_hull(points: &[(i64, Option<BigRational>)]) -> Result<NewtonPolygon, NpError> {
    let mut pts: Vec<(i64, BigRational)> = points
        .iter()
        .filter_map(|(x, y)| y.clone().map(|y| (*x, y)))
        .collect();
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0); // keeps the lowest y for each x
    if pts.len() < 2 {
        return Err(NpError::TooFewPoints(pts.len()));
    }
    let mut hull: Vec<(i64, BigRational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= BigRational::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let slopes = hull
        .windows(2)
        .map(|w| {
            let dx = w[1].0 - w[0].0;
            ((&w[1].1 - &w[0].1) / int_rat(dx), dx)
        })
        .collect();
    Ok(NewtonPolygon { vertices: hull, slopes })
}

/// Root valuations of `sum f_i X^i`, counted in an algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootValuations {
    /// Multiplicity of the root `X = 0`.
    pub zero_roots: usize,
    /// `(valuation, multiplicity)`, valuations strictly decreasing.
    pub segments: Vec<(BigRational, usize)>,
    pub polygon: Option<NewtonPolygon>,
}

impl RootValuations {
    pub fn total(&self) -> usize {
        self.zero_roots + self.segments.iter().map(|s| s.1).sum::<usize>()
    }

    /// Flattened valuation list, one entry per nonzero root, sorted increasing.
    pub fn multiset(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self
            .segments
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
            .collect();
        out.sort();
        out
    }
}

/// Root valuations from the Newton polygon of a dense polynomial.
///
/// Exactly zero low-order coefficients give roots at `0`. A coefficient
/// that vanishes only to precision `N` is accepted when `(i, N)` already
/// lies on or above the polygon of the others, since its true height can
/// only be larger.
pub fn np_root_valuations(f: &[LSeries]) -> Result<RootValuations, NpError> {
    let deg = f
        .iter()
        .rposition(|c| !c.is_exact_zero())
        .ok_or(NpError::ZeroPolynomial)?;
    if f[deg].vanishes() {
        return Err(NpError::UnknownLeading(deg));
    }
    let low = f.iter().position(|c| !c.is_exact_zero()).unwrap();
    if f[low].is_zero_to_prec() {
        return Err(NpError::Indeterminate { index: low, bound: f[low].valuation().to_string() });
    }
    if low == deg {
        return Ok(RootValuations { zero_roots: low, segments: Vec::new(), polygon: None });
    }
    let mut pts = Vec::new();
    let mut pending = Vec::new();
    for (i, c) in f.iter().enumerate().take(deg + 1).skip(low) {
        match c.valuation() {
            Valuation::Finite(v) => pts.push((i as i64, Some(v))),
            Valuation::ZeroToPrecision(b) => pending.push((i, b)),
            Valuation::Infinite => {}
        }
    }
    let poly = np_hull(&pts)?;
    for (i, b) in pending {
        let h = poly.height_at(i as i64).expect("inside the polygon");
        if b < h {
            return Err(NpError::Indeterminate { index: i, bound: format!(">={b}") });
        }
    }
    let mut segments: Vec<(BigRational, usize)> = poly
        .slopes
        .iter()
        .map(|(s, l)| (-s.clone(), *l as usize))
        .collect();
    segments.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(RootValuations { zero_roots: low, segments, polygon: Some(poly) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldDesc;
    use crate::series::{rat, SeriesCtx};

    fn pts(v: &[(i64, i64, i64)]) -> Vec<(i64, Option<BigRational>)> {
        v.iter().map(|&(x, n, d)| (x, Some(rat(n, d)))).collect()
    }

    #[test]
    fn hull_examples() {
        let h = np_hull(&pts(&[(1, 1, 1), (2, 1, 1), (4, 0, 1)])).unwrap();
        assert_eq!(h.vertices, vec![(1, rat(1, 1)), (4, rat(0, 1))]);
        assert_eq!(h.slopes, vec![(rat(-1, 3), 3)]);
        assert_eq!(h.height_at(2), Some(rat(2, 3)));
        let h = np_hull(&pts(&[(0, 0, 1), (1, 0, 1)])).unwrap();
        assert_eq!(h.slopes, vec![(rat(0, 1), 1)]);
        let h = np_hull(&pts(&[(1, 2, 1), (2, 1, 1), (4, 0, 1)])).unwrap();
        assert_eq!(h.vertices.len(), 3);
        assert_eq!(h.slopes, vec![(rat(-1, 1), 1), (rat(-1, 2), 2)]);
        assert_eq!(np_hull(&[(0, Some(rat(1, 1))), (1, None)]), Err(NpError::TooFewPoints(1)));
    }

    #[test]
    fn root_valuation_examples() {
        let ctx = SeriesCtx::base(FieldDesc::new(2, 1).unwrap());
        let t = ctx.t();
        let t2 = t.mul(&t);
        let (z, o) = (ctx.zero(), ctx.one());
        let r = np_root_valuations(&[z.clone(), t.clone(), t.clone(), z.clone(), o.clone()]).unwrap();
        assert_eq!(r.zero_roots, 1);
        assert_eq!(r.segments, vec![(rat(1, 3), 3)]);
        let r = np_root_valuations(&[z.clone(), t2.clone(), t.clone(), z.clone(), o.clone()]).unwrap();
        assert_eq!(r.zero_roots, 1);
        assert_eq!(r.segments, vec![(rat(1, 1), 1), (rat(1, 2), 2)]);
        assert_eq!(r.total(), 4);
        let r = np_root_valuations(&[t2.neg(), z.clone(), o.clone()]).unwrap();
        assert_eq!(r.segments, vec![(rat(1, 1), 2)]);
    }

    #[test]
    fn zero_to_precision_coefficients() {
        let ctx = SeriesCtx::base(FieldDesc::new(2, 1).unwrap());
        let (t, o) = (ctx.t(), ctx.one());
        // t + O(t^5) X + X^2: the middle point at height >= 5 is above the hull
        let r = np_root_valuations(&[t.clone(), ctx.zero_to(5), o.clone()]).unwrap();
        assert_eq!(r.segments, vec![(rat(1, 2), 2)]);
        // t^4 + O(t) X + X^2: could be anything
        let t4 = t.pow_u(4);
        assert!(matches!(
            np_root_valuations(&[t4, ctx.zero_to(1), o.clone()]),
            Err(NpError::Indeterminate { index: 1, .. })
        ));
        assert!(np_root_valuations(&[ctx.zero_to(3), o.clone()]).is_err());
        assert!(matches!(np_root_valuations(&[o.clone(), ctx.zero_to(3)]), Err(NpError::UnknownLeading(1))));
    }
}
