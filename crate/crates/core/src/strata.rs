//! Newton polygons of height `c + d` and dimension `d`: enumeration, the
//! order "lies on or above", and the lattice-point count `dim`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{int_rat, rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("polygons have different shapes ({0}, {1}) and ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("need c + d >= 1")]
    Empty,
    #[error("slopes must be nondecreasing in [0, 1], {len} of them summing to d = {d}")]
    BadSlopes { len: usize, d: usize },
    #[error("special polygon needs c >= 1 and d >= 2, got c = {c}, d = {d}")]
    SpecialShape { c: usize, d: usize },
}

/// A polygon from `(0, 0)` to `(c + d, d)` given by its `c + d` slopes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NPgon {
    c: usize,
    d: usize,
    slopes: Vec<BigRational>,
}

impl fmt::Debug for NPgon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.slopes.iter().map(|x| x.to_string()).collect();
        write!(f, "NP({},{})[{}]", self.c, self.d, s.join(","))
    }
}

impl NPgon {
    pub fn new(c: usize, d: usize, slopes: Vec<BigRational>) -> Result<Self, StrataError> {
        let bad = StrataError::BadSlopes { len: c + d, d };
        if slopes.len() != c + d {
            return Err(bad);
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        if slopes.iter().any(|s| *s < zero || *s > one) || slopes.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad);
        }
        let sum: BigRational = slopes.iter().sum();
        if sum != int_rat(d as i64) {
            return Err(bad);
        }
        Ok(NPgon { c, d, slopes })
    }

    pub fn c(&self) -> usize {
        self.c
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn slopes(&self) -> &[BigRational] {
        &self.slopes
    }

    /// Heights at `x = 0, 1, ..., c + d`.
    pub fn heights(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero()];
        for s in &self.slopes {
            let next = out.last().unwrap() + s;
            out.push(next);
        }
        out
    }

    /// `(x, y)` breakpoints including both endpoints.
    pub fn vertices(&self) -> Vec<(usize, BigRational)> {
        let h = self.heights();
        let n = self.slopes.len();
        (0..=n)
            .filter(|&x| x == 0 || x == n || self.slopes[x - 1] != self.slopes[x])
            .map(|x| (x, h[x].clone()))
            .collect()
    }
}

/// All convex lattice polygons `(0,0) -> (c+d, d)` with slopes in `[0, 1]`,
/// or in `(0, 1)` when `open_slopes`; ordered by slope sequence.
pub fn enumerate_np(c: usize, d: usize, open_slopes: bool) -> Result<Vec<NPgon>, StrataError> {
    if c + d == 0 {
        return Err(StrataError::Empty);
    }
    let mut out = Vec::new();
    let mut segs = Vec::new();
    extend_paths(c + d, d, None, open_slopes, &mut segs, &mut out);
    let mut polys: Vec<NPgon> = out
        .into_iter()
        .map(|segs: Vec<(usize, usize)>| {
            let slopes = segs
                .iter()
                .flat_map(|&(l, r)| std::iter::repeat_n(rat(r as i64, l as i64), l))
                .collect();
            NPgon { c, d, slopes }
        })
        .collect();
    polys.sort();
    Ok(polys)
}

/// Segments `(length, rise)` between lattice points with strictly increasing slopes.
fn extend_paths(
    len: usize,
    rise: usize,
    last: Option<BigRational>,
    open: bool,
    segs: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if len == 0 {
        if rise == 0 {
            out.push(segs.clone());
        }
        return;
    }
    for l in 1..=len {
        for r in 0..=rise.min(l) {
            if open && (r == 0 || r == l) {
                continue;
            }
            let s = rat(r as i64, l as i64);
            if last.as_ref().is_some_and(|m| s <= *m) {
                continue;
            }
            segs.push((l, r));
            extend_paths(len - l, rise - r, Some(s), open, segs, out);
            segs.pop();
        }
    }
}

/// `a` lies on or above `b` everywhere. Breakpoints are lattice points, so
/// comparing heights at integer `x` suffices.
pub fn np_leq(a: &NPgon, b: &NPgon) -> Result<bool, StrataError> {
    if (a.c, a.d) != (b.c, b.d) {
        return Err(StrataError::ShapeMismatch(a.c, a.d, b.c, b.d));
    }
    Ok(a.heights().iter().zip(b.heights()).all(|(x, y)| *x >= y))
}

/// Lattice points `(x, y)` with `0 <= y < d`, `y < x < c + d` on or above `b`.
pub fn diamond_dim(b: &NPgon) -> (Vec<(usize, usize)>, usize) {
    let h = b.heights();
    let mut pts = Vec::new();
    for y in 0..b.d {
        for x in y + 1..b.c + b.d {
            if int_rat(y as i64) >= h[x] {
                pts.push((x, y));
            }
        }
    }
    let n = pts.len();
    (pts, n)
}

/// Slopes `1/(c+1)` repeated `c + 1` times, then `1` repeated `d - 1` times.
pub fn special_beta(c: usize, d: usize) -> Result<NPgon, StrataError> {
    if c < 1 || d < 2 {
        return Err(StrataError::SpecialShape { c, d });
    }
    let mut slopes = vec![rat(1, c as i64 + 1); c + 1];
    slopes.extend(std::iter::repeat_n(BigRational::one(), d - 1));
    let b = NPgon::new(c, d, slopes)?;
    assert_eq!(diamond_dim(&b).1, c * (d - 1), "dimension of the special stratum");
    Ok(b)
}

/// Cover relations `(i, j)`: `polys[i]` lies above `polys[j]` with nothing strictly between.
pub fn hasse_edges(polys: &[NPgon]) -> Result<Vec<(usize, usize)>, StrataError> {
    let n = polys.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            le[i][j] = np_leq(&polys[i], &polys[j])?;
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !le[i][j] {
                continue;
            }
            if !(0..n).any(|k| k != i && k != j && le[i][k] && le[k][j]) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}
