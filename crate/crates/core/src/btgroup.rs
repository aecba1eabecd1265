//! Barsotti-Tate group data: codimension `c`, dimension `d` and a
//! Hasse-Witt matrix over a field, a series ring, or a truncated
//! polynomial ring.

use num_integer::Integer;
use num_rational::BigRational;
use thiserror::Error;

use crate::ff::{FFElem, FfError, FieldDesc};
use crate::linalg;
use crate::mpoly::{MPolyError, MPolyRing};
use crate::ring::Ring;
use crate::semilinear::{CyclicSearch, SemilinearError, SigmaMat, DEFAULT_EXT_BOUND};
use crate::series::{LSeries, SeriesCtx, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BtError {
    #[error("slope {s}/{r} must satisfy gcd(s, r) = 1, 0 <= s <= r, r > 0")]
    BadSlope { s: u32, r: u32 },
    #[error("universal deformation needs c >= 1")]
    ZeroCodimension,
    #[error("Hasse-Witt matrix has size {got}, expected c = {want}")]
    SizeMismatch { got: usize, want: usize },
    #[error("matrix is not in companion form")]
    NotCompanion,
    #[error("no cyclic vector found within extension bound {0}: the fiber is not HW-cyclic there")]
    NotCyclic(u32),
    #[error("no cyclic vector found within extension bound {0} (inconclusive)")]
    CyclicInconclusive(u32),
    #[error("determinant vanishes only to precision {0}: Hasse invariant undetermined")]
    IndeterminateDeterminant(String),
    #[error("a_{0} vanishes only to precision: generic fiber undetermined")]
    IndeterminateCoefficient(usize),
    #[error("point has {got} coordinates, expected {want}")]
    BadPoint { got: usize, want: usize },
    #[error(transparent)]
    Semilinear(#[from] SemilinearError),
    #[error(transparent)]
    MPoly(#[from] MPolyError),
    #[error(transparent)]
    Field(#[from] FfError),
}

/// Codimension `c = dim G^dual`, dimension `d`, and the `c x c` Hasse-Witt matrix.
#[derive(Clone, Debug)]
pub struct BTDesc<R: Ring> {
    pub c: usize,
    pub d: usize,
    pub hw: SigmaMat<R>,
}

impl<R: Ring> BTDesc<R> {
    pub fn new(c: usize, d: usize, hw: SigmaMat<R>) -> Result<Self, BtError> {
        if hw.size() != c {
            return Err(BtError::SizeMismatch { got: hw.size(), want: c });
        }
        Ok(BTDesc { c, d, hw })
    }

    pub fn height(&self) -> usize {
        self.c + self.d
    }
}

/// The elementary group of slope `s/r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementaryBT {
    pub s: u32,
    pub r: u32,
}

impl ElementaryBT {
    pub fn new(s: u32, r: u32) -> Result<Self, BtError> {
        if r == 0 || s > r || s.gcd(&r) != 1 {
            return Err(BtError::BadSlope { s, r });
        }
        Ok(ElementaryBT { s, r })
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(self.s.into(), self.r.into())
    }

    /// `(s, r) -> (r - s, r)`.
    pub fn dual(&self) -> ElementaryBT {
        ElementaryBT { s: self.r - self.s, r: self.r }
    }

    /// `c = r - s`, `d = s`. The Hasse-Witt matrix is multiplication by `F`
    /// on `k[F]/F^{r-s}` in the basis `1, F, ..., F^{r-s-1}` (a nilpotent
    /// companion), except for slope 0 where `F` acts on `k[F]/(F-1)` as 1.
    pub fn hw(&self, field: &FieldDesc) -> BTDesc<FieldDesc> {
        let c = (self.r - self.s) as usize;
        let d = self.s as usize;
        let entries = if self.s == 0 {
            vec![vec![field.one()]]
        } else {
            (0..c)
                .map(|i| (0..c).map(|j| if i == j + 1 { field.one() } else { field.zero() }).collect())
                .collect()
        };
        BTDesc { c, d, hw: SigmaMat::new(field.clone(), entries).expect("square") }
    }
}

/// Companion matrix with last column `(-a_1, ..., -a_c)`.
pub fn companion<R: Ring>(ring: &R, a: &[R::Elem]) -> SigmaMat<R> {
    let c = a.len();
    let entries = (0..c)
        .map(|i| {
            (0..c)
                .map(|j| {
                    if j == c - 1 {
                        ring.neg(&a[i])
                    } else if i == j + 1 {
                        ring.one()
                    } else {
                        ring.zero()
                    }
                })
                .collect()
        })
        .collect();
    SigmaMat::new(ring.clone(), entries).expect("square")
}

/// The one-dimensional universal deformation: companion with
/// `a_i = t_i` over `F_q[t_1..t_c]`.
pub fn universal_deformation_hw(c: usize, field: &FieldDesc, max_deg: u32) -> Result<BTDesc<MPolyRing>, BtError> {
    if c < 1 {
        return Err(BtError::ZeroCodimension);
    }
    let ring = MPolyRing::new(field.clone(), c, max_deg);
    let a: Vec<_> = (0..c).map(|i| ring.var(i)).collect();
    Ok(BTDesc { c, d: 1, hw: companion(&ring, &a) })
}

/// Entrywise substitution `t_i -> values[i]`.
pub fn specialize(b: &BTDesc<MPolyRing>, values: &[LSeries], ctx: &SeriesCtx) -> Result<BTDesc<SeriesCtx>, BtError> {
    let ring = b.hw.ring();
    let mut entries = Vec::with_capacity(b.c);
    for row in b.hw.entries() {
        let mut r = Vec::with_capacity(b.c);
        for x in row {
            r.push(ring.specialize(x, values, ctx)?);
        }
        entries.push(r);
    }
    Ok(BTDesc { c: b.c, d: b.d, hw: SigmaMat::new(ctx.clone(), entries)? })
}

/// Evaluate the matrix at a point of `F_q^m`, giving the fiber there.
pub fn fiber_at(b: &BTDesc<MPolyRing>, point: &[FFElem]) -> Result<BTDesc<FieldDesc>, BtError> {
    let ring = b.hw.ring();
    if point.len() != ring.nvars() {
        return Err(BtError::BadPoint { got: point.len(), want: ring.nvars() });
    }
    let f = ring.field().clone();
    let ctx = SeriesCtx::base(f.clone());
    let vals: Vec<LSeries> = point.iter().map(|&x| ctx.constant(x)).collect();
    let s = specialize(b, &vals, &ctx)?;
    closed_fiber(&s)
}

/// Reduction modulo the maximal ideal.
pub fn closed_fiber(b: &BTDesc<SeriesCtx>) -> Result<BTDesc<FieldDesc>, BtError> {
    Ok(BTDesc { c: b.c, d: b.d, hw: b.hw.reduce()? })
}

/// Hasse invariant `v(det hw)`: finite rational or infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HasseInvariant {
    Finite(BigRational),
    Infinite,
}

impl HasseInvariant {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            HasseInvariant::Finite(v) => Some(v),
            HasseInvariant::Infinite => None,
        }
    }
}

pub fn hasse_invariant(b: &BTDesc<SeriesCtx>) -> Result<HasseInvariant, BtError> {
    if b.c == 0 {
        return Ok(HasseInvariant::Finite(BigRational::from_integer(0.into())));
    }
    let det = b.hw.det();
    match det.valuation() {
        Valuation::Finite(v) => Ok(HasseInvariant::Finite(v)),
        Valuation::Infinite => Ok(HasseInvariant::Infinite),
        z @ Valuation::ZeroToPrecision(_) => Err(BtError::IndeterminateDeterminant(z.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberHeights {
    /// `min { i : a_{i+1} != 0 }` with `a_{c+1} = 1`.
    pub i0: usize,
    pub etale_height: usize,
    pub connected_height: usize,
    pub connected: bool,
    /// Residue coefficients `a_1..a_c` of the companion form used.
    pub coeffs: Vec<FFElem>,
    pub field: FieldDesc,
}

/// Heights of the etale and connected parts of a fiber. A matrix not in
/// companion form is first brought there through a cyclic vector.
pub fn fiber_heights(b: &BTDesc<FieldDesc>) -> Result<FiberHeights, BtError> {
    fiber_heights_with_bound(b, DEFAULT_EXT_BOUND)
}

pub fn fiber_heights_with_bound(b: &BTDesc<FieldDesc>, bound: u32) -> Result<FiberHeights, BtError> {
    let (a, field) = match b.hw.companion_coeffs() {
        Some(a) => (a, b.hw.ring().clone()),
        None => match b.hw.cyclic_vector(bound) {
            CyclicSearch::Found { v, field, .. } => {
                let (n, _) = b.hw.companion_form(&v, &field)?;
                (n.companion_coeffs().expect("companion"), field)
            }
            CyclicSearch::NotCyclic => return Err(BtError::NotCyclic(bound)),
            CyclicSearch::Inconclusive { bound } => return Err(BtError::CyclicInconclusive(bound)),
        },
    };
    let i0 = a.iter().position(|x| !x.is_zero()).unwrap_or(b.c);
    Ok(FiberHeights {
        i0,
        etale_height: b.c - i0,
        connected_height: b.d + i0,
        connected: i0 == b.c,
        coeffs: a,
        field,
    })
}

/// `min { i : a_{i+1} != 0 }` over the fraction field of a companion
/// family: the connected height of the generic fiber exceeds `d` by this.
pub fn generic_i0(b: &BTDesc<SeriesCtx>) -> Result<usize, BtError> {
    let a = b.hw.companion_coeffs().ok_or(BtError::NotCompanion)?;
    for (i, x) in a.iter().enumerate() {
        if x.is_zero_to_prec() {
            return Err(BtError::IndeterminateCoefficient(i + 1));
        }
        if !x.is_exact_zero() {
            return Ok(i);
        }
    }
    Ok(b.c)
}

/// `(a_1, ..., a_c, 1)` for a companion matrix.
pub fn additive_poly<R: Ring>(b: &BTDesc<R>) -> Result<Vec<R::Elem>, BtError> {
    let mut a = b.hw.companion_coeffs().ok_or(BtError::NotCompanion)?;
    a.push(b.hw.ring().one());
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VersalityReport {
    /// Rank of the differentials `da_1..da_c` at the origin.
    pub rank: usize,
    pub independent: bool,
    /// All `a_i` vanish at the origin (the closed fiber is connected).
    pub connected_at_origin: bool,
    /// `a_1..a_c` is part of a regular system of parameters.
    pub subset_of_parameters: bool,
    /// `d = 1` and `a_1..a_c` is a full regular system of parameters.
    pub universal: bool,
}

pub fn versality_check(b: &BTDesc<MPolyRing>) -> Result<VersalityReport, BtError> {
    let ring = b.hw.ring();
    let a = b.hw.companion_coeffs().ok_or(BtError::NotCompanion)?;
    let jac: Vec<Vec<FFElem>> = a.iter().map(|x| ring.linear_part(x)).collect();
    let rank = if ring.nvars() == 0 { 0 } else { linalg::rank(ring.field(), &jac) };
    let independent = rank == b.c;
    let connected_at_origin = a.iter().all(|x| ring.at_origin(x).is_zero());
    let subset = independent && connected_at_origin;
    Ok(VersalityReport {
        rank,
        independent,
        connected_at_origin,
        subset_of_parameters: subset,
        universal: subset && b.d == 1 && ring.nvars() == b.c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int_rat, SeriesCtx};

    #[test]
    fn elementary_examples() {
        let f = FieldDesc::new(2, 1).unwrap();
        let g = ElementaryBT::new(1, 3).unwrap().hw(&f);
        assert_eq!((g.c, g.d), (2, 1));
        assert_eq!(g.hw.entries(), &vec![vec![f.zero(), f.zero()], vec![f.one(), f.zero()]]);
        let mu = ElementaryBT::new(1, 1).unwrap().hw(&f);
        assert_eq!(mu.c, 0);
        assert_eq!(mu.hw.size(), 0);
        let et = ElementaryBT::new(0, 1).unwrap().hw(&f);
        assert_eq!(et.hw.entries(), &vec![vec![f.one()]]);
        assert!(ElementaryBT::new(2, 4).is_err());
        assert!(ElementaryBT::new(0, 0).is_err());
    }

    #[test]
    fn dual_examples() {
        let e = ElementaryBT::new(1, 3).unwrap();
        assert_eq!(e.dual(), ElementaryBT { s: 2, r: 3 });
        assert_eq!(ElementaryBT::new(0, 1).unwrap().dual(), ElementaryBT { s: 1, r: 1 });
        assert_eq!(e.dual().dual(), e);
    }

    #[test]
    fn universal_examples() {
        let f = FieldDesc::new(2, 1).unwrap();
        let u = universal_deformation_hw(2, &f, 4).unwrap();
        let r = u.hw.ring().clone();
        assert_eq!(u.hw.entries()[0][1], r.neg(&r.var(0)));
        assert_eq!(u.hw.entries()[1][1], r.neg(&r.var(1)));
        assert_eq!(u.hw.entries()[1][0], r.one());
        let u1 = universal_deformation_hw(1, &f, 4).unwrap();
        assert_eq!(u1.hw.entries()[0][0], u1.hw.ring().neg(&u1.hw.ring().var(0)));
        let origin = fiber_at(&u, &[f.zero(), f.zero()]).unwrap();
        assert_eq!(origin.hw.entries(), ElementaryBT::new(1, 3).unwrap().hw(&f).hw.entries());
        assert!(universal_deformation_hw(0, &f, 4).is_err());
    }

    #[test]
    fn specialize_and_hasse() {
        let f = FieldDesc::new(2, 1).unwrap();
        let ctx = SeriesCtx::base(f.clone());
        let u = universal_deformation_hw(2, &f, 4).unwrap();
        let s = specialize(&u, &[ctx.t(), ctx.zero()], &ctx).unwrap();
        assert_eq!(s.hw.entries()[0][1], ctx.t().neg());
        assert!(s.hw.entries()[1][1].is_exact_zero());
        assert_eq!(hasse_invariant(&s).unwrap(), HasseInvariant::Finite(int_rat(1)));
        let s = specialize(&u, &[ctx.t(), ctx.t()], &ctx).unwrap();
        assert_eq!(hasse_invariant(&s).unwrap(), HasseInvariant::Finite(int_rat(1)));
        let s0 = specialize(&u, &[ctx.zero(), ctx.zero()], &ctx).unwrap();
        assert!(closed_fiber(&s0).unwrap().hw.is_nilpotent());
        assert_eq!(hasse_invariant(&s0).unwrap(), HasseInvariant::Infinite);
        let id = BTDesc::new(2, 1, SigmaMat::identity(ctx.clone(), 2)).unwrap();
        assert_eq!(hasse_invariant(&id).unwrap(), HasseInvariant::Finite(int_rat(0)));
    }

    #[test]
    fn fiber_height_examples() {
        let f7 = FieldDesc::new(7, 1).unwrap();
        let a = [f7.zero(), f7.zero(), f7.from_int(5)];
        let b = BTDesc::new(3, 1, companion(&f7, &a)).unwrap();
        let h = fiber_heights(&b).unwrap();
        assert_eq!((h.i0, h.etale_height, h.connected_height), (2, 1, 3));
        let z = BTDesc::new(3, 1, companion(&f7, &[f7.zero(); 3])).unwrap();
        let h = fiber_heights(&z).unwrap();
        assert!(h.connected);
        assert_eq!(h.i0, 3);
        let o = BTDesc::new(3, 2, companion(&f7, &[f7.one(), f7.zero(), f7.zero()])).unwrap();
        let h = fiber_heights(&o).unwrap();
        assert_eq!((h.i0, h.etale_height), (0, 3));
        // identity is HW-cyclic over F_4 with a_1 != 0
        let f2 = FieldDesc::new(2, 1).unwrap();
        let id = BTDesc::new(2, 1, SigmaMat::identity(f2.clone(), 2)).unwrap();
        assert_eq!(fiber_heights(&id).unwrap().etale_height, 2);
        let zero = BTDesc::new(2, 1, companion(&f2, &[f2.zero(); 2])).unwrap();
        assert!(fiber_heights(&zero).is_ok());
        let zmat = BTDesc::new(2, 1, SigmaMat::new(f2.clone(), vec![vec![f2.zero(); 2]; 2]).unwrap()).unwrap();
        assert_eq!(fiber_heights(&zmat), Err(BtError::NotCyclic(8)));
    }

    #[test]
    fn additive_poly_examples() {
        let f = FieldDesc::new(2, 1).unwrap();
        let ctx = SeriesCtx::base(f.clone());
        let b = BTDesc::new(2, 1, companion(&ctx, &[ctx.t(), ctx.t()])).unwrap();
        assert_eq!(additive_poly(&b).unwrap(), vec![ctx.t(), ctx.t(), ctx.one()]);
        let n = ElementaryBT::new(1, 4).unwrap().hw(&f);
        assert_eq!(additive_poly(&n).unwrap(), vec![f.zero(), f.zero(), f.zero(), f.one()]);
        let id = BTDesc::new(2, 1, SigmaMat::identity(f.clone(), 2)).unwrap();
        assert_eq!(additive_poly(&id), Err(BtError::NotCompanion));
    }

    #[test]
    fn versality_examples() {
        let f = FieldDesc::new(3, 1).unwrap();
        let u = universal_deformation_hw(2, &f, 4).unwrap();
        let rep = versality_check(&u).unwrap();
        assert!(rep.independent && rep.universal);
        let r = u.hw.ring().clone();
        let dup = BTDesc::new(2, 1, companion(&r, &[r.var(0), r.var(0)])).unwrap();
        let rep = versality_check(&dup).unwrap();
        assert_eq!(rep.rank, 1);
        assert!(!rep.independent);
        let sq = BTDesc::new(2, 1, companion(&r, &[r.mul(&r.var(0), &r.var(0)), r.var(1)])).unwrap();
        assert!(!versality_check(&sq).unwrap().independent);
    }
}
