//! Frobenius-semilinear maps `phi(x) = M x^{(p)}` on column vectors.

use std::fmt;

use thiserror::Error;

use crate::ff::{Embedding, FFElem, FfError, FieldDesc};
use crate::linalg::{self, Mat};
use crate::ring::Ring;
use crate::series::{LSeries, SeriesCtx, SeriesError};

pub const DEFAULT_EXT_BOUND: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilinearError {
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("v, phi(v), ..., phi^(c-1)(v) are linearly dependent")]
    DependentCycle,
    #[error("vector length {got} does not match matrix size {want}")]
    BadVector { got: usize, want: usize },
    #[error("entry ({0}, {1}) has negative valuation")]
    NegativeValuation(usize, usize),
    #[error("entry ({0}, {1}) is not known modulo the maximal ideal")]
    UnknownResidue(usize, usize),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// A square matrix over `R`, read as the semilinear map `x -> M x^{(p)}`.
#[derive(Clone)]
pub struct SigmaMat<R: Ring> {
    ring: R,
    entries: Mat<R::Elem>,
}

impl<R: Ring> fmt::Debug for SigmaMat<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaMat over {:?}: {:?}", self.ring, self.entries)
    }
}

impl<R: Ring> PartialEq for SigmaMat<R>
where
    R: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.entries == other.entries
    }
}

impl<R: Ring> SigmaMat<R> {
    pub fn new(ring: R, entries: Mat<R::Elem>) -> Result<Self, SemilinearError> {
        let rows = entries.len();
        for (row, r) in entries.iter().enumerate() {
            if r.len() != rows {
                return Err(SemilinearError::NotSquare { rows, row, len: r.len() });
            }
        }
        Ok(SigmaMat { ring, entries })
    }

    pub fn identity(ring: R, c: usize) -> Self {
        let entries = linalg::identity(&ring, c);
        SigmaMat { ring, entries }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn size(&self) -> usize {
        self.entries.len()
    }
    pub fn entries(&self) -> &Mat<R::Elem> {
        &self.entries
    }
    pub fn entry(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i][j]
    }

    /// `M v^{(p)}`.
    pub fn apply(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        let vp: Vec<R::Elem> = v.iter().map(|x| self.ring.frob(x)).collect();
        linalg::mat_vec(&self.ring, &self.entries, &vp)
    }

    /// `M M^{(p)} ... M^{(p^{k-1})}`, the matrix of the linearized `phi^k`.
    pub fn twist_compose(&self, k: u32) -> Mat<R::Elem> {
        let r = &self.ring;
        let mut acc = linalg::identity(r, self.size());
        let mut twisted = self.entries.clone();
        for _ in 0..k {
            acc = linalg::mat_mul(r, &acc, &twisted);
            twisted = linalg::mat_frob(r, &twisted, 1);
        }
        acc
    }

    /// The matrix of the same map in the basis given by the columns of `u`:
    /// `u^{-1} M u^{(p)}`.
    pub fn change_basis(&self, u: &Mat<R::Elem>, u_inv: &Mat<R::Elem>) -> Self {
        let r = &self.ring;
        let up = linalg::mat_frob(r, u, 1);
        let entries = linalg::mat_mul(r, &linalg::mat_mul(r, u_inv, &self.entries), &up);
        SigmaMat { ring: self.ring.clone(), entries }
    }

    pub fn det(&self) -> R::Elem {
        linalg::det_generic(&self.ring, &self.entries)
    }

    /// The relations `X_j^p - sum_i h_ij X_i`, one per column.
    pub fn presentation(&self) -> Vec<Relation<R::Elem>> {
        (0..self.size())
            .map(|j| Relation {
                var: j,
                linear: (0..self.size())
                    .filter(|&i| !self.ring.is_zero(&self.entries[i][j]))
                    .map(|i| (i, self.ring.neg(&self.entries[i][j])))
                    .collect(),
            })
            .collect()
    }

    /// Whether a companion matrix: subdiagonal ones, zeros elsewhere
    /// outside the last column.
    pub fn is_companion(&self) -> bool {
        let c = self.size();
        let r = &self.ring;
        for i in 0..c {
            for j in 0..c.saturating_sub(1) {
                let want_one = i == j + 1;
                let x = &self.entries[i][j];
                if want_one && *x != r.one() || !want_one && !r.is_zero(x) {
                    return false;
                }
            }
        }
        true
    }

    /// For a companion matrix, `(a_1, ..., a_c)` read off the last column
    /// `(-a_1, ..., -a_c)`.
    pub fn companion_coeffs(&self) -> Option<Vec<R::Elem>> {
        if !self.is_companion() {
            return None;
        }
        let c = self.size();
        Some((0..c).map(|i| self.ring.neg(&self.entries[i][c - 1])).collect())
    }
}

/// `X_var^p + sum coeff * X_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation<E> {
    pub var: usize,
    pub linear: Vec<(usize, E)>,
}

impl<E: fmt::Debug> fmt::Display for Relation<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}^p", self.var + 1)?;
        for (i, c) in &self.linear {
            write!(f, " + ({c:?})*X{}", i + 1)?;
        }
        Ok(())
    }
}

/// `Spec` of the presented algebra is etale iff its Jacobian `-h^T` is
/// invertible, i.e. `det h` is a unit.
pub fn presentation_is_etale(m: &SigmaMat<FieldDesc>) -> bool {
    !m.det().is_zero()
}

impl SigmaMat<FieldDesc> {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.ring, &self.entries)
    }

    /// `c - rank(M)`.
    pub fn kernel_dim(&self) -> usize {
        self.size() - self.rank()
    }

    /// `phi^c = 0`.
    pub fn is_nilpotent(&self) -> bool {
        linalg::is_zero_mat(&self.ring, &self.twist_compose(self.size() as u32))
    }

    /// Rank of `phi^c`: the dimension of the part on which `phi` is bijective.
    pub fn stable_rank(&self) -> usize {
        linalg::rank(&self.ring, &self.twist_compose(self.size() as u32))
    }

    pub fn embed(&self, into: &FieldDesc) -> Result<Self, FfError> {
        let e = Embedding::new(&self.ring, into)?;
        Ok(SigmaMat {
            ring: into.clone(),
            entries: self.entries.iter().map(|r| r.iter().map(|&x| e.apply(x)).collect()).collect(),
        })
    }

    /// Columns `v, phi v, ..., phi^{c-1} v`, with `v` in this matrix's field.
    pub fn cycle_matrix(&self, v: &[FFElem]) -> Mat<FFElem> {
        let c = self.size();
        let mut cols = Vec::with_capacity(c);
        let mut w = v.to_vec();
        for _ in 0..c {
            cols.push(w.clone());
            w = self.apply(&w);
        }
        linalg::transpose(&cols)
    }

    pub fn is_cyclic_vector(&self, v: &[FFElem]) -> bool {
        !linalg::det(&self.ring, &self.cycle_matrix(v)).is_zero()
    }

    /// Whether the cyclicity polynomial
    /// `D(x) = det(x, phi x, ..., phi^{c-1} x)` is nonzero.
    ///
    /// Expanding by multilinearity, `D = sum_J prod_i x_{j_i}^{p^i}
    /// det[T_0 e_{j_0}, ..., T_{c-1} e_{j_{c-1}}]` over tuples `J`, where
    /// `T_i = twist_compose(i)`. The monomials for distinct tuples are
    /// distinct, so `D != 0` iff one of these minors is nonzero.
    pub fn cyclicity_polynomial_nonzero(&self) -> bool {
        let c = self.size();
        if c == 0 {
            return true;
        }
        let ts: Vec<Mat<FFElem>> = (0..c as u32).map(|i| self.twist_compose(i)).collect();
        let mut tuple = vec![0usize; c];
        loop {
            let cols: Vec<Vec<FFElem>> = (0..c).map(|i| ts[i].iter().map(|row| row[tuple[i]]).collect()).collect();
            if !linalg::det(&self.ring, &linalg::transpose(&cols)).is_zero() {
                return true;
            }
            let mut k = c;
            loop {
                if k == 0 {
                    return false;
                }
                k -= 1;
                tuple[k] += 1;
                if tuple[k] < c {
                    break;
                }
                tuple[k] = 0;
            }
        }
    }

    /// Search for a cyclic vector over `F_{q^j}`, `j = 1..=bound`, each
    /// field scanned in lexicographic order with `v_1` most significant and
    /// coordinates ordered by encoding.
    ///
    /// `NotCyclic` is a proof: the cyclicity polynomial vanishes, so no
    /// extension has a witness. If it does not vanish, a witness exists in
    /// every field larger than its partial degrees `(p^c - 1)/(p - 1)`;
    /// `Inconclusive` means the bound stopped the search before that.
    pub fn cyclic_vector(&self, bound: u32) -> CyclicSearch {
        let c = self.size();
        let base = &self.ring;
        if c == 0 {
            return CyclicSearch::Found { v: Vec::new(), field: base.clone(), level: 1 };
        }
        if !self.cyclicity_polynomial_nonzero() {
            return CyclicSearch::NotCyclic;
        }
        for j in 1..=bound {
            let Ok(l) = FieldDesc::new(base.p(), base.degree() * j) else { break };
            let Some(total) = l.size().checked_pow(c as u32) else { break };
            if total > 1 << 32 {
                break;
            }
            let m = self.embed(&l).expect("subfield");
            let q = l.size();
            let mut v = vec![l.zero(); c];
            for idx in 0..total {
                let mut r = idx;
                for k in (0..c).rev() {
                    v[k] = l.from_value(r % q).unwrap();
                    r /= q;
                }
                if m.is_cyclic_vector(&v) {
                    return CyclicSearch::Found { v, field: l, level: j };
                }
            }
        }
        CyclicSearch::Inconclusive { bound }
    }

    /// Matrix of `phi` in the basis `v, phi v, ..., phi^{c-1} v`, and that
    /// basis as the columns of the second matrix. The field of `v` must
    /// contain this matrix's field.
    pub fn companion_form(&self, v: &[FFElem], field: &FieldDesc) -> Result<(SigmaMat<FieldDesc>, Mat<FFElem>), SemilinearError> {
        if v.len() != self.size() {
            return Err(SemilinearError::BadVector { got: v.len(), want: self.size() });
        }
        let m = self.embed(field)?;
        let b = m.cycle_matrix(v);
        let b_inv = linalg::inverse(field, &b).ok_or(SemilinearError::DependentCycle)?;
        Ok((m.change_basis(&b, &b_inv), b))
    }

    /// `F_p`-basis of `{x : U x^{(p)} = x}`, enlarging the field up to
    /// `bound` times its degree until the dimension reaches the stable rank,
    /// the value it takes over an algebraic closure.
    pub fn fixed_space(&self, bound: u32) -> FixedSpace {
        let target = self.stable_rank();
        let base = &self.ring;
        let mut last = None;
        for j in 1..=bound.max(1) {
            let Ok(l) = FieldDesc::new(base.p(), base.degree() * j) else { break };
            if l.size() > 1 << 20 {
                break;
            }
            let m = self.embed(&l).expect("subfield");
            let basis = fixed_points_over(&m);
            let done = basis.len() == target;
            last = Some(FixedSpace { basis, field: l, stable_rank: target, complete: done });
            if done {
                break;
            }
        }
        last.unwrap_or(FixedSpace { basis: Vec::new(), field: base.clone(), stable_rank: target, complete: target == 0 })
    }
}

/// Result of a cyclic-vector search.
#[derive(Clone, Debug, PartialEq)]
pub enum CyclicSearch {
    Found { v: Vec<FFElem>, field: FieldDesc, level: u32 },
    NotCyclic,
    Inconclusive { bound: u32 },
}

impl CyclicSearch {
    pub fn is_found(&self) -> bool {
        matches!(self, CyclicSearch::Found { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedSpace {
    pub basis: Vec<Vec<FFElem>>,
    pub field: FieldDesc,
    pub stable_rank: usize,
    /// Dimension reached the stable rank within the bound.
    pub complete: bool,
}

impl FixedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Fixed points of `x -> M x^{(p)}` over `M`'s own field, solved as an
/// `F_p`-linear system in the coordinates of the power basis.
fn fixed_points_over(m: &SigmaMat<FieldDesc>) -> Vec<Vec<FFElem>> {
    let l = m.ring();
    let fp = FieldDesc::new(l.p(), 1).unwrap();
    let c = m.size();
    let n = l.degree() as usize;
    let dim = c * n;
    let basis_elem = |k: usize| l.from_value(l.p().pow(k as u32)).unwrap();
    let to_coords = |v: &[FFElem]| -> Vec<FFElem> {
        v.iter()
            .flat_map(|x| x.coeffs().into_iter().map(|d| fp.from_int(d as i64)))
            .collect()
    };
    // columns: images of the F_p basis under x -> M x^(p) - x
    let mut cols = Vec::with_capacity(dim);
    for i in 0..c {
        for k in 0..n {
            let mut e = vec![l.zero(); c];
            e[i] = basis_elem(k);
            let img = m.apply(&e);
            let diff: Vec<FFElem> = img.iter().zip(&e).map(|(a, b)| l.sub(*a, *b)).collect();
            cols.push(to_coords(&diff));
        }
    }
    let a = linalg::transpose(&cols);
    let ns = linalg::nullspace(&fp, &a, dim);
    ns.into_iter()
        .map(|v| {
            (0..c)
                .map(|i| {
                    let digits: Vec<u64> = (0..n).map(|k| v[i * n + k].value()).collect();
                    l.elem(&digits).unwrap()
                })
                .collect()
        })
        .collect()
}

impl SigmaMat<SeriesCtx> {
    /// Reduction modulo the maximal ideal.
    pub fn reduce(&self) -> Result<SigmaMat<FieldDesc>, SemilinearError> {
        let f = self.ring.residue().clone();
        let mut out = Vec::with_capacity(self.size());
        for (i, row) in self.entries.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                if x.ord_bound().is_some_and(|o| o < 0) {
                    return Err(SemilinearError::NegativeValuation(i, j));
                }
                r.push(x.coeff(0).ok_or(SemilinearError::UnknownResidue(i, j))?);
            }
            out.push(r);
        }
        Ok(SigmaMat { ring: f, entries: out })
    }

    pub fn extend_into(&self, ctx: &SeriesCtx) -> Result<Self, SemilinearError> {
        let mut out = Vec::with_capacity(self.size());
        for row in &self.entries {
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                r.push(x.extend_into(ctx)?);
            }
            out.push(r);
        }
        Ok(SigmaMat { ring: ctx.clone(), entries: out })
    }

    /// Solutions of `U x^{(p)} = x` with entries in the integral series:
    /// solve the reduction, then lift each residue solution by iterating
    /// `x -> U x^{(p)}`, which contracts differences by a factor `p` in
    /// valuation, so the lift is unique.
    pub fn fixed_space(&self, bound: u32) -> Result<SeriesFixedSpace, SemilinearError> {
        let red = self.reduce()?;
        let fs = red.fixed_space(bound);
        let ctx = self.ring.extend(self.ring.e(), &fs.field)?;
        let u = self.extend_into(&ctx)?;
        let mut lifts = Vec::with_capacity(fs.basis.len());
        for xbar in &fs.basis {
            lifts.push(lift_fixed_point(&u, xbar)?);
        }
        Ok(SeriesFixedSpace { ctx, residue: fs, basis: lifts })
    }
}

fn lift_fixed_point(u: &SigmaMat<SeriesCtx>, xbar: &[FFElem]) -> Result<Vec<LSeries>, SemilinearError> {
    let ctx = u.ring().clone();
    let mut x: Vec<LSeries> = xbar.iter().map(|&c| ctx.constant(c)).collect();
    for _ in 0..256 {
        let y = u.apply(&x);
        let residual_vanishes = y.iter().zip(&x).all(|(a, b)| a.agrees_with(b));
        if residual_vanishes {
            let prec = y
                .iter()
                .zip(&x)
                .filter_map(|(a, b)| a.sub(b).prec())
                .min();
            return Ok(match prec {
                Some(n) => x.iter().map(|s| s.truncate(n)).collect(),
                None => x,
            });
        }
        x = y.iter().map(|s| s.to_exact()).collect();
    }
    Err(SeriesError::NoConvergence.into())
}

#[derive(Clone, Debug)]
pub struct SeriesFixedSpace {
    pub ctx: SeriesCtx,
    pub residue: FixedSpace,
    pub basis: Vec<Vec<LSeries>>,
}

impl SeriesFixedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmat(f: &FieldDesc, rows: &[&[u64]]) -> SigmaMat<FieldDesc> {
        let e = rows.iter().map(|r| r.iter().map(|&v| f.from_value(v).unwrap()).collect()).collect();
        SigmaMat::new(f.clone(), e).unwrap()
    }

    #[test]
    fn twist_compose_examples() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        let shift = fmat(&f2, &[&[0, 0], &[1, 0]]);
        assert_eq!(shift.twist_compose(0), linalg::identity(&f2, 2));
        assert!(linalg::is_zero_mat(&f2, &shift.twist_compose(2)));
        let f4 = FieldDesc::new(2, 2).unwrap();
        let g = fmat(&f4, &[&[2]]);
        assert_eq!(g.twist_compose(2), vec![vec![f4.one()]]);
    }

    #[test]
    fn nilpotent_and_kernel_examples() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        let shift = fmat(&f2, &[&[0, 0], &[1, 0]]);
        assert!(shift.is_nilpotent());
        assert!(!SigmaMat::identity(f2.clone(), 2).is_nilpotent());
        assert_eq!(shift.kernel_dim(), 1);
        assert_eq!(SigmaMat::identity(f2.clone(), 2).kernel_dim(), 0);
        assert_eq!(fmat(&f2, &[&[0, 0], &[0, 0]]).kernel_dim(), 2);
    }

    #[test]
    fn cyclic_vector_examples() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        let shift = fmat(&f2, &[&[0, 0], &[1, 0]]);
        match shift.cyclic_vector(8) {
            CyclicSearch::Found { v, level, .. } => {
                assert_eq!(level, 1);
                assert_eq!(v, vec![f2.one(), f2.zero()]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(fmat(&f2, &[&[0, 0], &[0, 0]]).cyclic_vector(8), CyclicSearch::NotCyclic);
        let f4 = FieldDesc::new(2, 2).unwrap();
        match SigmaMat::identity(f2.clone(), 2).cyclic_vector(2) {
            CyclicSearch::Found { v, field, level } => {
                assert_eq!(level, 2);
                assert_eq!(field, f4);
                assert_eq!(v, vec![f4.one(), f4.generator()]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            SigmaMat::identity(f2.clone(), 2).cyclic_vector(1),
            CyclicSearch::Inconclusive { bound: 1 }
        );
    }

    #[test]
    fn companion_examples() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        let shift = fmat(&f2, &[&[0, 0], &[1, 0]]);
        let (n, b) = shift.companion_form(&[f2.one(), f2.zero()], &f2).unwrap();
        assert_eq!(n, shift);
        assert_eq!(b, linalg::identity(&f2, 2));
        assert_eq!(n.companion_coeffs().unwrap(), vec![f2.zero(), f2.zero()]);

        let f4 = FieldDesc::new(2, 2).unwrap();
        let id = SigmaMat::identity(f4.clone(), 2);
        let v = vec![f4.one(), f4.generator()];
        let (n, b) = id.companion_form(&v, &f4).unwrap();
        assert!(n.is_companion());
        // phi^2 v = -a_1 v - a_2 phi v
        let a = n.companion_coeffs().unwrap();
        let phi_v = id.apply(&v);
        let phi2_v = id.apply(&phi_v);
        for i in 0..2 {
            let rhs = f4.neg(f4.add(f4.mul(a[0], v[i]), f4.mul(a[1], phi_v[i])));
            assert_eq!(phi2_v[i], rhs);
        }
        assert_eq!(b[0][0], f4.one());
        assert!(shift.companion_form(&[f2.zero(), f2.one()], &f2).is_err());
    }

    #[test]
    fn fixed_space_examples() {
        let f2 = FieldDesc::new(2, 1).unwrap();
        let fs = SigmaMat::identity(f2.clone(), 2).fixed_space(8);
        assert_eq!(fs.dim(), 2);
        assert_eq!(fs.basis, vec![vec![f2.one(), f2.zero()], vec![f2.zero(), f2.one()]]);
        let f4 = FieldDesc::new(2, 2).unwrap();
        let u = fmat(&f4, &[&[2, 0], &[0, 1]]);
        let fs = u.fixed_space(8);
        let g = f4.generator();
        assert_eq!(fs.basis, vec![vec![f4.mul(g, g), f4.zero()], vec![f4.zero(), f4.one()]]);

        let ctx = SeriesCtx::base(f2.clone());
        let us = SigmaMat::new(ctx.clone(), vec![vec![ctx.from_ints(&[1, 1], None)]]).unwrap();
        let sfs = us.fixed_space(8).unwrap();
        assert_eq!(sfs.dim(), 1);
        let x = &sfs.basis[0][0];
        assert!(x.agrees_with(&ctx.from_ints(&[1, 1], None).inv().unwrap()));
        assert!(x.prec().unwrap() >= 32);
    }

    #[test]
    fn presentation_examples() {
        let f3 = FieldDesc::new(3, 1).unwrap();
        let h = fmat(&f3, &[&[0, 2], &[1, 1]]);
        let rel = h.presentation();
        assert_eq!(rel[0].linear, vec![(1, f3.from_int(-1))]);
        assert_eq!(rel[1].linear, vec![(0, f3.from_int(-2)), (1, f3.from_int(-1))]);
        let one = fmat(&f3, &[&[2]]);
        assert_eq!(one.presentation()[0].linear, vec![(0, f3.from_int(-2))]);
        let id = SigmaMat::identity(f3.clone(), 2).presentation();
        assert_eq!(id[0].linear, vec![(0, f3.from_int(-1))]);
        assert_eq!(id[1].linear, vec![(1, f3.from_int(-1))]);
        assert!(presentation_is_etale(&h));
        assert!(!presentation_is_etale(&fmat(&f3, &[&[0, 0], &[1, 0]])));
    }
}
