//! Roots of additive polynomials `P(X) = sum a_{i+1} X^{p^i}` over
//! `F_q((t))`: explicit tame root systems, the action of a tame inertia
//! generator on them, and valuation certificates for wild cases.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::btgroup::{additive_poly, BTDesc, BtError};
use crate::ff::{is_irreducible_mod_p, FFElem, FfError, FieldDesc};
use crate::gltheory::{GlError, ModMatrix};
use crate::linalg;
use crate::npoly::{np_hull, np_root_valuations, NpError};
use crate::series::{int_rat, LSeries, SeriesCtx, SeriesError, Valuation};

/// Matching two series needs this many agreeing terms past the largest root valuation.
pub const MIN_MATCH_TERMS: i64 = 8;
/// Largest residue field searched exhaustively for residue roots.
pub const MAX_RESIDUE_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("an additive polynomial needs c >= 1")]
    ZeroDegree,
    #[error("not an additive polynomial shape: {0}")]
    NotAdditive(String),
    #[error("a_1 = 0: the polynomial is not separable")]
    NotSeparable,
    #[error("a_1 vanishes only to precision {0}: separability undetermined")]
    SeparabilityUndetermined(String),
    #[error("root valuation {0} has denominator divisible by p (wild ramification); only certificates are available")]
    Wild(String),
    #[error("{op}: precision exhausted ({detail})")]
    Precision { op: &'static str, detail: String },
    #[error("residue field would exceed {0} elements")]
    ResidueTooLarge(u64),
    #[error("image of root {0} under the tame generator matches no root")]
    Unmatched(usize),
    #[error("computed roots are not closed under addition")]
    NotClosed,
    #[error("found {found} roots, expected {expected}")]
    RootCount { found: usize, expected: usize },
    #[error("{0} is not an automorphism of the extension")]
    BadTwist(String),
    #[error("matrix must be over F_p (level m = 1)")]
    NotModP,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Np(#[from] NpError),
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Gl(#[from] GlError),
    #[error(transparent)]
    Bt(#[from] BtError),
}

type Result<T> = std::result::Result<T, MonodromyError>;

/// `P(X) = a_1 X + a_2 X^p + ... + a_c X^{p^{c-1}} + X^{p^c}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdditivePoly {
    ctx: SeriesCtx,
    coeffs: Vec<LSeries>,
}

impl AdditivePoly {
    pub fn new(coeffs: Vec<LSeries>) -> Result<Self> {
        let ctx = coeffs.first().ok_or(MonodromyError::ZeroDegree)?.ctx().clone();
        if coeffs.iter().any(|a| a.ctx() != &ctx) {
            return Err(SeriesError::CtxMismatch.into());
        }
        Ok(AdditivePoly { ctx, coeffs })
    }

    /// From dense coefficients (constant term first). Only the monomials
    /// `X^{p^i}` may be nonzero and the leading one must be exactly 1.
    pub fn from_dense(f: &[LSeries]) -> Result<Self> {
        let first = f.first().ok_or(MonodromyError::ZeroDegree)?;
        let p = first.ctx().p() as usize;
        let deg = f.len() - 1;
        let mut c = 0;
        let mut q = 1;
        while q < deg {
            q *= p;
            c += 1;
        }
        if deg < p || q != deg {
            return Err(MonodromyError::NotAdditive(format!("degree {deg} is not a positive power of {p}")));
        }
        if f[deg] != first.ctx().one() {
            return Err(MonodromyError::NotAdditive("leading coefficient is not exactly 1".into()));
        }
        let powers: Vec<usize> = (0..c).map(|i| p.pow(i as u32)).collect();
        for (i, a) in f.iter().enumerate().take(deg) {
            if !powers.contains(&i) && !a.is_exact_zero() {
                return Err(MonodromyError::NotAdditive(format!("nonzero coefficient of X^{i}")));
            }
        }
        AdditivePoly::new(powers.iter().map(|&i| f[i].clone()).collect())
    }

    /// The polynomial attached to a companion Hasse-Witt matrix.
    pub fn from_bt(b: &BTDesc<SeriesCtx>) -> Result<Self> {
        let mut a = additive_poly(b)?;
        a.pop();
        AdditivePoly::new(a)
    }

    pub fn ctx(&self) -> &SeriesCtx {
        &self.ctx
    }
    pub fn p(&self) -> u64 {
        self.ctx.p()
    }
    pub fn c(&self) -> usize {
        self.coeffs.len()
    }
    /// `a_1, ..., a_c`.
    pub fn coeffs(&self) -> &[LSeries] {
        &self.coeffs
    }

    /// `a_{i+1}` for `0 <= i <= c`, with `a_{c+1} = 1`.
    fn a(&self, i: usize) -> LSeries {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.one())
    }

    pub fn dense(&self) -> Vec<LSeries> {
        let p = self.p() as usize;
        let deg = p.pow(self.c() as u32);
        let mut f = vec![self.ctx.zero(); deg + 1];
        for i in 0..=self.c() {
            f[p.pow(i as u32)] = self.a(i);
        }
        f
    }

    pub fn eval(&self, x: &LSeries) -> LSeries {
        let mut acc = self.ctx.zero();
        let mut pw = x.clone();
        for a in &self.coeffs {
            acc = acc.add(&a.mul(&pw));
            pw = pw.frobenius();
        }
        acc.add(&pw)
    }

    pub fn extend_into(&self, ctx: &SeriesCtx) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.extend_into(ctx)).collect::<std::result::Result<_, _>>()?;
        Ok(AdditivePoly { ctx: ctx.clone(), coeffs })
    }

    pub fn check_separable(&self) -> Result<()> {
        let a1 = &self.coeffs[0];
        if a1.is_exact_zero() {
            Err(MonodromyError::NotSeparable)
        } else if a1.is_zero_to_prec() {
            Err(MonodromyError::SeparabilityUndetermined(a1.valuation().to_string()))
        } else {
            Ok(())
        }
    }

    /// `min { i : v(a_{i+1}) = 0 }`, the étale-part index of the closed fiber.
    pub fn closed_i0(&self) -> usize {
        (0..=self.c()).find(|&i| self.a(i).ord_bound() == Some(0) && !self.a(i).vanishes()).unwrap_or(self.c())
    }
}

/// Canonical key: zero first, then ascending valuation, then coefficients.
fn root_key(r: &LSeries, upto: i64) -> (bool, i64, Vec<u64>) {
    match r.ord() {
        None => (false, 0, Vec::new()),
        Some(o) => (true, o, (o..upto).map(|k| r.coeff(k).map_or(0, |c| c.value())).collect()),
    }
}

/// Roots in `f` of `constant + sum c_i y^{p^i}`.
fn sparse_roots(f: &FieldDesc, terms: &[(u32, FFElem)], constant: FFElem) -> Vec<FFElem> {
    f.elements()
        .filter(|&y| {
            let s = terms
                .iter()
                .fold(constant, |acc, &(i, c)| f.add(acc, f.mul(c, f.frobenius(y, i))));
            s.is_zero()
        })
        .collect()
}

/// All roots of a tamely ramified `P` in an explicit extension `F_{q'}((u))`.
#[derive(Clone, Debug)]
pub struct TameRootSystem {
    pub poly: AdditivePoly,
    /// Splitting context: `u^E = t^{1/e_0}` over the base ramification `e_0`.
    pub ctx: SeriesCtx,
    /// Ramification index over the base.
    pub e: u32,
    /// Canonical order; `roots[0] = 0`.
    pub roots: Vec<LSeries>,
    /// Order exactly `e`, the tame generator twist `u -> zeta u`.
    pub zeta: FFElem,
    /// Indices of an `F_p`-basis of the roots.
    pub basis: Vec<usize>,
    /// Coordinates of each root in that basis.
    pub coords: Vec<Vec<u64>>,
}

impl TameRootSystem {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Index of the root agreeing with `x` to precision.
    pub fn find(&self, x: &LSeries) -> Option<usize> {
        self.roots.iter().position(|r| r.agrees_with(x))
    }

    /// Valuations of the nonzero roots, ascending.
    pub fn valuations(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self.roots[1..].iter().filter_map(|r| r.valuation().finite().cloned()).collect();
        v.sort();
        v
    }
}

enum Attempt {
    Done(Vec<LSeries>, SeriesCtx),
    LargerField,
    LargerRamification(u32),
}

/// Tame roots with the default residue-field limit.
pub fn tame_roots(poly: &AdditivePoly) -> Result<TameRootSystem> {
    tame_roots_with(poly, MAX_RESIDUE_SIZE)
}

pub fn tame_roots_with(poly: &AdditivePoly, max_residue: u64) -> Result<TameRootSystem> {
    poly.check_separable()?;
    let base = poly.ctx().clone();
    let p = base.p();
    let rv = np_root_valuations(&poly.dense())?;
    let mut ram = base.e();
    for (v, _) in &rv.segments {
        let d = (v * int_rat(base.e() as i64)).denom().to_u64().expect("small denominator");
        if d % p == 0 {
            return Err(MonodromyError::Wild(v.to_string()));
        }
        ram = ram.lcm(&(d as u32 * base.e()));
    }
    let q0 = base.residue().size();
    let n0 = base.residue().degree();
    loop {
        let rel = (ram / base.e()) as u64;
        // least j with rel | q0^j - 1
        let mut j0 = 1;
        let mut pw = q0 % rel.max(1);
        while rel > 1 && pw != 1 {
            pw = pw * q0 % rel;
            j0 += 1;
        }
        let mut j = j0;
        let outcome = loop {
            let size = (q0 as u128).checked_pow(j).unwrap_or(u128::MAX);
            if size > max_residue as u128 {
                return Err(MonodromyError::ResidueTooLarge(max_residue));
            }
            let field = FieldDesc::new(p, n0 * j)?;
            match attempt(poly, &rv.segments, ram, &field)? {
                Attempt::LargerField => j += j0,
                other => break other,
            }
        };
        match outcome {
            Attempt::Done(reps, ctx) => return assemble(poly, ctx, ram / base.e(), reps),
            Attempt::LargerRamification(d) => ram *= d,
            Attempt::LargerField => unreachable!(),
        }
    }
}

fn attempt(poly: &AdditivePoly, segments: &[(BigRational, usize)], ram: u32, field: &FieldDesc) -> Result<Attempt> {
    let base = poly.ctx();
    let ctx = base.extend(ram, field)?;
    let q = poly.extend_into(&ctx)?;
    let p = ctx.p();
    let c = q.c();
    let ords: Vec<Option<i64>> = (0..=c).map(|i| q.a(i).ord()).collect();
    let leads: Vec<Option<FFElem>> = (0..=c).map(|i| q.a(i).leading_coeff()).collect();
    let mut reps = Vec::new();
    for (v, _) in segments {
        let s = (v * int_rat(ram as i64)).to_integer().to_i64().expect("integral valuation");
        let height = |i: usize| ords[i].map(|o| o + p.pow(i as u32) as i64 * s);
        let m = (0..=c).filter_map(height).min().expect("leading term");
        let terms: Vec<(u32, FFElem)> = (0..=c)
            .filter(|&i| height(i) == Some(m))
            .map(|i| (i as u32, leads[i].unwrap()))
            .collect();
        let ys: Vec<FFElem> = sparse_roots(field, &terms, field.zero()).into_iter().filter(|y| !y.is_zero()).collect();
        let expect = p.pow(terms.last().unwrap().0 - terms[0].0) as usize - 1;
        if ys.len() < expect {
            return Ok(Attempt::LargerField);
        }
        for y in ys {
            match refine(&q, ctx.monomial(y, s), field)? {
                Ok(r) => reps.push(r),
                Err(a) => return Ok(a),
            }
        }
    }
    Ok(Attempt::Done(reps, ctx))
}

/// Improve an approximate root term by term, then finish with Newton's
/// method `x <- x - P(x) / a_1` (the derivative of `P` is `a_1`).
fn refine(q: &AdditivePoly, mut x: LSeries, field: &FieldDesc) -> Result<std::result::Result<LSeries, Attempt>> {
    let ctx = q.ctx().clone();
    let p = ctx.p();
    let c = q.c();
    let a1 = q.a(0);
    let d1 = a1.ord().expect("separable");
    for _ in 0..4 * ctx.prec() + 16 {
        let px = q.eval(&x);
        let Some(b) = px.ord() else { break };
        if b > 2 * d1 {
            break;
        }
        // first segment of the polygon of d -> P(x) + P(d)
        let mut best: Option<BigRational> = None;
        for i in 0..=c {
            if let Some(o) = q.a(i).ord() {
                let k = BigRational::new((b - o).into(), (p.pow(i as u32) as i64).into());
                if best.as_ref().is_none_or(|m| k > *m) {
                    best = Some(k);
                }
            }
        }
        let k = best.unwrap();
        if !k.is_integer() {
            let d = k.denom().to_u32().unwrap();
            if d as u64 % p == 0 {
                return Err(MonodromyError::Wild(k.to_string()));
            }
            return Ok(Err(Attempt::LargerRamification(d)));
        }
        let k = k.to_integer().to_i64().unwrap();
        let terms: Vec<(u32, FFElem)> = (0..=c)
            .filter(|&i| q.a(i).ord().is_some_and(|o| o + p.pow(i as u32) as i64 * k == b))
            .map(|i| (i as u32, q.a(i).leading_coeff().unwrap()))
            .collect();
        let ys = sparse_roots(field, &terms, px.leading_coeff().unwrap());
        let Some(&y) = ys.iter().min_by_key(|y| y.value()) else {
            return Ok(Err(Attempt::LargerField));
        };
        x = x.add(&ctx.monomial(y, k)).to_exact();
    }
    let inv = a1.inv()?;
    let mut px = q.eval(&x);
    for _ in 0..256 {
        if px.vanishes() {
            break;
        }
        let next = x.sub(&px.mul(&inv)).to_exact();
        if next == x {
            break;
        }
        x = next;
        px = q.eval(&x);
    }
    if px.is_exact_zero() {
        return Ok(Ok(x));
    }
    let b = px.ord_bound().unwrap();
    if !px.vanishes() && b <= 2 * d1 {
        return Err(MonodromyError::Precision { op: "tame_roots", detail: format!("residual {} after refinement", px.valuation()) });
    }
    Ok(Ok(x.truncate(b - d1)))
}

fn assemble(poly: &AdditivePoly, ctx: SeriesCtx, e: u32, reps: Vec<LSeries>) -> Result<TameRootSystem> {
    let p = ctx.p();
    let c = poly.c();
    let expected = (p as usize).pow(c as u32);
    let mut span = vec![ctx.zero()];
    for r in &reps {
        if span.iter().any(|s| s.agrees_with(r)) {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * p as usize);
        for s in &span {
            let mut acc = s.clone();
            for _ in 0..p {
                next.push(acc.clone());
                acc = acc.add(r);
            }
        }
        span = next;
    }
    if span.len() != expected {
        return Err(MonodromyError::RootCount { found: span.len(), expected });
    }
    let known = span.iter().filter_map(|r| r.prec()).min();
    let n_min = known.unwrap_or(ctx.prec());
    let s_max = span.iter().filter_map(|r| r.ord()).max().unwrap_or(0);
    if known.is_some() && n_min - s_max < MIN_MATCH_TERMS {
        return Err(MonodromyError::Precision {
            op: "tame_roots",
            detail: format!("roots known modulo u^{n_min}, need u^{}", s_max + MIN_MATCH_TERMS),
        });
    }
    let mut roots: Vec<LSeries> = span
        .into_iter()
        .map(|r| if known.is_none() || r.is_exact_zero() { r } else { r.truncate(n_min) })
        .collect();
    roots.sort_by_key(|r| root_key(r, n_min));
    let qx = poly.extend_into(&ctx)?;
    if let Some(i) = roots.iter().position(|r| !qx.eval(r).vanishes()) {
        return Err(MonodromyError::Precision { op: "tame_roots", detail: format!("root {i} does not satisfy P to precision") });
    }
    let find = |x: &LSeries| roots.iter().position(|r| r.agrees_with(x));
    for a in &roots {
        for b in &roots {
            if find(&a.add(b)).is_none() {
                return Err(MonodromyError::NotClosed);
            }
        }
    }
    // greedy basis over the canonical order
    let mut basis: Vec<usize> = Vec::new();
    let mut cover: Vec<Option<Vec<u64>>> = vec![None; roots.len()];
    cover[0] = Some(Vec::new());
    for i in 1..roots.len() {
        if cover[i].is_some() {
            continue;
        }
        basis.push(i);
        let k = basis.len();
        let old: Vec<(usize, Vec<u64>)> = cover
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.clone().map(|c| (j, c)))
            .collect();
        for (j, mut cj) in old {
            cj.resize(k, 0);
            let mut acc = roots[j].clone();
            for m in 1..p {
                acc = acc.add(&roots[i]);
                let idx = find(&acc).ok_or(MonodromyError::NotClosed)?;
                let mut v = cj.clone();
                v[k - 1] = m;
                cover[idx] = Some(v);
            }
            cover[j] = Some(cj);
        }
    }
    let dim = basis.len();
    let coords = cover
        .into_iter()
        .map(|c| {
            let mut c = c.expect("spanned");
            c.resize(dim, 0);
            c
        })
        .collect();
    let f = ctx.residue();
    let zeta = f.pow_u(f.primitive(), (f.size() - 1) / e as u64);
    Ok(TameRootSystem { poly: poly.clone(), ctx, e, roots, zeta, basis, coords })
}

/// The permutation and `F_p`-linear action of `u -> zeta u` on a root system.
#[derive(Clone, Debug)]
pub struct GeneratorAction {
    pub zeta: FFElem,
    /// `perm[i]` is the index of the image of root `i`.
    pub perm: Vec<usize>,
    /// Column `k` holds the coordinates of the image of basis root `k`.
    pub matrix: ModMatrix,
    pub order: u64,
    /// Every nonzero orbit has size `order`.
    pub free: bool,
    /// A single orbit on the nonzero roots.
    pub transitive: bool,
}

pub fn tame_generator_matrix(sys: &TameRootSystem) -> Result<GeneratorAction> {
    tame_generator_matrix_with(sys, sys.zeta)
}

/// The action of `u -> z u`; `z^e` must be 1 so that the twist fixes the base.
pub fn tame_generator_matrix_with(sys: &TameRootSystem, z: FFElem) -> Result<GeneratorAction> {
    let f = sys.ctx.residue();
    if !f.contains(&z) || !f.pow_u(z, sys.e as u64).is_one() {
        return Err(MonodromyError::BadTwist(format!("u -> {z} u")));
    }
    let mut perm = Vec::with_capacity(sys.roots.len());
    for (i, r) in sys.roots.iter().enumerate() {
        perm.push(sys.find(&r.twist_uniformizer(z)).ok_or(MonodromyError::Unmatched(i))?);
    }
    let n = sys.dim();
    let p = sys.ctx.p();
    let matrix = if n == 0 {
        None
    } else {
        let mut rows = vec![vec![0i64; n]; n];
        for (k, &b) in sys.basis.iter().enumerate() {
            for (i, &x) in sys.coords[perm[b]].iter().enumerate() {
                rows[i][k] = x as i64;
            }
        }
        Some(ModMatrix::new(n, p, 1, &rows)?)
    };
    let matrix = matrix.ok_or(MonodromyError::ZeroDegree)?;
    let order = matrix.order();
    let mut seen = vec![false; perm.len()];
    let mut orbits = Vec::new();
    for start in 1..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        orbits.push(len);
    }
    Ok(GeneratorAction {
        zeta: z,
        free: orbits.iter().all(|&l| l == order),
        transitive: orbits.len() == 1,
        perm,
        matrix,
        order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport {
    /// `F_p[M]` has no zero divisors.
    pub is_field: bool,
    /// `dim_{F_p} F_p[M]`.
    pub algebra_dim: usize,
    pub order: u64,
    /// `F_p[M]` is a field with `p^n` elements.
    pub in_nonsplit_cartan: bool,
    /// `M` generates that field's unit group.
    pub generates_cartan: bool,
    /// Minimal polynomial, constant term first, monic.
    pub minimal_polynomial: Vec<u64>,
}

/// Whether the span of the powers of an invertible `M` over `F_p` is the
/// field `F_{p^n}`.
pub fn cartan_check(m: &ModMatrix) -> Result<CartanReport> {
    if m.m() != 1 {
        return Err(MonodromyError::NotModP);
    }
    let n = m.n();
    let p = m.p();
    let f = FieldDesc::new(p, 1)?;
    let vecs = |a: &ModMatrix| -> Vec<FFElem> { a.rows().into_iter().flatten().map(|x| f.from_int(x as i64)).collect() };
    let mut powers = vec![vecs(&ModMatrix::identity(n, p, 1)?)];
    let mut cur = m.clone();
    let minpoly = loop {
        let target = vecs(&cur);
        let cols: Vec<Vec<FFElem>> = (0..n * n).map(|r| powers.iter().map(|v| v[r]).collect()).collect();
        if let Some(x) = linalg::solve(&f, &cols, &target) {
            let mut mp: Vec<u64> = x.iter().map(|c| f.neg(*c).value()).collect();
            mp.push(1);
            break mp;
        }
        powers.push(target);
        cur = cur.mul(m)?;
    };
    let dim = minpoly.len() - 1;
    let is_field = is_irreducible_mod_p(&minpoly, p);
    let order = m.order();
    let in_cartan = is_field && dim == n;
    Ok(CartanReport {
        is_field,
        algebra_dim: dim,
        order,
        in_nonsplit_cartan: in_cartan,
        generates_cartan: in_cartan && order as u128 + 1 == (p as u128).pow(n as u32),
        minimal_polynomial: minpoly,
    })
}

/// A constant `alpha` with `v(P(alpha)) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub alpha: FFElem,
    /// `alpha` in the compositum with the residue field.
    pub alpha_embedded: FFElem,
    pub field: FieldDesc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSearch {
    pub witness: Option<Witness>,
    /// `v(P(alpha))` for the witness.
    pub value: Option<BigRational>,
    pub searched: usize,
    /// `v(a_1) = 1`; without it a witness proves nothing about the class.
    pub hypothesis_holds: bool,
}

/// Search the constants of `search` in value order for `v(P(alpha)) = 1`.
pub fn nonsplit_witness(poly: &AdditivePoly, search: &FieldDesc) -> Result<WitnessSearch> {
    let base = poly.ctx();
    let field = base.residue().compositum(search)?;
    let ctx = SeriesCtx::new(field.clone(), base.e(), base.prec())?;
    let q = poly.extend_into(&ctx)?;
    let one = int_rat(1);
    let hypothesis_holds = poly.coeffs[0].valuation().finite() == Some(&one);
    let mut searched = 0;
    for alpha in search.elements() {
        searched += 1;
        let a = search.embed(alpha, &field)?;
        if let Valuation::Finite(v) = q.eval(&ctx.constant(a)).valuation() {
            if v == one {
                return Ok(WitnessSearch {
                    witness: Some(Witness { alpha, alpha_embedded: a, field }),
                    value: Some(v),
                    searched,
                    hypothesis_holds,
                });
            }
        }
    }
    Ok(WitnessSearch { witness: None, value: None, searched, hypothesis_holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyCertificate {
    /// `(valuation, multiplicity)` of the nonzero roots of `P`.
    pub slopes: Vec<(BigRational, usize)>,
    /// Valuations of `r - alpha` over the roots `r`, when a witness is given.
    pub witness_slopes: Option<Vec<(BigRational, usize)>>,
    /// Each divides the ramification index of the splitting field.
    pub ram_divisors: Vec<u64>,
    pub tame: bool,
    /// Each divides the order of the image of the Galois action on the roots.
    pub image_order_divisors: Vec<u64>,
    pub closed_i0: usize,
}

fn denominators(segs: &[(BigRational, usize)]) -> Vec<u64> {
    segs.iter().map(|(v, _)| v.denom().to_u64().unwrap()).collect()
}

/// Ramification certificates from Newton polygons. A root valuation `a/b`
/// in lowest terms (over the base) forces `b | e(L/K)`. With a witness
/// `alpha` in the residue field, the polygon of `P(X) + P(alpha)` gives the
/// valuations of `r - alpha` and certifies further divisors.
pub fn monodromy_certificate(poly: &AdditivePoly, witness: Option<&Witness>) -> Result<MonodromyCertificate> {
    poly.check_separable()?;
    let e0 = poly.ctx().e();
    let scale = int_rat(e0 as i64);
    let rv = np_root_valuations(&poly.dense())?;
    let to_base = |segs: &[(BigRational, usize)]| -> Vec<(BigRational, usize)> { segs.iter().map(|(v, m)| (v * &scale, *m)).collect() };
    let slopes = to_base(&rv.segments);
    let mut dens = denominators(&slopes);
    let witness_slopes = match witness {
        None => None,
        Some(w) => {
            let ctx = SeriesCtx::new(w.field.clone(), e0, poly.ctx().prec())?;
            let q = poly.extend_into(&ctx)?;
            let mut f = q.dense();
            f[0] = q.eval(&ctx.constant(w.alpha_embedded));
            let wr = np_root_valuations(&f)?;
            let segs = to_base(&wr.segments);
            dens.extend(denominators(&segs));
            Some(segs)
        }
    };
    let p = poly.p();
    let tame = dens.iter().all(|d| d % p != 0);
    let mut divs: Vec<u64> = dens.iter().copied().filter(|&d| d > 1).collect();
    let l = divs.iter().fold(1u64, |a, b| a.lcm(b));
    if l > 1 {
        divs.push(l);
    }
    divs.sort_unstable();
    divs.dedup();
    if divs.is_empty() {
        divs.push(1);
    }
    Ok(MonodromyCertificate {
        slopes,
        witness_slopes,
        image_order_divisors: divs.clone(),
        ram_divisors: divs,
        tame,
        closed_i0: poly.closed_i0(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgusaTower {
    /// `v(y_1), ..., v(y_n)`.
    pub valuations: Vec<BigRational>,
    /// Denominator of `v(y_n)`, a divisor of the ramification at level `n`.
    pub ram_bound: u64,
}

/// Valuations of a compatible chain `V(y_1) = 0`, `V^{(p^{i-1})}(y_i) = y_{i-1}`
/// for `V(X) = a_1 X + alpha X^p`, read off Newton polygons.
pub fn igusa_tower(p: u64, a1: &LSeries, alpha: &LSeries, n: usize) -> Result<IgusaTower> {
    if a1.ctx().p() != p || alpha.ctx().p() != p {
        return Err(MonodromyError::Hypothesis(format!("series are not in characteristic {p}")));
    }
    if n < 1 {
        return Err(MonodromyError::Hypothesis("at least one level is needed".into()));
    }
    let one = int_rat(1);
    let va = a1.valuation().finite().cloned();
    if va.as_ref() != Some(&one) {
        return Err(MonodromyError::Hypothesis(format!("v(a_1) = {}, expected 1", a1.valuation())));
    }
    let vb = alpha.valuation().finite().cloned();
    if !vb.as_ref().is_some_and(|v| v.is_zero()) {
        return Err(MonodromyError::Hypothesis(format!("v(alpha) = {}, expected 0", alpha.valuation())));
    }
    let va = va.unwrap();
    let mut prev: Option<BigRational> = None;
    let mut out = Vec::new();
    for i in 1..=n {
        let scale = int_rat(p.pow(i as u32 - 1) as i64);
        let pts = vec![(0, prev.clone()), (1, Some(&va * &scale)), (p as i64, Some(BigRational::zero()))];
        let hull = np_hull(&pts)?;
        let v = -hull.slopes[0].0.clone();
        if !v.is_positive() {
            return Err(MonodromyError::Hypothesis(format!("level {i} has a unit solution")));
        }
        prev = Some(v.clone());
        out.push(v);
    }
    let ram_bound = out.last().unwrap().denom().to_u64().unwrap();
    Ok(IgusaTower { valuations: out, ram_bound })
}

/// `1 / (p^{i-1} (p - 1))`.
pub fn igusa_expected(p: u64, i: u32) -> BigRational {
    BigRational::new(One::one(), ((p.pow(i - 1) * (p - 1)) as i64).into())
}
