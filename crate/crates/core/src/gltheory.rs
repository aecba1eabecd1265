//! Finite matrix groups `GL_n(Z/p^m)`: explicit subgroup closure and the
//! generation criteria checked on it.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::ff::{is_prime, FfError, FieldDesc};

pub const DEFAULT_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("level m must be at least 1")]
    BadLevel,
    #[error("size n must be at least 1")]
    BadSize,
    #[error("rows do not form an {0}x{0} matrix")]
    BadShape(usize),
    #[error("matrix is not invertible mod p")]
    Singular,
    #[error("matrices have different (n, p, m)")]
    ShapeMismatch,
    #[error("group order exceeds the element budget {budget}")]
    BudgetExceeded { budget: usize },
    #[error("order does not fit in 128 bits")]
    Overflow,
    #[error(transparent)]
    Field(#[from] FfError),
}

/// An `n x n` matrix with entries in `Z/p^m`, invertible mod `p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    n: usize,
    p: u64,
    m: u32,
    entries: Vec<u64>,
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}^{}", self.rows(), self.p, self.m)
    }
}

fn checked_pow(p: u64, m: u32) -> Result<u64, GlError> {
    p.checked_pow(m).filter(|q| *q <= u32::MAX as u64).ok_or(GlError::Overflow)
}

impl ModMatrix {
    /// Reduces the integer rows mod `p^m`; rejects matrices singular mod `p`.
    pub fn new(n: usize, p: u64, m: u32, rows: &[Vec<i64>]) -> Result<Self, GlError> {
        if !is_prime(p) {
            return Err(GlError::NotPrime(p));
        }
        if m < 1 {
            return Err(GlError::BadLevel);
        }
        if n < 1 {
            return Err(GlError::BadSize);
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GlError::BadShape(n));
        }
        let q = checked_pow(p, m)? as i64;
        let entries = rows.iter().flatten().map(|&x| x.rem_euclid(q) as u64).collect();
        let a = ModMatrix { n, p, m, entries };
        if a.det_mod_p() == 0 {
            return Err(GlError::Singular);
        }
        Ok(a)
    }

    pub fn identity(n: usize, p: u64, m: u32) -> Result<Self, GlError> {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        ModMatrix::new(n, p, m, &rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn same_shape(&self, other: &ModMatrix) -> bool {
        self.n == other.n && self.p == other.p && self.m == other.m
    }

    fn mul_raw(&self, other: &ModMatrix) -> ModMatrix {
        let n = self.n;
        let q = self.modulus();
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + a * other.entries[k * n + j]) % q;
                }
            }
        }
        ModMatrix { entries: out, ..self.clone() }
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix, GlError> {
        if !self.same_shape(other) {
            return Err(GlError::ShapeMismatch);
        }
        Ok(self.mul_raw(other))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.entry(i, j) == (i == j) as u64))
    }

    /// Multiplicative order; finite since the matrix is invertible.
    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul_raw(self);
            k += 1;
        }
        k
    }

    /// The image in `GL_n(Z/p^k)` for `k <= m`.
    pub fn reduce(&self, k: u32) -> Result<ModMatrix, GlError> {
        if k < 1 || k > self.m {
            return Err(GlError::BadLevel);
        }
        let q = self.p.pow(k);
        Ok(ModMatrix { m: k, entries: self.entries.iter().map(|x| x % q).collect(), ..self.clone() })
    }

    /// Determinant mod `p` by elimination.
    pub fn det_mod_p(&self) -> u64 {
        let p = self.p;
        let n = self.n;
        let mut a: Vec<Vec<u64>> = self.rows().into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        let mut det = 1u64;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r][c] != 0) else { return 0 };
            if r != c {
                a.swap(r, c);
                det = (p - det) % p;
            }
            det = det * a[c][c] % p;
            let inv = pow_mod(a[c][c], p - 2, p);
            for r in c + 1..n {
                let f = a[r][c] * inv % p;
                if f != 0 {
                    for j in c..n {
                        a[r][j] = (a[r][j] + p * p - f * a[c][j] % p) % p;
                    }
                }
            }
        }
        det
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `|GL_n(Z/p^m)| = p^{n^2 (m-1)} prod_{i<n} (p^n - p^i)`.
pub fn gl_order(n: usize, p: u64, m: u32) -> Result<u128, GlError> {
    if m < 1 {
        return Err(GlError::BadLevel);
    }
    let p = p as u128;
    let n32 = u32::try_from(n).map_err(|_| GlError::Overflow)?;
    let pn = p.checked_pow(n32).ok_or(GlError::Overflow)?;
    let mut acc: u128 = 1;
    for i in 0..n32 {
        acc = acc.checked_mul(pn - p.pow(i)).ok_or(GlError::Overflow)?;
    }
    let e = n32.checked_mul(n32).and_then(|x| x.checked_mul(m - 1)).ok_or(GlError::Overflow)?;
    acc.checked_mul(p.checked_pow(e).ok_or(GlError::Overflow)?).ok_or(GlError::Overflow)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClosure {
    pub generators: Vec<ModMatrix>,
    /// Sorted by entries.
    pub elements: Vec<ModMatrix>,
    pub order: usize,
}

impl SubgroupClosure {
    pub fn contains(&self, g: &ModMatrix) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// The subgroup generated by `gens`, enumerated breadth first. The shape
/// `(n, p, m)` is taken from `identity`, which must match every generator.
pub fn closure_from(identity: &ModMatrix, gens: &[ModMatrix], budget: usize) -> Result<SubgroupClosure, GlError> {
    if gens.iter().any(|g| !g.same_shape(identity)) {
        return Err(GlError::ShapeMismatch);
    }
    let mut seen: HashSet<ModMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity.clone());
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul_raw(g);
            if !seen.contains(&y) {
                if seen.len() >= budget {
                    return Err(GlError::BudgetExceeded { budget });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<ModMatrix> = seen.into_iter().collect();
    elements.sort();
    Ok(SubgroupClosure { generators: gens.to_vec(), order: elements.len(), elements })
}

/// Closure of a nonempty generator list.
pub fn closure(gens: &[ModMatrix], budget: usize) -> Result<SubgroupClosure, GlError> {
    let g0 = gens.first().ok_or(GlError::BadShape(0))?;
    let id = ModMatrix::identity(g0.n, g0.p, g0.m)?;
    closure_from(&id, gens, budget)
}

/// Multiplication by the primitive element of `F_{p^n}` on the basis
/// `1, g, ..., g^{n-1}`; column `j` holds the coordinates of `prim * g^j`.
pub fn nonsplit_cartan_gen(n: usize, p: u64) -> Result<ModMatrix, GlError> {
    if n < 1 {
        return Err(GlError::BadSize);
    }
    let f = FieldDesc::new(p, n as u32)?;
    let prim = f.primitive();
    let g = f.generator();
    let mut rows = vec![vec![0i64; n]; n];
    let mut basis = f.one();
    for j in 0..n {
        let col = f.mul(prim, basis).coeffs();
        for i in 0..n {
            rows[i][j] = col[i] as i64;
        }
        basis = f.mul(basis, g);
    }
    ModMatrix::new(n, p, 1, &rows)
}

/// All invertible matrices mod `p` of size `k`, as integer rows.
fn all_invertible(k: usize, p: u64) -> Vec<Vec<Vec<i64>>> {
    let total = (p as usize).pow((k * k) as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let d = (c % p as usize) as i64;
                        c /= p as usize;
                        d
                    })
                    .collect()
            })
            .collect();
        if k == 0 || ModMatrix::new(k, p, 1, &rows).is_ok() {
            out.push(rows);
        }
    }
    out
}

/// The mirabolic group `[[A, b], [0, 1]]` in `GL_n(F_p)`.
pub fn mirabolic(n: usize, p: u64) -> Result<Vec<ModMatrix>, GlError> {
    if n < 2 {
        return Err(GlError::BadSize);
    }
    let k = n - 1;
    let mut out = Vec::new();
    for a in all_invertible(k, p) {
        for code in 0..(p as usize).pow(k as u32) {
            let mut c = code;
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..k {
                rows[i][..k].copy_from_slice(&a[i]);
                rows[i][k] = (c % p as usize) as i64;
                c /= p as usize;
            }
            rows[k][k] = 1;
            out.push(ModMatrix::new(n, p, 1, &rows)?);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMirabolicReport {
    pub n: usize,
    pub p: u64,
    pub gl_order: u128,
    pub h_order: usize,
    pub c_order: usize,
    /// `|GL_n(F_p)| = |H| |C|`.
    pub counting: bool,
    /// `H` and `C` meet only in the identity.
    pub intersection_trivial: bool,
    /// `H` and `C` generate `GL_n(F_p)`.
    pub generates: bool,
    /// Order of the group generated by `H` and `C`.
    pub order: usize,
}

pub fn check_cartan_mirabolic(n: usize, p: u64, budget: usize) -> Result<CartanMirabolicReport, GlError> {
    let full = gl_order(n, p, 1)?;
    if full > budget as u128 {
        return Err(GlError::BudgetExceeded { budget });
    }
    let h = mirabolic(n, p)?;
    let cgen = nonsplit_cartan_gen(n, p)?;
    let c = closure(std::slice::from_ref(&cgen), budget)?;
    let common = h.iter().filter(|g| c.contains(g)).count();
    let mut gens = h.clone();
    gens.push(cgen);
    let g = closure(&gens, budget)?;
    Ok(CartanMirabolicReport {
        n,
        p,
        gl_order: full,
        h_order: h.len(),
        c_order: c.order,
        counting: full == (h.len() * c.order) as u128,
        intersection_trivial: common == 1,
        generates: g.order as u128 == full,
        order: g.order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLiftReport {
    pub n: usize,
    pub p: u64,
    pub m_max: u32,
    /// The closure maps onto `GL_n(F_p)`.
    pub condition_i: bool,
    /// Entry `m - 1`: an element `1 + p^m E` with `E = diag(x, 0, ..., 0) mod p`, `x != 0`.
    pub condition_ii: Vec<bool>,
    pub conditions_hold: bool,
    /// The closure is all of `GL_n(Z/p^{m_max + 1})`.
    pub conclusion: bool,
    pub closure_order: usize,
    pub reduction_order: usize,
    pub gl_order: u128,
}

/// `g = 1 + p^m E` with `E` congruent to `diag(x, 0, ..., 0)` mod `p`, `x != 0`.
pub fn is_graded_witness(g: &ModMatrix, m: u32) -> bool {
    let p = g.p;
    let hi = p.pow(m + 1);
    let lo = p.pow(m);
    let q = g.modulus();
    (0..g.n).all(|i| {
        (0..g.n).all(|j| {
            let d = (g.entry(i, j) + q - (i == j) as u64) % q % hi;
            if i == 0 && j == 0 {
                d % lo == 0 && (d / lo) % p != 0
            } else {
                d == 0
            }
        })
    })
}

/// Conditions and conclusion of the graded surjectivity criterion for the
/// subgroup of `GL_n(Z/p^{m_max + 1})` generated by `gens`.
pub fn check_graded_lift(gens: &[ModMatrix], n: usize, p: u64, m_max: u32, budget: usize) -> Result<GradedLiftReport, GlError> {
    let level = m_max + 1;
    let id = ModMatrix::identity(n, p, level)?;
    let cl = closure_from(&id, gens, budget)?;
    let reduced: HashSet<ModMatrix> = cl.elements.iter().map(|g| g.reduce(1)).collect::<Result<_, _>>()?;
    let gl1 = gl_order(n, p, 1)?;
    let full = gl_order(n, p, level)?;
    let condition_i = reduced.len() as u128 == gl1;
    let condition_ii: Vec<bool> = (1..=m_max).map(|m| cl.elements.iter().any(|g| is_graded_witness(g, m))).collect();
    let conditions_hold = condition_i && condition_ii.iter().all(|&b| b);
    Ok(GradedLiftReport {
        n,
        p,
        m_max,
        condition_i,
        condition_ii,
        conditions_hold,
        conclusion: cl.order as u128 == full,
        closure_order: cl.order,
        reduction_order: reduced.len(),
        gl_order: full,
    })
}
