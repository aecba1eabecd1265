//! Prime fields and their extensions `F_{p^n}`.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! coefficients in the power basis `1, x, ..., x^{n-1}` modulo the field's
//! defining polynomial. That integer doubles as the canonical element order
//! used for every deterministic search in the crate ("least primitive
//! element", "least root", ...).
//!
//! Fields are interned: [`FieldDesc::new`] returns the same descriptor for
//! the same `(p, n)`, so descriptors are cheap to clone and compare.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

/// Fields up to this size get log/exp tables for multiplication.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("F_{p}^{n} does not fit the element encoding")]
    TooLarge { p: u64, n: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("elements belong to different fields ({0} vs {1})")]
    FieldMismatch(FieldId, FieldId),
    #[error("F_{p}^{from} does not embed in F_{p}^{into}")]
    NotSubfield { p: u64, from: u32, into: u32 },
    #[error("coefficient vector {coeffs:?} is not an element of F_{p}^{n}")]
    BadCoefficients { p: u64, n: u32, coeffs: Vec<u64> },
}

/// `(p, n)`; identifies a field since the modulus is fixed by `(p, n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FieldId {
    pub p: u32,
    pub n: u32,
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.n)
        }
    }
}

/// An element of some `F_{p^n}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    id: FieldId,
    val: u64,
}

impl FFElem {
    pub fn field_id(&self) -> FieldId {
        self.id
    }

    /// Base-`p` integer encoding of the coefficient vector.
    pub fn value(&self) -> u64 {
        self.val
    }

    pub fn is_zero(&self) -> bool {
        self.val == 0
    }

    pub fn is_one(&self) -> bool {
        self.val == 1
    }

    /// Little-endian coefficient vector of length `n`.
    pub fn coeffs(&self) -> Vec<u64> {
        let p = self.id.p as u64;
        let mut v = self.val;
        (0..self.id.n)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.id.n == 1 {
            write!(f, "{}", self.val)
        } else {
            write!(f, "{:?}", self.coeffs())
        }
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.coeffs();
        let mut parts = Vec::new();
        for (i, &c) in cs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}g^{i}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow(i64),
}

struct Tables {
    /// exp[i] = prim^i for 0 <= i < 2(q-1).
    exp: Vec<u32>,
    /// log[x] for x != 0.
    log: Vec<u32>,
}

struct FieldInner {
    id: FieldId,
    p: u64,
    n: u32,
    size: u64,
    /// Monic, little-endian, length n+1.
    modulus: Vec<u64>,
    /// p^i for i < n.
    pows: Vec<u64>,
    primitive: u64,
    tables: Option<Tables>,
}

/// Descriptor of `F_{p^n}`: characteristic, degree and defining polynomial.
#[derive(Clone)]
pub struct FieldDesc(Arc<FieldInner>);

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}
impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[mod {:?}]", self.0.id, self.0.modulus)
    }
}

fn registry() -> &'static Mutex<HashMap<FieldId, FieldDesc>> {
    static REG: OnceLock<Mutex<HashMap<FieldId, FieldDesc>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over `F_p` of a polynomial given by coefficients mod `p`,
/// constant term first. Constants and zero are not irreducible.
pub fn is_irreducible_mod_p(coeffs: &[u64], p: u64) -> bool {
    let mut f: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
    while f.last() == Some(&0) {
        f.pop();
    }
    f.len() >= 2 && fp_poly::is_irreducible(&f, p)
}

impl FieldDesc {
    /// The field with `p^n` elements, defined by the lexicographically least
    /// monic irreducible polynomial of degree `n` (low-degree coefficients
    /// compared first).
    pub fn new(p: u64, n: u32) -> Result<Self, FfError> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(FfError::NotPrime(p));
        }
        if n < 1 {
            return Err(FfError::ZeroDegree);
        }
        let id = FieldId { p: p as u32, n };
        if let Some(f) = registry().lock().unwrap().get(&id) {
            return Ok(f.clone());
        }
        let mut size: u64 = 1;
        for _ in 0..n {
            size = size
                .checked_mul(p)
                .filter(|s| *s < (1u64 << 62))
                .ok_or(FfError::TooLarge { p, n })?;
        }
        let modulus = fp_poly::least_irreducible(p, n as usize);
        let pows = (0..n).map(|i| p.pow(i)).collect();
        let mut inner = FieldInner {
            id,
            p,
            n,
            size,
            modulus,
            pows,
            primitive: 0,
            tables: None,
        };
        inner.primitive = find_primitive(&inner);
        if size <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        let f = FieldDesc(Arc::new(inner));
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry(id).or_insert(f).clone())
    }

    pub fn id(&self) -> FieldId {
        self.0.id
    }
    pub fn p(&self) -> u64 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.n
    }
    pub fn size(&self) -> u64 {
        self.0.size
    }
    /// Monic defining polynomial, little-endian, length `n + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FFElem {
        self.raw(0)
    }
    pub fn one(&self) -> FFElem {
        self.raw(1)
    }

    /// Image of an integer under `Z -> F_p -> F_{p^n}`.
    pub fn from_int(&self, k: i64) -> FFElem {
        self.raw(k.rem_euclid(self.0.p as i64) as u64)
    }

    /// The class of the modulus variable (`g` in the docs); `0` when `n = 1`.
    pub fn generator(&self) -> FFElem {
        if self.0.n == 1 {
            // x mod x
            return self.from_int(-(self.0.modulus[0] as i64));
        }
        self.raw(self.0.p)
    }

    /// Element with the given base-`p` encoding.
    pub fn from_value(&self, val: u64) -> Result<FFElem, FfError> {
        if val >= self.0.size {
            return Err(FfError::BadCoefficients {
                p: self.0.p,
                n: self.0.n,
                coeffs: vec![val],
            });
        }
        Ok(self.raw(val))
    }

    /// Element from a little-endian coefficient vector; must have length `n`.
    pub fn elem(&self, coeffs: &[u64]) -> Result<FFElem, FfError> {
        if coeffs.len() != self.0.n as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(FfError::BadCoefficients {
                p: self.0.p,
                n: self.0.n,
                coeffs: coeffs.to_vec(),
            });
        }
        Ok(self.raw(self.encode(coeffs)))
    }

    /// All elements, in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.0.size).map(move |v| self.raw(v))
    }

    pub fn contains(&self, x: &FFElem) -> bool {
        x.id == self.0.id
    }

    fn raw(&self, val: u64) -> FFElem {
        FFElem { id: self.0.id, val }
    }

    fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c)
    }

    #[inline]
    fn check(&self, x: &FFElem) {
        assert_eq!(x.id, self.0.id, "element of {} used in {}", x.id, self.0.id);
    }

    pub fn add(&self, x: FFElem, y: FFElem) -> FFElem {
        self.check(&x);
        self.check(&y);
        self.raw(add_vals(&self.0, x.val, y.val))
    }

    pub fn neg(&self, x: FFElem) -> FFElem {
        self.check(&x);
        if self.0.p == 2 {
            return x;
        }
        let p = self.0.p;
        let mut out = 0u64;
        let mut v = x.val;
        for &pw in &self.0.pows {
            let d = v % p;
            v /= p;
            out += ((p - d) % p) * pw;
        }
        self.raw(out)
    }

    pub fn sub(&self, x: FFElem, y: FFElem) -> FFElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FFElem, y: FFElem) -> FFElem {
        self.check(&x);
        self.check(&y);
        if x.val == 0 || y.val == 0 {
            return self.zero();
        }
        if let Some(t) = &self.0.tables {
            let i = t.log[x.val as usize] as usize + t.log[y.val as usize] as usize;
            return self.raw(t.exp[i] as u64);
        }
        self.raw(mul_vals(&self.0, x.val, y.val))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: FFElem) -> Option<FFElem> {
        self.check(&x);
        if x.val == 0 {
            return None;
        }
        let q1 = self.0.size - 1;
        if let Some(t) = &self.0.tables {
            let l = t.log[x.val as usize] as u64;
            return Some(self.raw(t.exp[((q1 - l) % q1) as usize] as u64));
        }
        Some(self.pow_u(x, q1 - 1))
    }

    /// `x^k` for any integer `k`; negative exponents invert first, and `0^0 = 1`.
    pub fn pow(&self, x: FFElem, k: i64) -> Result<FFElem, FfError> {
        self.check(&x);
        if k == 0 {
            return Ok(self.one());
        }
        if x.val == 0 {
            return if k > 0 { Ok(self.zero()) } else { Err(FfError::ZeroInverse) };
        }
        let q1 = (self.0.size - 1) as i128;
        let e = (k as i128).rem_euclid(q1) as u64;
        Ok(self.pow_u(x, e))
    }

    /// `x^k` for a nonnegative exponent, with reduction mod `q - 1`.
    pub fn pow_u(&self, x: FFElem, k: u64) -> FFElem {
        self.check(&x);
        if k == 0 {
            return self.one();
        }
        if x.val == 0 {
            return self.zero();
        }
        let q1 = self.0.size - 1;
        if let Some(t) = &self.0.tables {
            let l = t.log[x.val as usize] as u128;
            let i = (l * (k % q1) as u128 % q1 as u128) as usize;
            return self.raw(t.exp[i] as u64);
        }
        let mut e = k % q1;
        if e == 0 {
            return self.one();
        }
        let mut base = x.val;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_vals(&self.0, acc, base);
            }
            base = mul_vals(&self.0, base, base);
            e >>= 1;
        }
        self.raw(acc)
    }

    /// Checked binary/unary arithmetic; `y` is ignored for `Inv` and `Pow`.
    pub fn arith(&self, x: FFElem, y: FFElem, op: ArithOp) -> Result<FFElem, FfError> {
        for z in [x, y] {
            if z.id != self.0.id {
                return Err(FfError::FieldMismatch(z.id, self.0.id));
            }
        }
        match op {
            ArithOp::Add => Ok(self.add(x, y)),
            ArithOp::Sub => Ok(self.sub(x, y)),
            ArithOp::Mul => Ok(self.mul(x, y)),
            ArithOp::Div => {
                let yi = self.inv(y).ok_or(FfError::ZeroInverse)?;
                Ok(self.mul(x, yi))
            }
            ArithOp::Inv => self.inv(x).ok_or(FfError::ZeroInverse),
            ArithOp::Pow(k) => self.pow(x, k),
        }
    }

    /// `x^{p^k}`.
    pub fn frobenius(&self, x: FFElem, k: u32) -> FFElem {
        self.check(&x);
        let k = k % self.0.n;
        let mut y = x;
        for _ in 0..k {
            y = self.pow_u(y, self.0.p);
        }
        y
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FFElem) -> Option<u64> {
        self.check(&x);
        if x.val == 0 {
            return None;
        }
        let mut ord = self.0.size - 1;
        for q in prime_factors(ord) {
            while ord % q == 0 && self.pow_u(x, ord / q).is_one() {
                ord /= q;
            }
        }
        Some(ord)
    }

    /// Least generator of the multiplicative group.
    pub fn primitive(&self) -> FFElem {
        self.raw(self.0.primitive)
    }

    /// An element of exact multiplicative order `d`: `primitive^((q-1)/d)`.
    pub fn root_of_unity(&self, d: u64) -> Option<FFElem> {
        let q1 = self.0.size - 1;
        if d == 0 || q1 % d != 0 {
            return None;
        }
        Some(self.pow_u(self.primitive(), q1 / d))
    }

    /// Embed `x` into `into`; see [`Embedding`].
    pub fn embed(&self, x: FFElem, into: &FieldDesc) -> Result<FFElem, FfError> {
        Ok(Embedding::new(self, into)?.apply(x))
    }

    /// Evaluate a polynomial with coefficients in this field.
    pub fn eval_poly(&self, coeffs: &[FFElem], x: FFElem) -> FFElem {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots of a polynomial in this field, by exhaustive evaluation.
    pub fn roots_of(&self, coeffs: &[FFElem]) -> Vec<FFElem> {
        self.elements()
            .filter(|&x| self.eval_poly(coeffs, x).is_zero())
            .collect()
    }

    /// The smallest field containing both this field and `other`.
    pub fn compositum(&self, other: &FieldDesc) -> Result<FieldDesc, FfError> {
        if self.p() != other.p() {
            return Err(FfError::NotSubfield {
                p: self.p(),
                from: other.degree(),
                into: self.degree(),
            });
        }
        let n = num_integer::lcm(self.degree(), other.degree());
        FieldDesc::new(self.p(), n)
    }
}

fn add_vals(f: &FieldInner, a: u64, b: u64) -> u64 {
    if f.p == 2 {
        return a ^ b;
    }
    let p = f.p;
    let (mut a, mut b) = (a, b);
    let mut out = 0u64;
    for &pw in &f.pows {
        let d = (a % p + b % p) % p;
        a /= p;
        b /= p;
        out += d * pw;
    }
    out
}

fn mul_vals(f: &FieldInner, a: u64, b: u64) -> u64 {
    let n = f.n as usize;
    let p = f.p;
    let da = decode_digits(f, a);
    let db = decode_digits(f, b);
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y % p) % p;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..n {
            let m = f.modulus[i];
            if m != 0 {
                prod[k - n + i] = (prod[k - n + i] + (p - c) * m % p) % p;
            }
        }
    }
    prod[..n].iter().rev().fold(0u64, |acc, &c| acc * p + c)
}

fn decode_digits(f: &FieldInner, val: u64) -> Vec<u64> {
    let mut v = val;
    (0..f.n)
        .map(|_| {
            let d = v % f.p;
            v /= f.p;
            d
        })
        .collect()
}

fn pow_vals(f: &FieldInner, x: u64, mut e: u64) -> u64 {
    let mut base = x;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_vals(f, acc, base);
        }
        base = mul_vals(f, base, base);
        e >>= 1;
    }
    acc
}

fn find_primitive(f: &FieldInner) -> u64 {
    let q1 = f.size - 1;
    if q1 == 1 {
        return 1;
    }
    let factors = prime_factors(q1);
    (1..f.size)
        .find(|&x| factors.iter().all(|&r| pow_vals(f, x, q1 / r) != 1))
        .expect("multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &FieldInner) -> Tables {
    let q1 = (f.size - 1) as usize;
    let mut exp = vec![0u32; 2 * q1.max(1)];
    let mut log = vec![0u32; f.size as usize];
    let mut x = 1u64;
    for i in 0..q1 {
        exp[i] = x as u32;
        log[x as usize] = i as u32;
        x = mul_vals(f, x, f.primitive);
    }
    for i in q1..2 * q1 {
        exp[i] = exp[i - q1];
    }
    if q1 == 0 {
        exp[0] = 1;
    }
    Tables { exp, log }
}

fn embedding_cache() -> &'static Mutex<HashMap<(FieldId, FieldId), Arc<Vec<FFElem>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(FieldId, FieldId), Arc<Vec<FFElem>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// A ring homomorphism `F_{p^a} -> F_{p^b}` for `a | b`.
///
/// The image of the source generator is the root of the source modulus in
/// the target with least encoding.
#[derive(Clone)]
pub struct Embedding {
    from: FieldDesc,
    into: FieldDesc,
    /// Images of 1, g, ..., g^{a-1}.
    basis: Arc<Vec<FFElem>>,
}

impl Embedding {
    pub fn new(from: &FieldDesc, into: &FieldDesc) -> Result<Self, FfError> {
        if from.p() != into.p() || into.degree() % from.degree() != 0 {
            return Err(FfError::NotSubfield {
                p: from.p(),
                from: from.degree(),
                into: into.degree(),
            });
        }
        let key = (from.id(), into.id());
        if let Some(b) = embedding_cache().lock().unwrap().get(&key) {
            return Ok(Embedding {
                from: from.clone(),
                into: into.clone(),
                basis: b.clone(),
            });
        }
        let a = from.degree();
        let basis = if a == 1 {
            vec![into.one()]
        } else if from == into {
            (0..a).map(|i| into.pow_u(into.generator(), i as u64)).collect()
        } else {
            let modulus: Vec<FFElem> = from
                .modulus()
                .iter()
                .map(|&c| into.from_int(c as i64))
                .collect();
            // The subfield of order p^a is {0} together with the powers of y.
            let k = (into.size() - 1) / (from.size() - 1);
            let y = into.pow_u(into.primitive(), k);
            let mut root: Option<FFElem> = None;
            let mut z = into.one();
            for _ in 0..(from.size() - 1) {
                if into.eval_poly(&modulus, z).is_zero() && root.is_none_or(|r| z < r) {
                    root = Some(z);
                }
                z = into.mul(z, y);
            }
            let r = root.expect("modulus splits in every extension of its degree");
            (0..a).map(|i| into.pow_u(r, i as u64)).collect()
        };
        let basis = Arc::new(basis);
        embedding_cache().lock().unwrap().insert(key, basis.clone());
        Ok(Embedding {
            from: from.clone(),
            into: into.clone(),
            basis,
        })
    }

    pub fn source(&self) -> &FieldDesc {
        &self.from
    }

    pub fn target(&self) -> &FieldDesc {
        &self.into
    }

    pub fn apply(&self, x: FFElem) -> FFElem {
        self.from.check(&x);
        let mut acc = self.into.zero();
        for (c, b) in x.coeffs().into_iter().zip(self.basis.iter()) {
            if c != 0 {
                acc = self.into.add(acc, self.into.mul(self.into.from_int(c as i64), *b));
            }
        }
        acc
    }
}

/// Polynomials over `F_p` as little-endian `u64` coefficient vectors; only
/// what the modulus search needs.
mod fp_poly {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm && !(a.len() == 1 && a[0] == 0) {
            let da = a.len() - 1;
            let c = a[da] * lead_inv % p;
            if c != 0 {
                for i in 0..=dm {
                    a[da - dm + i] = (a[da - dm + i] + p - c * m[i] % p) % p;
                }
            }
            a.pop();
            a = trim(a);
            if a.is_empty() {
                a.push(0);
            }
        }
        a
    }

    fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !(b.len() == 1 && b[0] == 0) {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: f of degree n is irreducible iff gcd(f, x^{p^i} - x) = 1 for i <= n/2.
    pub(super) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let mut xp = vec![0u64, 1];
        for _ in 0..n / 2 {
            // xp <- xp^p mod f
            let mut acc = vec![1u64];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(&acc, &base, f, p);
                }
                base = mul_mod(&base, &base, f, p);
                e >>= 1;
            }
            xp = acc;
            let mut h = xp.clone();
            h.resize(h.len().max(2), 0);
            h[1] = (h[1] + p - 1) % p;
            let g = gcd(f, &h, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    /// Lexicographically least monic irreducible of degree n, comparing the
    /// constant coefficient first.
    pub(super) fn least_irreducible(p: u64, n: usize) -> Vec<u64> {
        let count = p.pow(n as u32);
        for idx in 0..count {
            // idx read with c_0 as the most significant digit
            let mut f = vec![0u64; n + 1];
            let mut v = idx;
            for i in (0..n).rev() {
                f[i] = v % p;
                v /= p;
            }
            f[n] = 1;
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, n: u32) -> FieldDesc {
        FieldDesc::new(p, n).unwrap()
    }

    /// Brute-force irreducibility: no roots and no factor of degree <= n/2.
    fn sieve_irreducible_quadratics(p: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for c0 in 0..p {
            for c1 in 0..p {
                let has_root = (0..p).any(|x| (x * x + c1 * x + c0) % p == 0);
                if !has_root {
                    out.push(vec![c0, c1, 1]);
                }
            }
        }
        out
    }

    #[test]
    fn make_examples() {
        assert_eq!(f(2, 1).modulus(), &[0, 1]);
        assert_eq!(f(2, 2).modulus(), &[1, 1, 1]);
        let least = sieve_irreducible_quadratics(3).into_iter().min().unwrap();
        assert_eq!(f(3, 2).modulus(), least.as_slice());
        assert_eq!(f(3, 2).modulus(), &[1, 0, 1]);
        assert_eq!(FieldDesc::new(4, 1).unwrap_err(), FfError::NotPrime(4));
        assert_eq!(FieldDesc::new(2, 0).unwrap_err(), FfError::ZeroDegree);
        // interned
        assert!(Arc::ptr_eq(&f(5, 3).0, &f(5, 3).0));
    }

    #[test]
    fn arith_examples() {
        let f4 = f(2, 2);
        let g = f4.generator();
        let g1 = f4.add(g, f4.one());
        assert_eq!(f4.mul(g, g), g1);
        assert_eq!(f4.inv(g), Some(g1));
        let f3 = f(3, 1);
        assert_eq!(f3.pow(f3.from_int(2), 2).unwrap(), f3.one());
        assert_eq!(f4.arith(f4.zero(), f4.zero(), ArithOp::Inv), Err(FfError::ZeroInverse));
        let f8 = f(2, 3);
        assert!(matches!(
            f4.arith(g, f8.one(), ArithOp::Add),
            Err(FfError::FieldMismatch(..))
        ));
        assert_eq!(f4.pow(g, -1).unwrap(), g1);
        assert_eq!(f4.pow(g, 4).unwrap(), g);
    }

    #[test]
    fn frobenius_examples() {
        let f4 = f(2, 2);
        let g = f4.generator();
        assert_eq!(f4.frobenius(g, 1), f4.add(g, f4.one()));
        for n in 1..=4 {
            let fl = f(3, n);
            for x in fl.elements().take(100) {
                assert_eq!(fl.frobenius(x, n), x);
            }
        }
        let f2 = f(2, 1);
        assert_eq!(f2.frobenius(f2.one(), 1), f2.one());
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(f(2, 1).primitive(), f(2, 1).one());
        let f4 = f(2, 2);
        let g = f4.primitive();
        assert_eq!(g, f4.generator());
        assert!(!g.is_one());
        assert!(f4.pow_u(g, 3).is_one());
        assert_eq!(f(3, 1).primitive(), f(3, 1).from_int(2));
        // F_9 = F_3[x]/(x^2+1): x has order 4, so x+1 is the least generator
        let f9 = f(3, 2);
        assert_eq!(f9.primitive().coeffs(), vec![1, 1]);
        assert_eq!(f9.order(f9.primitive()), Some(8));
    }

    #[test]
    fn fermat_little_exhaustive() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (7, 2)] {
            let fl = f(p, n);
            if fl.size() > 81 {
                continue;
            }
            for x in fl.elements().skip(1) {
                assert!(fl.pow_u(x, fl.size() - 1).is_one(), "{x:?} in {:?}", fl);
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism_exhaustive() {
        for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
            let fl = f(p, n);
            for x in fl.elements() {
                for y in fl.elements() {
                    assert_eq!(
                        fl.frobenius(fl.add(x, y), 1),
                        fl.add(fl.frobenius(x, 1), fl.frobenius(y, 1))
                    );
                    assert_eq!(
                        fl.frobenius(fl.mul(x, y), 1),
                        fl.mul(fl.frobenius(x, 1), fl.frobenius(y, 1))
                    );
                }
            }
        }
    }

    #[test]
    fn primitive_has_full_order() {
        for (p, n) in [(2, 1), (2, 4), (2, 8), (3, 3), (5, 2), (7, 3), (2, 17), (3, 11)] {
            let fl = f(p, n);
            assert_eq!(fl.order(fl.primitive()), Some(fl.size() - 1));
        }
    }

    #[test]
    fn table_and_generic_paths_agree() {
        // F_2^17 has no tables; compare against a brute-force product via F_2^17 generic mul
        let big = f(2, 17);
        assert!(big.0.tables.is_none());
        let x = big.from_value(12345).unwrap();
        let y = big.from_value(99999).unwrap();
        let xy = big.mul(x, y);
        assert_eq!(big.mul(xy, big.inv(y).unwrap()), x);
        let small = f(2, 8);
        for a in small.elements().step_by(7) {
            for b in small.elements().step_by(11) {
                assert_eq!(small.mul(a, b).value(), mul_vals(&small.0, a.value(), b.value()));
            }
        }
    }

    #[test]
    fn embed_examples() {
        let (f2, f4, f16) = (f(2, 1), f(2, 2), f(2, 4));
        assert_eq!(f2.embed(f2.one(), &f4).unwrap(), f4.one());
        let img = f4.embed(f4.generator(), &f16).unwrap();
        assert_eq!(f16.order(img), Some(3));
        let one_via = f4.embed(f2.embed(f2.one(), &f4).unwrap(), &f16).unwrap();
        assert_eq!(one_via, f2.embed(f2.one(), &f16).unwrap());
        assert!(f4.embed(f4.one(), &f(2, 3)).is_err());
    }

    #[test]
    fn embed_is_injective_homomorphism() {
        for (from, into) in [((2, 2), (2, 4)), ((2, 2), (2, 6)), ((3, 2), (3, 4)), ((2, 3), (2, 6))] {
            let a = f(from.0, from.1);
            let b = f(into.0, into.1);
            let e = Embedding::new(&a, &b).unwrap();
            let imgs: Vec<_> = a.elements().map(|x| e.apply(x)).collect();
            let mut sorted = imgs.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), imgs.len());
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(e.apply(a.mul(x, y)), b.mul(e.apply(x), e.apply(y)));
                    assert_eq!(e.apply(a.add(x, y)), b.add(e.apply(x), e.apply(y)));
                }
            }
        }
    }
}
